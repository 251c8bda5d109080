//! End-to-end acceptance checks. Each test prints one `criterion N: PASS|FAIL`
//! line straight to stderr (visible without `--nocapture`) and then asserts.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use algapprox::algnum::{AlgebraicNumber, NumberField};
use algapprox::approx::{estimate_exponents, pell_approximant, pell_solve, surd_family, surd_field};
use algapprox::criteria::{
    classify_wstar, galois_closure_check, independence_triple, is_galois, is_totally_complex, real_subfield_degree,
    theorem_gate, GaloisVerdict, WStar,
};
use algapprox::harness::catalog::{PAPER_F, PAPER_G};
use algapprox::harness::golden::{labeled_f, labeled_g};
use algapprox::harness::{builtin_catalog, sample_experiment};
use algapprox::normform::{
    analyze_solution, enumerate_solutions, min_norm_profile, norm_of_vector, relation_matrix, SignMode,
};
use algapprox::numeric::{CBall, Dyadic, Interval};
use algapprox::poly::is_irreducible;
use algapprox::IntPoly;

// pinned tolerances and limits
const PELL_EXPONENT_RANGE: (f64, f64) = (1.8, 2.0);
const SAMPLING_MIN_RATE: f64 = 0.99;
const SAMPLING_SEED: u64 = 20260101;
const SAMPLING_R: i64 = 10;
const SAMPLING_PER_FIELD: usize = 100;
const SAMPLING_MIN_FIELDS: usize = 5;
const ORACLE_VECTORS: usize = 1000;
const HEIGHT_SAMPLES: usize = 100;
const ENCLOSURE_BITS: u32 = 96;
const PROFILE_FIT_FROM: i64 = 4;

fn report(n: u32, ok: bool, detail: String, t: Duration) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {verdict} ({detail}; {:.2?})", t);
}

fn f_poly() -> IntPoly {
    IntPoly::from_i64s(&PAPER_F)
}

fn rel(v: &algapprox::criteria::IndependenceVerdict) -> Option<Vec<i64>> {
    v.relation
        .as_ref()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
}

#[test]
fn criterion_01_pell_sharpness() {
    let t = Instant::now();
    let recs: Vec<_> = pell_solve(2, 6)
        .unwrap()
        .iter()
        .map(|s| pell_approximant(2, 3, s).unwrap())
        .collect();
    let bounds = recs.iter().all(|r| r.bound_value && r.bound_height && r.bound_distance);
    let e = recs[5].exponent.unwrap();
    let in_range = e[0] >= PELL_EXPONENT_RANGE.0 && e[1] <= PELL_EXPONENT_RANGE.1;
    let monotone = recs.windows(2).all(|w| w[0].exponent.unwrap()[1] < w[1].exponent.unwrap()[0]);
    let el = t.elapsed();
    let ok = bounds && in_range && monotone && el < Duration::from_secs(5);
    report(
        1,
        ok,
        format!("bounds certified {bounds}, 6th exponent [{:.4}, {:.4}], increasing {monotone}", e[0], e[1]),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_02_sextic_f() {
    let t = Instant::now();
    let rep = labeled_f().unwrap();
    let (k, v) = galois_closure_check("paper-f", f_poly()).unwrap();
    let galois6 = matches!(&v, GaloisVerdict::Galois(t) if t.len() == 6);
    let tc = is_totally_complex(&f_poly()).unwrap();
    let real3 = (0..6).step_by(2).all(|j| real_subfield_degree(&k, j).unwrap().degree == 3);
    let mut labels: Vec<(String, Vec<i64>)> = rep
        .conjugates
        .iter()
        .filter_map(|c| Some((c.label.clone()?, rel(&c.independence)?)))
        .collect();
    labels.sort();
    labels.dedup();
    let expected = vec![
        ("xi1".to_string(), vec![-1, 0, 1]),
        ("xi2".to_string(), vec![-1, 1, 0]),
        ("xi3".to_string(), vec![0, 1, -1]),
    ];
    // the minimal-polynomial route must agree with the field route on every root
    let triples: Vec<_> = k.embeddings().iter().map(|x| independence_triple(x).unwrap()).collect();
    let all_dep = triples.iter().all(|v| v.is_dependent());
    let agree = (0..6).all(|i| rel(&triples[i]) == rel(&rep.conjugates[i].independence));
    let w4 = k.embeddings().iter().all(|x| classify_wstar(x, 4).unwrap() == WStar::half(4));
    let el = t.elapsed();
    let ok = tc && galois6 && real3 && labels == expected && all_dep && agree && w4 && el < Duration::from_secs(60);
    report(
        2,
        ok,
        format!(
            "totally complex {tc}, 6 automorphisms {galois6}, real subfield 3 {real3}, labels {:?}, all dependent {all_dep}, routes agree {agree}, wstar4=2 {w4}",
            labels.iter().map(|l| &l.0).collect::<Vec<_>>()
        ),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_03_sextic_g() {
    let t = Instant::now();
    let g = IntPoly::from_i64s(&PAPER_G);
    let not_galois = is_galois(&g).unwrap().as_bool() == Some(false);
    let rep = labeled_g().unwrap();
    let pairs: Vec<_> = rep.conjugates.iter().step_by(2).collect();
    let dep: Vec<_> = pairs.iter().filter(|c| c.independence.is_dependent()).collect();
    let xi1 = dep.len() == 1 && rel(&dep[0].independence) == Some(vec![-1, 0, 1]);
    let indep: Vec<_> = pairs.iter().filter(|c| !c.independence.is_dependent()).collect();
    let real1 = indep.len() == 2 && indep.iter().all(|c| c.real_subfield.degree == 1 && c.real_subfield.exact);
    // independent cross-check through the minimal polynomial of each root
    let roots = AlgebraicNumber::roots_of(&g).unwrap();
    let n_dep_roots = roots.iter().filter(|x| independence_triple(x).unwrap().is_dependent()).count();
    let mut w: Vec<String> = roots
        .iter()
        .filter(|x| x.approx().im > 0.0)
        .map(|x| classify_wstar(x, 4).unwrap().to_string())
        .collect();
    w.sort();
    let wset = w == ["2", "3/2", "3/2"];
    let el = t.elapsed();
    let ok = not_galois && xi1 && real1 && n_dep_roots == 2 && wset && el < Duration::from_secs(120);
    report(
        3,
        ok,
        format!("not Galois {not_galois}, xi1 (-1,0,1) {xi1}, xi2/xi3 independent with real degree 1 {real1}, wstar4 {w:?}"),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_04_surd_family() {
    let t = Instant::now();
    let xi = surd_family(&[2, 3, 5]).unwrap();
    let d8 = xi.degree() == 8;
    let tc = is_totally_complex(xi.minpoly()).unwrap();
    let k = surd_field(&[2, 3, 5]).unwrap();
    let galois = k.galois_table().is_some_and(|t| t.len() == 8);
    let gate = theorem_gate(&xi, 4).unwrap();
    let el = t.elapsed();
    let ok = d8 && tc && galois && gate.applies && el < Duration::from_secs(60);
    report(
        4,
        ok,
        format!("degree 8 {d8}, totally complex {tc}, Galois {galois}, {} applies {}", gate.theorem, gate.applies),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_05_sampling_experiment() {
    let t = Instant::now();
    let cat = builtin_catalog(&[8]).unwrap().of_degree(8);
    let a = sample_experiment(&cat, SAMPLING_PER_FIELD, SAMPLING_R, SAMPLING_SEED).unwrap();
    let b = sample_experiment(&cat, SAMPLING_PER_FIELD, SAMPLING_R, SAMPLING_SEED).unwrap();
    let identical = a.to_json() == b.to_json();
    let fields = a.fields.len();
    let rate = a.satisfaction_rate.unwrap_or(0.0);
    let sums = a
        .fields
        .iter()
        .all(|f| f.satisfied + f.failed + f.degenerate == f.samples && f.failures.len() == f.failed);
    let el = t.elapsed();
    let ok = fields >= SAMPLING_MIN_FIELDS
        && rate >= SAMPLING_MIN_RATE
        && identical
        && sums
        && el < Duration::from_secs(600);
    report(
        5,
        ok,
        format!(
            "{fields} fields, {}/{} satisfied, {} failed, {} degenerate, rate {rate:.4}, rerun identical {identical}",
            a.totals.satisfied, a.totals.samples, a.totals.failed, a.totals.degenerate
        ),
        el,
    );
    assert!(ok);
}

fn random_monic_irreducible(rng: &mut ChaCha8Rng, d: usize, c: i64) -> IntPoly {
    loop {
        let mut co: Vec<i64> = (0..d).map(|_| rng.random_range(-c..=c)).collect();
        co.push(1);
        let p = IntPoly::from_i64s(&co);
        if co[0] != 0 && is_irreducible(&p).unwrap() {
            return p;
        }
    }
}

fn embedding_product(k: &NumberField, x: &[i64], bits: u32) -> CBall {
    let u = k.element_from_ints(x);
    let mut acc = CBall::one();
    for i in 0..k.degree() {
        acc = acc.mul(&k.embed(&u, i, bits).unwrap(), bits + 32);
    }
    acc
}

#[test]
fn criterion_06_norm_oracle() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hits = 0;
    let mut total = 0;
    while total < ORACLE_VECTORS {
        let d = rng.random_range(2..=8usize);
        let k = NumberField::new("random", random_monic_irreducible(&mut rng, d, 4)).unwrap();
        for _ in 0..25 {
            let len = rng.random_range(1..=d);
            let x: Vec<i64> = (0..len).map(|_| rng.random_range(-9..=9)).collect();
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            let exact = norm_of_vector(&k, &x);
            let ball = embedding_product(&k, &x, ENCLOSURE_BITS);
            if ball.contains_point(&Dyadic::from_int(exact), &Dyadic::zero()) {
                hits += 1;
            }
            total += 1;
            if total == ORACLE_VECTORS {
                break;
            }
        }
    }
    let el = t.elapsed();
    let ok = hits == ORACLE_VECTORS && el < Duration::from_secs(60);
    report(6, ok, format!("{hits}/{total} enclosures contain the resultant norm"), el);
    assert!(ok);
}

#[test]
fn criterion_07_height_comparability() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let prec = 128;
    let ln2 = Interval::from_i64(2).ln(prec).unwrap();
    let mut good = 0;
    for _ in 0..HEIGHT_SAMPLES {
        let d = rng.random_range(1..=6usize);
        let p = loop {
            let mut co: Vec<i64> = (0..=d).map(|_| rng.random_range(-12..=12)).collect();
            co[d] = rng.random_range(1..=12);
            let p = IntPoly::from_i64s(&co).primitive_part();
            if p.deg() == d && is_irreducible(&p).unwrap() {
                break p;
            }
        };
        let alpha = &AlgebraicNumber::roots_of(&p).unwrap()[0];
        let h = alpha.weil_height(96).unwrap();
        let dd = Interval::from_i64(d as i64);
        let log_h = Interval::from_int(&alpha.naive_height()).ln(prec).unwrap();
        let lower = Interval::from_i64(d as i64 + 1)
            .ln(prec)
            .unwrap()
            .mul(&Interval::point(Dyadic::pow2(-1)), prec)
            .neg()
            .add(&dd.mul(&h, prec), prec);
        let upper = dd.mul(&h.add(&ln2, prec), prec);
        if lower.le(&log_h) && log_h.le(&upper) {
            good += 1;
        }
    }
    let el = t.elapsed();
    let ok = good == HEIGHT_SAMPLES && el < Duration::from_secs(60);
    report(7, ok, format!("{good}/{HEIGHT_SAMPLES} certified"), el);
    assert!(ok);
}

#[test]
fn criterion_08_norm_form_enumeration() {
    let t = Instant::now();
    let (kf, _) = galois_closure_check("paper-f", f_poly()).unwrap();
    let e = enumerate_solutions(&kf, 4, &BigInt::one(), SignMode::Both, 10, None).unwrap();
    let has_powers = (0..5).all(|j| {
        [1i64, -1].iter().all(|&s| {
            let mut v = vec![0i64; 5];
            v[j] = s;
            e.solutions.iter().any(|x| x.coords == v)
        })
    });
    let closed = e.closed_under_negation();
    let verified = e
        .solutions
        .iter()
        .all(|s| s.verify(&kf) && norm_of_vector(&kf, &s.coords).abs().is_one());
    let pf = min_norm_profile(&kf, 4, 10, PROFILE_FIT_FROM, None).unwrap();
    let ones = pf.shells.len() == 10 && pf.shells.iter().all(|s| s.min_norm.is_one());
    let k8 = surd_field(&[2, 3, 5]).unwrap();
    let p8 = min_norm_profile(&k8, 4, 20, PROFILE_FIT_FROM, None).unwrap();
    let slope = p8.fitted_exponent.unwrap_or(f64::NAN);
    let el = t.elapsed();
    let ok = has_powers && closed && verified && ones && slope > 0.0 && el < Duration::from_secs(1800);
    report(
        8,
        ok,
        format!(
            "{} solutions with |x| <= 10, ten ±xi^k {has_powers}, closed {closed}, verified {verified}, K_f minima all 1 {ones}, surd(2,3,5) slope {slope:.3} (rms {:.3})",
            e.solutions.len(),
            p8.residual.unwrap_or(f64::NAN)
        ),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_09_relation_machinery() {
    let t = Instant::now();
    let (kf, _) = galois_closure_check("paper-f", f_poly()).unwrap();
    let a = relation_matrix(&kf, 2).unwrap();
    let shape = a.rows() == 3 && a.d == 6;
    let av = a.annihilates(&kf).unwrap();
    let fr = a.full_rank_condition();
    let diag = a.left_block_diagonal();
    let idem = a.reduce().entries == a.entries;
    let sols = enumerate_solutions(&kf, 2, &BigInt::one(), SignMode::Both, 10, None).unwrap();
    let flagged = sols
        .solutions
        .iter()
        .all(|s| analyze_solution(&kf, &a, s).unwrap().full_support_flagged());
    let el = t.elapsed();
    let ok = shape && av && fr.holds && diag && idem && flagged && !sols.solutions.is_empty() && el < Duration::from_secs(60);
    report(
        9,
        ok,
        format!(
            "3x6 {shape}, A·V = 0 {av}, full rank over {} subsets {}, diagonal block {diag}, reduced form idempotent {idem}, full support flagged on {} solutions {flagged}",
            fr.subsets_checked,
            fr.holds,
            sols.solutions.len()
        ),
        el,
    );
    assert!(ok);
}

#[test]
fn criterion_10_exponent_sanity() {
    let t = Instant::now();
    let k = NumberField::new("paper-f", f_poly()).unwrap();
    let mut le_everywhere = true;
    let mut floor_positive = true;
    let mut notes = Vec::new();
    for j in (0..6).step_by(2) {
        let tab = estimate_exponents(k.embedding(j), 2, 50, None, None).unwrap();
        le_everywhere &= tab.wstar_le_w;
        let floor = tab.liouville_floor.unwrap_or(0.0);
        floor_positive &= floor > 0.0;
        notes.push(format!(
            "root {}: w {:.3}, w* {:.3}, floor {floor:.3e}, w* > w at H = {:?}",
            j + 1,
            tab.w_final().unwrap_or(f64::NAN),
            tab.wstar_final().unwrap_or(f64::NAN),
            tab.wstar_excess
        ));
    }
    let el = t.elapsed();
    let ok = le_everywhere && floor_positive && el < Duration::from_secs(600);
    report(
        10,
        ok,
        format!("w* <= w on every run {le_everywhere}, Liouville floor > 0 {floor_positive}; {}", notes.join("; ")),
        el,
    );
    assert!(ok);
}
