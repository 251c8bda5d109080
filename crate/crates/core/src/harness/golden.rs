//! Stored expectations for the worked examples: the sextics `f` and `g`, the
//! Pell approximants of `√2 + i√3`, and the surd field `surd(2,3,5)`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::catalog::{PAPER_F, PAPER_G};
use crate::approx::{pell_approximant, pell_solve, surd_field};
use crate::criteria::{classify_field, galois_closure_check, theorem_gate_field, ClassificationReport, WStar};
use crate::error::Result;
use crate::normform::{norm_of_vector, relation_matrix};
use crate::poly::IntPoly;

#[derive(Clone, Debug, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub checks: Vec<GoldenCheck>,
    pub passed: bool,
}

impl GoldenReport {
    pub fn failures(&self) -> Vec<&GoldenCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// One line per mismatch.
    pub fn diff(&self) -> String {
        self.failures()
            .iter()
            .map(|c| format!("{}: expected {}, got {}\n", c.name, c.expected, c.actual))
            .collect()
    }
}

#[derive(Default)]
struct Checks(Vec<GoldenCheck>);

impl Checks {
    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, expected: T, actual: T) {
        self.0.push(GoldenCheck {
            name: name.into(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            passed: expected == actual,
        });
    }

    fn holds(&mut self, name: &str, expected: &str, actual: String, ok: bool) {
        self.0.push(GoldenCheck {
            name: name.into(),
            expected: expected.into(),
            actual,
            passed: ok,
        });
    }
}

/// Relations naming the conjugate pairs of `f`: `ξ₁ξ̄₁ = 1`, `ξ₂ + ξ̄₂ = 1`,
/// `ξ₃ + ξ̄₃ = ξ₃ξ̄₃`, as `(a, b, c)` with `a + b β₁ + c β₂ = 0`.
pub const F_LABELS: [(&str, [i64; 3]); 3] = [("xi1", [-1, 0, 1]), ("xi2", [-1, 1, 0]), ("xi3", [0, 1, -1])];

/// Fills `label` on conjugates whose certified relation matches one of `labels`.
pub fn assign_labels(rep: &mut ClassificationReport, labels: &[(&str, [i64; 3])]) {
    for c in rep.conjugates.iter_mut() {
        let Some(rel) = &c.independence.relation else { continue };
        for (name, r) in labels {
            let r: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            if *rel == r {
                c.label = Some(name.to_string());
            }
        }
    }
}

fn wstar4(rep: &ClassificationReport) -> Vec<WStar> {
    rep.conjugates
        .iter()
        .step_by(2)
        .map(|c| c.wstar.get(&4).cloned().unwrap_or(WStar::OutOfScope))
        .collect()
}

fn rel_of(rep: &ClassificationReport, j: usize) -> Option<Vec<i64>> {
    rep.conjugates[j]
        .independence
        .relation
        .as_ref()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect())
}

fn sextic_f(c: &mut Checks) -> Result<ClassificationReport> {
    let (k, _) = galois_closure_check("paper-f", IntPoly::from_i64s(&PAPER_F))?;
    let mut rep = classify_field(&k, &[3, 4])?;
    assign_labels(&mut rep, &F_LABELS);
    c.eq("f totally complex", true, rep.totally_complex);
    c.eq("f Galois", "galois", rep.galois.as_str());
    c.eq("f automorphisms", 6, rep.automorphisms);
    c.eq("f real subfield degree", 3, rep.real_subfield_degree);
    let mut names: Vec<String> = rep.conjugates.iter().step_by(2).filter_map(|x| x.label.clone()).collect();
    names.sort();
    c.eq("f pair labels", vec!["xi1", "xi2", "xi3"], names.iter().map(|s| s.as_str()).collect());
    c.eq(
        "f all conjugates dependent",
        true,
        rep.conjugates.iter().all(|x| x.independence.is_dependent()),
    );
    let w: Vec<String> = wstar4(&rep).iter().map(|x| x.to_string()).collect();
    c.eq("f wstar(., 4)", vec!["2"; 3], w.iter().map(|s| s.as_str()).collect());
    c.eq(
        "f applicable theorems",
        vec!["Thm2.2".to_string(), "Thm2.3".to_string()],
        rep.applicable_theorems.clone(),
    );
    let ones: Vec<BigInt> = (0..5)
        .map(|j| {
            let mut e = vec![0i64; 5];
            e[j] = 1;
            norm_of_vector(&k, &e)
        })
        .collect();
    c.eq("f Norm(xi^k), k = 0..4", vec![BigInt::one(); 5], ones);
    let a = relation_matrix(&k, 2)?;
    c.eq("f relation matrix n=2 shape", (3, 6), (a.rows(), a.d));
    c.eq("f relation matrix full rank", true, a.full_rank_condition().holds);
    Ok(rep)
}

fn sextic_g(c: &mut Checks) -> Result<ClassificationReport> {
    let (k, _) = galois_closure_check("paper-g", IntPoly::from_i64s(&PAPER_G))?;
    let mut rep = classify_field(&k, &[3, 4])?;
    assign_labels(&mut rep, &[("xi1", [-1, 0, 1])]);
    c.eq("g Galois", "not-galois", rep.galois.as_str());
    let pairs: Vec<usize> = (0..rep.conjugates.len()).step_by(2).collect();
    let dep: Vec<usize> = pairs.iter().copied().filter(|&j| rep.conjugates[j].independence.is_dependent()).collect();
    c.eq("g dependent pairs", 1, dep.len());
    if let Some(&j) = dep.first() {
        c.eq("g xi1 relation", Some(vec![-1, 0, 1]), rel_of(&rep, j));
    }
    let indep: Vec<usize> = pairs.iter().copied().filter(|j| !dep.contains(j)).collect();
    c.eq(
        "g real subfield degree of the independent pairs",
        vec![1, 1],
        indep.iter().map(|&j| rep.conjugates[j].real_subfield.degree).collect(),
    );
    let mut w: Vec<String> = wstar4(&rep).iter().map(|x| x.to_string()).collect();
    w.sort();
    c.eq("g wstar(., 4) multiset", vec!["2", "3/2", "3/2"], w.iter().map(|s| s.as_str()).collect());
    Ok(rep)
}

fn pell(c: &mut Checks) -> Result<()> {
    let sols = pell_solve(2, 6)?;
    let recs = sols.iter().map(|s| pell_approximant(2, 3, s)).collect::<Result<Vec<_>>>()?;
    c.eq(
        "Pell (2,3) first approximant",
        (vec![10, -6, 2], vec![5, -3, 1]),
        (
            recs[0].p.coeffs().iter().map(|x| i64::try_from(x).unwrap()).collect(),
            recs[0].alpha_minpoly.coeffs().iter().map(|x| i64::try_from(x).unwrap()).collect(),
        ),
    );
    let all = recs.iter().all(|r| r.bound_value && r.bound_height && r.bound_distance);
    c.eq("Pell (2,3) bounds certified, 6 solutions", true, all);
    let e = recs[5].exponent;
    c.holds(
        "Pell (2,3) exponent of the 6th approximant",
        "within [1.8, 2.0]",
        format!("{e:?}"),
        e.is_some_and(|[lo, hi]| lo >= 1.8 && hi <= 2.0),
    );
    Ok(())
}

fn surd235(c: &mut Checks) -> Result<()> {
    let k = surd_field(&[2, 3, 5])?;
    c.eq("surd(2,3,5) degree", 8, k.degree());
    c.eq("surd(2,3,5) totally complex", true, k.is_totally_complex());
    c.eq("surd(2,3,5) Galois", true, k.galois_table().is_some());
    let g = theorem_gate_field(&k, Some(true), 0, 4)?;
    c.eq("surd(2,3,5) theorem gate n=4", true, g.applies);
    Ok(())
}

/// Runs every stored example; errors are recorded as failed checks.
pub fn golden_suite() -> GoldenReport {
    let mut c = Checks::default();
    let parts: [(&str, fn(&mut Checks) -> Result<()>); 4] = [
        ("sextic f", |c| sextic_f(c).map(|_| ())),
        ("sextic g", |c| sextic_g(c).map(|_| ())),
        ("Pell", pell),
        ("surd(2,3,5)", surd235),
    ];
    for (name, run) in parts {
        if let Err(e) = run(&mut c) {
            c.holds(name, "no error", e.to_string(), false);
        }
    }
    let passed = c.0.iter().all(|x| x.passed);
    GoldenReport { checks: c.0, passed }
}

/// Classification of `f` with the pair labels filled in.
pub fn labeled_f() -> Result<ClassificationReport> {
    sextic_f(&mut Checks::default())
}

/// Classification of `g`.
pub fn labeled_g() -> Result<ClassificationReport> {
    sextic_g(&mut Checks::default())
}
