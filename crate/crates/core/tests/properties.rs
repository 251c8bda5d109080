use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use algapprox::algnum::{AlgebraicNumber, FieldElement, NumberField};
use algapprox::approx::{pell_solve, surd_field};
use algapprox::criteria::galois_closure_check;
use algapprox::harness::catalog::PAPER_F;
use algapprox::linalg::Scalar;
use algapprox::normform::{enumerate_solutions, norm_of_vector, relation_matrix, SignMode};
use algapprox::numeric::Interval;
use algapprox::poly::{compose_mod, is_irreducible, IntPoly};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn kf() -> &'static NumberField {
    static K: OnceLock<NumberField> = OnceLock::new();
    K.get_or_init(|| galois_closure_check("paper-f", IntPoly::from_i64s(&PAPER_F)).unwrap().0)
}

fn k8() -> &'static NumberField {
    static K: OnceLock<NumberField> = OnceLock::new();
    K.get_or_init(|| surd_field(&[2, 3, 5]).unwrap())
}

fn fields() -> [&'static NumberField; 2] {
    [kf(), k8()]
}

fn coords(d: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, d)
}

fn overlap(a: &Interval, b: &Interval) -> bool {
    !(a.lt(b) || b.lt(a))
}

fn elem(k: &NumberField, c: &[i64]) -> FieldElement {
    k.element_from_ints(c)
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn norm_is_multiplicative(which in 0usize..2, a in coords(8), b in coords(8)) {
        let k = fields()[which];
        let d = k.degree();
        let (u, v) = (elem(k, &a[..d]), elem(k, &b[..d]));
        prop_assert_eq!(u.mul(&v).norm(), u.norm() * v.norm());
    }

    #[test]
    fn resultant_norm_matches_field_norm(which in 0usize..2, a in coords(8)) {
        let k = fields()[which];
        let d = k.degree();
        let x = &a[..d];
        prop_assert_eq!(BigRational::from(norm_of_vector(k, x)), elem(k, x).norm());
    }

    #[test]
    fn negation_scales_norm_by_sign(which in 0usize..2, a in coords(8)) {
        let k = fields()[which];
        let d = k.degree();
        let x = &a[..d];
        let neg: Vec<i64> = x.iter().map(|c| -c).collect();
        let sign = if d % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(norm_of_vector(k, &neg), norm_of_vector(k, x) * sign);
    }

    #[test]
    fn inverse_is_inverse(which in 0usize..2, a in coords(8)) {
        let k = fields()[which];
        let d = k.degree();
        let u = elem(k, &a[..d]);
        prop_assume!(!u.is_zero());
        let w = u.inv().unwrap();
        prop_assert_eq!(u.mul(&w), u.one_like());
    }

    #[test]
    fn automorphisms_are_ring_maps(which in 0usize..2, g in 0usize..8, a in coords(8), b in coords(8)) {
        let k = fields()[which];
        let d = k.degree();
        let t = k.galois_table().unwrap();
        let s = &t[g % t.len()];
        let (u, v) = (elem(k, &a[..d]), elem(k, &b[..d]));
        prop_assert_eq!(u.mul(&v).apply(s), u.apply(s).mul(&v.apply(s)));
        prop_assert_eq!(u.add(&v).apply(s), u.apply(s).add(&v.apply(s)));
        prop_assert_eq!(u.apply(s).norm(), u.norm());
    }

    #[test]
    fn relation_rref_is_idempotent(n in 1usize..=4) {
        let k = kf();
        let a = relation_matrix(k, n).unwrap();
        prop_assert_eq!(a.rows(), k.degree() - n - 1);
        prop_assert!(a.annihilates(k).unwrap());
        let once = a.reduce();
        prop_assert_eq!(&once.entries, &a.entries);
        prop_assert_eq!(once.reduce().entries, once.entries);
    }
}

#[test]
fn galois_tables_are_closed_under_composition() {
    for k in fields() {
        let t = k.galois_table().unwrap();
        for g in t {
            for h in t {
                let c = compose_mod(g, h, k.poly()).unwrap();
                assert!(t.contains(&c), "{} not closed", k.degree());
            }
        }
    }
}

fn random_irreducible() -> impl Strategy<Value = IntPoly> {
    (1usize..=5, prop::collection::vec(-9i64..=9, 6), 1i64..=6).prop_filter_map("irreducible", |(d, c, lead)| {
        let mut co = c[..d].to_vec();
        co.push(lead);
        let p = IntPoly::from_i64s(&co).primitive_part();
        (co[0] != 0 && p.deg() == d && is_irreducible(&p).unwrap()).then_some(p)
    })
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn weil_height_is_conjugation_invariant(p in random_irreducible()) {
        let roots = AlgebraicNumber::roots_of(&p).unwrap();
        let h0 = roots[0].weil_height(80).unwrap();
        for r in &roots[1..] {
            prop_assert!(overlap(&h0, &r.weil_height(80).unwrap()));
        }
    }

    #[test]
    fn heights_are_comparable(p in random_irreducible()) {
        let prec = 128;
        let x = &AlgebraicNumber::roots_of(&p).unwrap()[0];
        let d = Interval::from_i64(p.deg() as i64);
        let h = x.weil_height(96).unwrap();
        let log_h = Interval::from_int(&x.naive_height()).ln(prec).unwrap();
        let ln2 = Interval::from_i64(2).ln(prec).unwrap();
        // d·h ≤ log H + log(d+1)/2 and log H ≤ d·(h + log 2)
        let slack = Interval::from_i64(p.deg() as i64 + 1).ln(prec).unwrap().div(&Interval::from_i64(2), prec).unwrap();
        prop_assert!(d.mul(&h, prec).le(&log_h.add(&slack, prec)));
        prop_assert!(log_h.le(&d.mul(&h.add(&ln2, prec), prec)));
    }

    #[test]
    fn enumeration_is_sign_symmetric(which in 0usize..2, n in 1usize..=3, m in 1i64..=40) {
        let k = fields()[which];
        let e = enumerate_solutions(k, n, &BigInt::from(m), SignMode::Both, 3, None).unwrap();
        prop_assert!(e.closed_under_negation());
        for s in &e.solutions {
            prop_assert_eq!(norm_of_vector(k, &s.coords).abs(), BigInt::from(m));
        }
    }
}

#[test]
fn pell_fundamental_solution_matches_brute_force() {
    for r in 2u64..60 {
        let s = r.isqrt();
        if s * s == r {
            continue;
        }
        let brute = (2u64..=10_000).find_map(|a| {
            let t = a * a - 1;
            (t % r == 0).then(|| t / r).and_then(|q| {
                let b = q.isqrt();
                (b > 0 && b * b == q).then_some((a, b))
            })
        });
        let Some((a, b)) = brute else { continue };
        let sols = pell_solve(r, 3).unwrap();
        assert_eq!((sols[0].a.clone(), sols[0].b.clone()), (BigInt::from(a), BigInt::from(b)), "r = {r}");
        assert!(sols.iter().all(|s| s.check()));
        assert!(sols.windows(2).all(|w| w[0].a < w[1].a));
    }
}
