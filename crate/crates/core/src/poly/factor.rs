//! Factorization over `Q` (Zassenhaus: modular factorization, Hensel lifting,
//! exhaustive recombination with an explicit work budget).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modp::{self, ModPoly};
use super::IntPoly;
use crate::error::{Error, Result};

/// `p = unit · Π factor_i^{multiplicity_i}`; factors are irreducible, primitive,
/// with positive leading coefficient, sorted by (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factorization {
    #[serde(with = "crate::serde_util::bigint")]
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e as u32))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    /// Maximum number of subset trials during recombination.
    pub max_subsets: u64,
    pub max_degree: usize,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            max_subsets: 2_000_000,
            max_degree: 64,
        }
    }
}

pub fn factor_over_q(p: &IntPoly) -> Result<Factorization> {
    factor_over_q_with(p, FactorBudget::default())
}

pub fn factor_over_q_with(p: &IntPoly, budget: FactorBudget) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    if p.deg() > budget.max_degree {
        return Err(Error::budget(format!(
            "factorization (degree {} above cap {})",
            p.deg(),
            budget.max_degree
        )));
    }
    let canon = p.canonical();
    let unit = if p.deg() == 0 {
        p.leading()
    } else {
        // p = unit · canon
        p.leading() / canon.leading()
    };
    let mut factors = Vec::new();
    for (s, e) in p.squarefree_decomposition() {
        for g in factor_squarefree(&s, budget)? {
            factors.push((g, e));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs())
            .cmp(&(b.0.deg(), b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    if p.deg() == 0 {
        return Ok(false);
    }
    let f = factor_over_q(p)?;
    Ok(f.is_irreducible())
}

/// Irreducible factors of a squarefree primitive polynomial with positive leading coefficient.
fn factor_squarefree(f: &IntPoly, budget: FactorBudget) -> Result<Vec<IntPoly>> {
    let f = f.canonical();
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f]);
    }
    // pull out X first so that constant-term tricks stay valid
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPoly::x()).expect("X divides");
        let mut out = vec![IntPoly::x()];
        out.extend(factor_squarefree(&rest, budget)?);
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.leading();
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in modp::primes_from(11) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let Some(fs) = modp::factor(&f, p, &mut rng) else {
            continue;
        };
        if fs.len() == 1 {
            return Ok(vec![f]);
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime works for a squarefree polynomial");

    // Mignotte-style bound on the coefficients of any factor, times lc.
    let bound = BigInt::from(2u32).pow(n as u32) * f.l1_norm() * lc.abs() * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);
    recombine(&f, lifted, &modulus, budget)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn poly_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_mod(&out, m)
}

fn to_big(a: &ModPoly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn from_big(a: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let mut v: ModPoly = a
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            c.mod_floor(&pb).to_u64().unwrap()
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Lifts monic factors of `lc^{-1} f mod p` to `mod p^k`.
fn hensel_lift(f: &IntPoly, factors: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let m = BigInt::from(p).pow(k);
    let lc = f.leading();
    let lc_inv = lc.modinv(&m).expect("p does not divide lc");
    let target: Vec<BigInt> = poly_mod(
        &f.coeffs().iter().map(|c| c * &lc_inv).collect::<Vec<_>>(),
        &m,
    );
    lift_tree(&target, factors, p, k)
}

fn lift_tree(target: &[BigInt], factors: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (g, h) = lift_two(target, &g0, &h0, p, k);
    let mut out = lift_tree(&g, &factors[..mid], p, k);
    out.extend(lift_tree(&h, &factors[mid..], p, k));
    out
}

/// Linear Hensel lifting of `target ≡ g·h (mod p)` (all monic) to `mod p^k`.
fn lift_two(target: &[BigInt], g0: &ModPoly, h0: &ModPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = modp::xgcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = mul_mod(&g, &h, &next);
        let t_mod = poly_mod(target, &next);
        let n = t_mod.len().max(gh.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = t_mod.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = from_big(&diff, p);
        if !e.is_empty() {
            let te = modp::mul(&t, &e, p);
            let dg = modp::rem(&te, g0, p);
            let num = modp::sub(&e, &modp::mul(&dg, h0, p), p);
            let (dh, r) = modp::divrem(&num, g0, p);
            debug_assert!(r.is_empty());
            let _ = &s;
            g = add_scaled(&g, &dg, &pj);
            h = add_scaled(&h, &dh, &pj);
        }
        pj = next;
    }
    (g, h)
}

fn add_scaled(a: &[BigInt], d: &ModPoly, scale: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(d.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + BigInt::from(d.get(i).copied().unwrap_or(0)) * scale)
        .collect()
}

fn recombine(f: &IntPoly, lifted: Vec<Vec<BigInt>>, m: &BigInt, budget: FactorBudget) -> Result<Vec<IntPoly>> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut trials = 0u64;
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in Combinations::new(remaining.len(), size) {
            trials += 1;
            if trials > budget.max_subsets {
                return Err(Error::budget("factorization recombination"));
            }
            let lc = current.leading();
            // cheap filter on the constant term
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * lifted[remaining[i]].first().cloned().unwrap_or_default()).mod_floor(m));
            let c0 = symmetric(&c0, m);
            if c0.is_zero() || !(lc.clone() * current.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| mul_mod(&acc, &lifted[remaining[i]], m));
            let cand = IntPoly::new(prod.iter().map(|c| symmetric(c, m)).collect()).canonical();
            if cand.deg() == 0 {
                continue;
            }
            if let Some(q) = current.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                let picked: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !picked.contains(i));
                found.push(cand);
                current = q.canonical();
            }
            None => size += 1,
        }
    }
    if current.deg() > 0 {
        found.push(current);
    }
    Ok(found)
}

/// Lexicographic k-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Independent cheap irreducibility evidence used by tests: no rational root,
/// and for degree 2 or 3 that is already a proof.
pub fn has_rational_root(p: &IntPoly) -> bool {
    use num_rational::BigRational;
    if p.coeff(0).is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                out.push(&n / &d);
            }
            d += 1;
        }
        out
    };
    for a in divisors(&p.coeff(0)) {
        for b in divisors(&p.leading()) {
            for s in [BigInt::one(), -BigInt::one()] {
                let x = BigRational::new(&a * &s, b.clone());
                if p.eval_rational(&x).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn x4_minus_1() {
        let f = factor_over_q(&p(&[-1, 0, 0, 0, 1])).unwrap();
        let fs: Vec<IntPoly> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(fs, vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])]);
        assert_eq!(f.expand(), p(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&p(&[5, -3, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, -3, 5, -5, 5, -3, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, -1, 0, 2, 0, -1, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1])).unwrap());
    }

    #[test]
    fn swinnerton_dyer_like_sum_of_square_roots() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn non_monic_and_multiplicities() {
        let a = &(&p(&[1, 2]).pow(2) * &p(&[-3, 0, 2])) * &p(&[0, 1]);
        let neg = a.scale(&BigInt::from(-6));
        let f = factor_over_q(&neg).unwrap();
        assert_eq!(f.expand(), neg);
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.contains(&(p(&[1, 2]), 2)));
    }

    #[test]
    fn product_of_cyclotomics() {
        // x^12 - 1 has six cyclotomic factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_over_q(&p(&c)).unwrap();
        assert_eq!(f.factors.len(), 6);
        assert_eq!(f.expand(), p(&c));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let r = factor_over_q_with(&p(&c), FactorBudget { max_subsets: 1, max_degree: 64 });
        assert!(matches!(r, Err(e) if e.is_budget()));
    }

    #[test]
    fn zero_rejected() {
        assert!(factor_over_q(&IntPoly::zero()).is_err());
    }
}
