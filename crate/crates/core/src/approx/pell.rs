//! Pell solutions and the quadratic approximants `P_{a,b} = bX² − 2aX + (r+s)b`
//! of `ξ = √r + i√s`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algnum::{identify_root, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::numeric::{CBall, Interval};
use crate::poly::{factor_over_q, IntPoly};
use crate::serde_util;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    pub r: u64,
    #[serde(with = "serde_util::bigint")]
    pub a: BigInt,
    #[serde(with = "serde_util::bigint")]
    pub b: BigInt,
}

impl PellSolution {
    pub fn check(&self) -> bool {
        &self.a * &self.a - BigInt::from(self.r) * &self.b * &self.b == BigInt::one()
    }
}

fn is_square(r: u64) -> bool {
    let s = r.sqrt();
    s * s == r
}

/// Fundamental solution from the continued fraction of `√r`, then the first
/// `count` solutions in increasing `a`.
pub fn pell_solve(r: u64, count: usize) -> Result<Vec<PellSolution>> {
    if r < 2 || is_square(r) {
        return Err(Error::domain(format!("r = {r} must be a positive non-square")));
    }
    let rb = BigInt::from(r);
    let a0 = BigInt::from(r.sqrt());
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    while &h * &h - &rb * &k * &k != BigInt::one() {
        m = &d * &a - &m;
        d = (&rb - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let (a1, b1) = (h, k);
    let mut out = Vec::with_capacity(count);
    let (mut x, mut y) = (a1.clone(), b1.clone());
    for _ in 0..count {
        out.push(PellSolution {
            r,
            a: x.clone(),
            b: y.clone(),
        });
        let nx = &a1 * &x + &rb * &b1 * &y;
        let ny = &a1 * &y + &b1 * &x;
        x = nx;
        y = ny;
    }
    Ok(out)
}

/// `x + y√r` with rational `x, y` and non-square `r`; exact sign test.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSurd {
    pub x: BigRational,
    pub y: BigRational,
    pub r: BigInt,
}

impl QuadSurd {
    pub fn new(x: BigRational, y: BigRational, r: &BigInt) -> Self {
        QuadSurd { x, y, r: r.clone() }
    }

    pub fn rational(x: BigRational, r: &BigInt) -> Self {
        QuadSurd::new(x, BigRational::zero(), r)
    }

    pub fn int(x: &BigInt, r: &BigInt) -> Self {
        QuadSurd::rational(BigRational::from_integer(x.clone()), r)
    }

    pub fn add(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.x + &o.x, &self.y + &o.y, &self.r)
    }

    pub fn sub(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.x - &o.x, &self.y - &o.y, &self.r)
    }

    pub fn mul(&self, o: &QuadSurd) -> QuadSurd {
        let r = BigRational::from_integer(self.r.clone());
        QuadSurd::new(&self.x * &o.x + &self.y * &o.y * r, &self.x * &o.y + &self.y * &o.x, &self.r)
    }

    pub fn scale(&self, c: &BigRational) -> QuadSurd {
        QuadSurd::new(&self.x * c, &self.y * c, &self.r)
    }

    pub fn recip(&self) -> QuadSurd {
        let n = &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.r.clone());
        QuadSurd::new(&self.x / &n, -&self.y / &n, &self.r)
    }

    pub fn signum(&self) -> Ordering {
        let sx = self.x.cmp(&BigRational::zero());
        let sy = self.y.cmp(&BigRational::zero());
        if sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal || sx == sy {
            return sy;
        }
        let x2 = &self.x * &self.x;
        let y2r = &self.y * &self.y * BigRational::from_integer(self.r.clone());
        match x2.cmp(&y2r) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `self ≤ o`, decided exactly.
    pub fn le(&self, o: &QuadSurd) -> bool {
        o.sub(self).signum() != Ordering::Less
    }
}

/// A Pell approximant with its certified bounds.
#[derive(Clone, Debug, Serialize)]
pub struct PellRecord {
    pub r: u64,
    pub s: u64,
    #[serde(with = "serde_util::bigint")]
    pub a: BigInt,
    #[serde(with = "serde_util::bigint")]
    pub b: BigInt,
    pub p: IntPoly,
    #[serde(with = "serde_util::bigint")]
    pub height_p: BigInt,
    pub alpha_minpoly: IntPoly,
    #[serde(with = "serde_util::bigint")]
    pub height_alpha: BigInt,
    /// `P_{a,b}` reducible; `α` taken from a factor.
    pub degenerate: bool,
    /// `[lo, hi]` of `|ξ − α|`.
    pub distance: [f64; 2],
    /// `−log|ξ − α| / log H(α)`, `[lo, hi]`; `None` when `H(α) = 1`.
    pub exponent: Option<[f64; 2]>,
    /// `|P(ξ)| ≤ 2√(r+s)/(a+b√r)` (exact).
    pub bound_value: bool,
    /// `2√(r+s)/(a+b√r) ≤ 2s(r+s)/H(P)` (exact).
    pub bound_height: bool,
    /// `|ξ − α| ≤ 2(r+s)²/H(α)²` (certified enclosures).
    pub bound_distance: bool,
}

/// Minimal polynomial of `√r + i√s`: the factor of `X⁴ + 2(s−r)X² + (r+s)²` vanishing there.
pub fn pell_xi(r: u64, s: u64) -> Result<AlgebraicNumber> {
    let rs = BigInt::from(r + s);
    let c2 = BigInt::from(2 * s as i64 - 2 * r as i64);
    let p = IntPoly::new(vec![&rs * &rs, BigInt::zero(), c2, BigInt::zero(), BigInt::one()]);
    identify_root(&p, |bits| pell_xi_ball(r, s, bits))
}

fn pell_xi_ball(r: u64, s: u64, bits: u32) -> Result<CBall> {
    let prec = bits + 16;
    Ok(CBall::from_interval(
        &Interval::from_i64(r as i64).sqrt(prec)?,
        &Interval::from_i64(s as i64).sqrt(prec)?,
    ))
}

/// Nearest root of `q` to `xi`; ties go to positive imaginary part, then (re, im).
pub fn nearest_root(q: &IntPoly, xi: &AlgebraicNumber, bits: u32) -> Result<(AlgebraicNumber, Interval)> {
    let roots = AlgebraicNumber::roots_of(q)?;
    let z = xi.ball(bits)?;
    let mut best: Option<(AlgebraicNumber, Interval)> = None;
    for a in roots {
        let dist = z.sub(&a.ball(bits)?, bits + 16).abs(bits + 16);
        let better = match &best {
            None => true,
            Some((b, bd)) => {
                if dist.lt(bd) {
                    true
                } else if bd.lt(&dist) {
                    false
                } else {
                    let (ca, cb) = (a.approx(), b.approx());
                    (ca.im > 0.0, -ca.re, -ca.im) > (cb.im > 0.0, -cb.re, -cb.im)
                }
            }
        };
        if better {
            best = Some((a, dist));
        }
    }
    best.ok_or_else(|| Error::domain("polynomial has no roots"))
}

/// `−log(dist) / log(H)` as an enclosure.
pub fn exponent_of(dist: &Interval, h: &BigInt, prec: u32) -> Result<Option<Interval>> {
    if h <= &BigInt::one() {
        return Ok(None);
    }
    let ld = dist.ln(prec)?;
    let lh = Interval::from_int(h).ln(prec)?;
    Ok(Some(ld.neg().div(&lh, prec)?))
}

pub fn pell_approximant(r: u64, s: u64, sol: &PellSolution) -> Result<PellRecord> {
    if !sol.check() || sol.r != r {
        return Err(Error::domain("not a Pell solution for this r"));
    }
    if s == 0 {
        return Err(Error::domain("s must be positive"));
    }
    let (a, b) = (&sol.a, &sol.b);
    let rb = BigInt::from(r);
    let rs = BigInt::from(r + s);
    let sb = BigInt::from(s);
    let p = IntPoly::new(vec![b * &rs, -(a * BigInt::from(2)), b.clone()]);
    let height_p = p.naive_height();
    let xi = pell_xi(r, s)?;

    // exact: P(ξ) = (2br − 2a√r) + i√s(2b√r − 2a)
    let q = |n: BigInt| BigRational::from_integer(n);
    let two = BigInt::from(2);
    let re = QuadSurd::new(q(b * &rb * &two), q(-(a * &two)), &rb);
    let im_unit = QuadSurd::new(q(-(a * &two)), q(b * &two), &rb);
    let p_sq = re.mul(&re).add(&im_unit.mul(&im_unit).scale(&q(sb.clone())));
    let a_plus = QuadSurd::new(q(a.clone()), q(b.clone()), &rb);
    let a_plus_sq = a_plus.mul(&a_plus);
    let rhs1_sq = a_plus_sq.recip().scale(&q(&rs * BigInt::from(4)));
    let bound_value = p_sq.le(&rhs1_sq);
    // square of the second inequality: H(P)² ≤ s²(r+s)(a+b√r)²
    let bound_height = QuadSurd::int(&(&height_p * &height_p), &rb).le(&a_plus_sq.scale(&q(&sb * &sb * &rs)));

    let fac = factor_over_q(&p)?;
    let degenerate = !fac.is_irreducible();
    let prec = 256;
    let (alpha, dist) = if degenerate {
        let mut best: Option<(AlgebraicNumber, Interval)> = None;
        for (g, _) in &fac.factors {
            let cand = nearest_root(g, &xi, prec)?;
            if best.as_ref().is_none_or(|(_, d)| cand.1.lt(d)) {
                best = Some(cand);
            }
        }
        best.unwrap()
    } else {
        nearest_root(&p, &xi, prec)?
    };
    let height_alpha = alpha.naive_height();
    let ha = Interval::from_int(&(&height_alpha * &height_alpha));
    let rhs2 = Interval::from_int(&(&rs * &rs * &two)).div(&ha, prec)?;
    let bound_distance = dist.le(&rhs2);
    if !(bound_value && bound_height && bound_distance) {
        return Err(Error::Certification(format!(
            "Pell bound failed for r={r}, s={s}, (a,b)=({a},{b}): value {bound_value}, height {bound_height}, distance {bound_distance}"
        )));
    }
    let exponent = exponent_of(&dist, &height_alpha, prec)?.map(|e| [e.lo.to_f64(), e.hi.to_f64()]);
    Ok(PellRecord {
        r,
        s,
        a: a.clone(),
        b: b.clone(),
        p,
        height_p,
        alpha_minpoly: alpha.minpoly().clone(),
        height_alpha,
        degenerate,
        distance: [dist.lo.to_f64(), dist.hi.to_f64()],
        exponent,
        bound_value,
        bound_height,
        bound_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_fundamental(r: u64) -> (u64, u64) {
        for a in 2..10_000u64 {
            let t = a * a - 1;
            if t % r == 0 && is_square(t / r) {
                return (a, (t / r).sqrt());
            }
        }
        unreachable!()
    }

    #[test]
    fn fundamental_solutions() {
        for r in [2u64, 3, 5, 6, 7, 13] {
            let s = pell_solve(r, 4).unwrap();
            let (a, b) = brute_fundamental(r);
            assert_eq!((s[0].a.clone(), s[0].b.clone()), (BigInt::from(a), BigInt::from(b)));
            assert!(s.iter().all(PellSolution::check));
        }
        let s = pell_solve(2, 3).unwrap();
        assert_eq!(s[2].a, BigInt::from(99));
        assert!(pell_solve(9, 1).is_err());
    }

    #[test]
    fn quad_surd_signs() {
        let r = BigInt::from(2);
        let q = |a: i64| BigRational::from_integer(BigInt::from(a));
        assert_eq!(QuadSurd::new(q(3), q(-2), &r).signum(), Ordering::Greater);
        assert_eq!(QuadSurd::new(q(-3), q(2), &r).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(q(1), q(-1), &r).signum(), Ordering::Less);
        let u = QuadSurd::new(q(3), q(2), &r);
        assert_eq!(u.mul(&u.recip()), QuadSurd::rational(q(1), &r));
    }

    #[test]
    fn first_approximant() {
        let sol = &pell_solve(2, 1).unwrap()[0];
        let rec = pell_approximant(2, 3, sol).unwrap();
        assert_eq!(rec.p, IntPoly::from_i64s(&[10, -6, 2]));
        assert_eq!(rec.alpha_minpoly, IntPoly::from_i64s(&[5, -3, 1]));
        assert_eq!(rec.height_alpha, BigInt::from(5));
        assert_eq!(rec.height_p, BigInt::from(10));
        assert!(!rec.degenerate);
    }

    #[test]
    fn degenerate_square() {
        let sol = &pell_solve(3, 1).unwrap()[0];
        let rec = pell_approximant(3, 1, sol).unwrap();
        assert!(rec.degenerate);
        assert_eq!(rec.alpha_minpoly, IntPoly::from_i64s(&[-2, 1]));
    }
}
