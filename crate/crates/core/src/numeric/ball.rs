//! Rigorous enclosures: closed real intervals and complex disks with dyadic
//! endpoints. Every operation rounds outward, so the true value of the
//! computed expression always lies inside the result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Interval::point(Dyadic::from_int(n.clone()))
    }

    pub fn from_i64(n: i64) -> Self {
        Interval::point(Dyadic::from_i64(n))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// Certified `self < o`.
    pub fn lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    /// Certified `self <= o`.
    pub fn le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    /// The only integer in the interval, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let lo = self.lo.to_rational().ceil().to_integer();
        let hi = self.hi.to_rational().floor().to_integer();
        (lo == hi).then_some(lo)
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&o.lo).round(prec, Round::Down),
            hi: self.hi.add(&o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Interval {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Interval {
        let ps = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = ps.iter().min().unwrap().round(prec, Round::Down);
        let hi = ps.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi }
    }

    pub fn recip(&self, prec: u32) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::Certification("reciprocal of an interval containing 0".into()));
        }
        let one = Dyadic::one();
        Ok(Interval {
            lo: one.div(&self.hi, prec, Round::Down),
            hi: one.div(&self.lo, prec, Round::Up),
        })
    }

    pub fn div(&self, o: &Interval, prec: u32) -> Result<Interval> {
        Ok(self.mul(&o.recip(prec)?, prec))
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.clone()),
            }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `max(self, c)` for a constant `c`.
    pub fn max_const(&self, c: &Dyadic) -> Interval {
        Interval {
            lo: self.lo.clone().max(c.clone()),
            hi: self.hi.clone().max(c.clone()),
        }
    }

    /// Square root of an enclosure of a nonnegative quantity.
    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(Error::domain("sqrt of a negative interval"));
        }
        let lo = if self.lo.is_positive() {
            self.lo.sqrt(prec, Round::Down)
        } else {
            Dyadic::zero()
        };
        Ok(Interval {
            lo,
            hi: self.hi.sqrt(prec, Round::Up),
        })
    }

    pub fn ln(&self, prec: u32) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::Certification("log of an interval not bounded away from 0".into()));
        }
        Ok(Interval {
            lo: ln_bound(&self.lo, prec, Round::Down),
            hi: ln_bound(&self.hi, prec, Round::Up),
        })
    }
}

/// Fixed-point `atanh(T / 2^p)` by its Taylor series; returns (value, error in units of `2^-p`).
fn atanh_fixed(t: &BigInt, p: usize) -> (BigInt, u64) {
    let t2 = (t * t) >> p;
    let mut pow = t.clone();
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !pow.is_zero() {
        sum += &pow / BigInt::from(2 * j + 1);
        pow = (&pow * &t2) >> p;
        j += 1;
    }
    (sum, 4 * j + 8)
}

/// Directed bound on `ln x` for dyadic `x > 0`.
fn ln_bound(x: &Dyadic, prec: u32, mode: Round) -> Dyadic {
    let k = x.mant().bits() as i64 - 1;
    let e = x.exp() + k;
    let p = prec as usize + 16 + (64 - e.unsigned_abs().leading_zeros()) as usize;
    let two_k = BigInt::one() << k as usize;
    let m = x.mant();
    // ln x = e ln 2 + 2 atanh((m - 2^k) / (m + 2^k))
    let t = ((m - &two_k) << p).div_floor(&(m + &two_k));
    let (a, err_a) = atanh_fixed(&t, p);
    let (l2, err_l2) = atanh_fixed(&((BigInt::one() << p) / 3), p);
    let val = BigInt::from(e) * 2 * l2 + 2 * a;
    let err = BigInt::from(e.unsigned_abs() * 2 * err_l2 + 2 * err_a + 6);
    let v = match mode {
        Round::Down => val - err,
        Round::Up => val + err,
        Round::Nearest => val,
    };
    Dyadic::new(v, -(p as i64)).round(prec + 8, mode)
}

/// Closed complex disk `{z : |z - (re + i·im)| <= rad}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

/// Upper bound on `sqrt(re^2 + im^2)`.
pub fn modulus_upper(re: &Dyadic, im: &Dyadic, prec: u32) -> Dyadic {
    re.square().add(&im.square()).sqrt(prec, Round::Up)
}

pub fn modulus_lower(re: &Dyadic, im: &Dyadic, prec: u32) -> Dyadic {
    re.square().add(&im.square()).sqrt(prec, Round::Down)
}

impl CBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        CBall { re, im, rad }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        CBall {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        CBall::exact(Dyadic::from_int(n.clone()), Dyadic::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        CBall::from_int(&BigInt::from(n))
    }

    pub fn zero() -> Self {
        CBall::from_i64(0)
    }

    pub fn one() -> Self {
        CBall::from_i64(1)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        CBall::from_interval(&Interval::from_rational(q, prec), &Interval::from_i64(0))
    }

    /// Smallest disk around the midpoint containing the rectangle `re × im`.
    pub fn from_interval(re: &Interval, im: &Interval) -> Self {
        let hw = re.width().shl(-1);
        let hh = im.width().shl(-1);
        CBall {
            re: re.mid(),
            im: im.mid(),
            rad: hw.add(&hh),
        }
    }

    fn rounded(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u32) -> CBall {
        let r2 = re.round(prec, Round::Nearest);
        let i2 = im.round(prec, Round::Nearest);
        let err = re.sub(&r2).abs().add(&i2.sub(&im).abs());
        CBall {
            re: r2,
            im: i2,
            rad: rad.add(&err).round(prec, Round::Up),
        }
    }

    pub fn conj(&self) -> CBall {
        CBall {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn neg(&self) -> CBall {
        CBall {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &CBall, prec: u32) -> CBall {
        CBall::rounded(self.re.add(&o.re), self.im.add(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &CBall, prec: u32) -> CBall {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &CBall, prec: u32) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Dyadic::zero()
        } else {
            let a = modulus_upper(&self.re, &self.im, prec);
            let b = modulus_upper(&o.re, &o.im, prec);
            a.mul(&o.rad).add(&b.mul(&self.rad)).add(&self.rad.mul(&o.rad))
        };
        CBall::rounded(re, im, rad, prec)
    }

    pub fn mul_int(&self, k: &BigInt) -> CBall {
        let ka = Dyadic::from_int(k.abs());
        CBall {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
            rad: self.rad.mul(&ka),
        }
    }

    pub fn square(&self, prec: u32) -> CBall {
        self.mul(self, prec)
    }

    pub fn pow(&self, mut e: u32, prec: u32) -> CBall {
        let mut acc = CBall::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, prec);
            }
            e >>= 1;
            if e > 0 {
                b = b.square(prec);
            }
        }
        acc
    }

    pub fn recip(&self, prec: u32) -> Result<CBall> {
        let n = self.re.square().add(&self.im.square());
        let lo = n.sqrt(prec, Round::Down);
        if lo <= self.rad {
            return Err(Error::Certification("reciprocal of a disk containing 0".into()));
        }
        let re = self.re.div(&n, prec, Round::Nearest);
        let im = self.im.neg().div(&n, prec, Round::Nearest);
        let div_err = re.abs().add(&im.abs()).shl(2 - prec as i64);
        let gap = lo.sub(&self.rad);
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            self.rad.div(&gap.mul(&lo), prec, Round::Up)
        };
        Ok(CBall {
            re,
            im,
            rad: rad.add(&div_err).round(prec, Round::Up),
        })
    }

    pub fn div(&self, o: &CBall, prec: u32) -> Result<CBall> {
        Ok(self.mul(&o.recip(prec)?, prec))
    }

    pub fn re_interval(&self) -> Interval {
        Interval::new(self.re.sub(&self.rad), self.re.add(&self.rad))
    }

    pub fn im_interval(&self) -> Interval {
        Interval::new(self.im.sub(&self.rad), self.im.add(&self.rad))
    }

    pub fn abs(&self, prec: u32) -> Interval {
        let lo = modulus_lower(&self.re, &self.im, prec).sub(&self.rad);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        let hi = modulus_upper(&self.re, &self.im, prec).add(&self.rad).round(prec, Round::Up);
        Interval::new(lo.round(prec, Round::Down), hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.square().add(&self.im.square()) <= self.rad.square()
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.sub(re).square().add(&self.im.sub(im).square()) <= self.rad.square()
    }

    /// Exact test whether the two closed disks intersect.
    pub fn overlaps(&self, o: &CBall) -> bool {
        let d2 = self.re.sub(&o.re).square().add(&self.im.sub(&o.im).square());
        d2 <= self.rad.add(&o.rad).square()
    }

    /// Exact test `self ⊆ o`.
    pub fn within(&self, o: &CBall) -> bool {
        if self.rad > o.rad {
            return false;
        }
        let d2 = self.re.sub(&o.re).square().add(&self.im.sub(&o.im).square());
        d2 <= o.rad.sub(&self.rad).square()
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of an integer polynomial on a disk.
pub fn eval_int_poly(p: &IntPoly, z: &CBall, prec: u32) -> CBall {
    let mut acc = CBall::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z, prec).add(&CBall::from_int(c), prec);
    }
    acc
}

/// Horner evaluation of a rational polynomial on a disk.
pub fn eval_rat_poly(p: &crate::poly::RatPoly, z: &CBall, prec: u32) -> CBall {
    let (ip, scale) = p.to_int_primitive();
    let v = eval_int_poly(&ip, z, prec);
    v.mul(&CBall::from_rational(&scale, prec), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_brackets_known_values() {
        let two = Interval::from_i64(2).ln(128).unwrap();
        let l2 = std::f64::consts::LN_2;
        assert!(two.lo.to_f64() <= l2 && l2 <= two.hi.to_f64());
        assert!(two.width() < Dyadic::pow2(-100));
        let one = Interval::from_i64(1).ln(64).unwrap();
        assert!(one.contains_zero());
        let small = Interval::point(Dyadic::pow2(-300)).ln(64).unwrap();
        let expect = -300.0 * l2;
        assert!((small.to_f64() - expect).abs() < 1e-9);
        assert!(small.lo.to_f64() <= expect + 1e-12);
    }

    #[test]
    fn ln_of_decimal_value() {
        let q = BigRational::new(10.into(), 3.into());
        let i = Interval::from_rational(&q, 100).ln(100).unwrap();
        let v = (10.0f64 / 3.0).ln();
        assert!((i.to_f64() - v).abs() < 1e-14);
    }

    #[test]
    fn disk_multiplication_encloses() {
        let i = CBall::exact(Dyadic::zero(), Dyadic::one());
        let m1 = i.square(64);
        assert!(m1.contains_point(&Dyadic::from_i64(-1), &Dyadic::zero()));
        let fuzzy = CBall::new(Dyadic::one(), Dyadic::zero(), Dyadic::pow2(-10));
        let sq = fuzzy.square(64);
        // (1 + 2^-10)^2 must be inside
        let edge = Dyadic::one().add(&Dyadic::pow2(-10)).square();
        assert!(sq.contains_point(&edge, &Dyadic::zero()));
    }

    #[test]
    fn reciprocal_encloses() {
        let z = CBall::new(Dyadic::from_i64(3), Dyadic::from_i64(4), Dyadic::pow2(-20));
        let r = z.recip(80).unwrap();
        // 1/(3+4i) = (3-4i)/25
        let re = Dyadic::from_rational(&BigRational::new(3.into(), 25.into()), 120, Round::Nearest);
        let im = Dyadic::from_rational(&BigRational::new((-4).into(), 25.into()), 120, Round::Nearest);
        assert!(r.contains_point(&re, &im));
        assert!(CBall::zero().recip(64).is_err());
    }

    #[test]
    fn unique_integer_rounding() {
        let i = Interval::new(Dyadic::from_f64(2.9), Dyadic::from_f64(3.1));
        assert_eq!(i.unique_integer(), Some(BigInt::from(3)));
        let j = Interval::new(Dyadic::from_f64(2.9), Dyadic::from_f64(4.1));
        assert_eq!(j.unique_integer(), None);
    }
}
