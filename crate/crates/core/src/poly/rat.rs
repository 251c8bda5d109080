use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IntPoly;
use crate::error::{Error, Result};

/// Univariate polynomial over `Q`; coefficients are `BigRational`, which is
/// always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::from_i64s(c).to_rat()
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Clears denominators: returns `(q, s)` with `q` primitive in `Z[X]` and
    /// `self = s · q`. The sign is put into `s` so that `q` has positive leading coefficient.
    pub fn to_int_primitive(&self) -> (IntPoly, BigRational) {
        if self.is_zero() {
            return (IntPoly::zero(), BigRational::zero());
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let q = IntPoly::new(ints);
        let mut cont = q.content();
        if q.leading().is_negative() {
            cont = -cont;
        }
        let prim = IntPoly::new(q.coeffs().iter().map(|c| c / &cont).collect());
        (prim, BigRational::new(cont, l))
    }

    /// Integer polynomial `self · m` when that is integral.
    pub fn to_int_exact(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let inv = d.leading().recip();
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dd] * &inv;
            if top.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &top * dc;
            }
            q[i] = top;
        }
        rem.truncate(dd);
        Ok((RatPoly::new(q), RatPoly::new(rem)))
    }

    /// Remainder modulo `d`; panics on `d = 0` (callers hold a nonconstant modulus).
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.divrem(d).expect("nonzero modulus").1
    }

    /// Exact quotient; panics if `d` does not divide `self` (internal use).
    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over `Q` (zero if both arguments are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        // Route through the primitive integer PRS to avoid coefficient blowup.
        let (a, _) = self.to_int_primitive();
        let (b, _) = other.to_int_primitive();
        a.gcd(&b).to_rat().monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self(q(X))`.
    pub fn compose(&self, q: &RatPoly) -> RatPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| &(&acc * q) + &RatPoly::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> RatPoly {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// `g(h(X)) mod f`, exact. Horner steps reduce after every multiplication so
/// intermediate degrees stay below `2·deg f`.
pub fn compose_mod(g: &RatPoly, h: &RatPoly, f: &IntPoly) -> Result<RatPoly> {
    if f.deg() == 0 {
        return Err(Error::domain("compose_mod needs a nonconstant modulus"));
    }
    let fr = f.to_rat();
    let hr = h.rem(&fr);
    let mut acc = RatPoly::zero();
    for c in g.coeffs().iter().rev() {
        acc = (&(&acc * &hr) + &RatPoly::constant(c.clone())).rem(&fr);
    }
    Ok(acc)
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_util::serialize_rats(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(RatPoly::new(crate::serde_util::deserialize_rats(d)?))
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_mod_examples() {
        let f = IntPoly::from_i64s(&[1, 0, 1]);
        let r = compose_mod(&RatPoly::from_i64s(&[0, 0, 1]), &RatPoly::x(), &f).unwrap();
        assert_eq!(r, RatPoly::from_i64s(&[-1]));
        let r = compose_mod(&RatPoly::x(), &RatPoly::from_i64s(&[0, -1]), &f).unwrap();
        assert_eq!(r, RatPoly::from_i64s(&[0, -1]));
    }

    #[test]
    fn compose_mod_rejects_constant_modulus() {
        assert!(compose_mod(&RatPoly::x(), &RatPoly::x(), &IntPoly::from_i64s(&[3])).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let a = RatPoly::from_i64s(&[1, 0, 1]);
        let b = RatPoly::from_i64s(&[2, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, RatPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn to_int_primitive_roundtrip() {
        let q = RatPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ]);
        let (p, s) = q.to_int_primitive();
        assert_eq!(p, IntPoly::from_i64s(&[-2, 3]));
        assert_eq!(p.to_rat().scale(&s), q);
    }
}
