use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact binary float `mant · 2^exp`, normalized so that `mant` is odd (or zero with `exp = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(BigInt::one())
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `floor(log2 |x|)`; meaningless for zero.
    pub fn magnitude(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_int(&self, k: &BigInt) -> Dyadic {
        Dyadic::new(&self.mant * k, self.exp)
    }

    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn square(&self) -> Dyadic {
        self.mul(self)
    }

    /// Rounds to a multiple of `2^e`.
    pub fn round_to_exp(&self, e: i64, mode: Round) -> Dyadic {
        if self.is_zero() || self.exp >= e {
            return self.clone();
        }
        let shift = (e - self.exp) as usize;
        let d = BigInt::one() << shift;
        let (q, r) = self.mant.div_mod_floor(&d);
        let q = match mode {
            Round::Down => q,
            Round::Up => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
            Round::Nearest => {
                if (&r << 1usize) >= d {
                    q + 1
                } else {
                    q
                }
            }
        };
        Dyadic::new(q, e)
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        if self.is_zero() || self.mant.bits() <= prec as u64 {
            return self.clone();
        }
        let e = self.magnitude() + 1 - prec as i64;
        self.round_to_exp(e, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Dyadic approximation of a rational with `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32, mode: Round) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let n = q.numer();
        let d = q.denom();
        let shift = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (num, den) = if shift >= 0 {
            (n << shift as usize, d.clone())
        } else {
            (n.clone(), d << (-shift) as usize)
        };
        let (quo, rem) = num.div_mod_floor(&den);
        let quo = match mode {
            Round::Up if !rem.is_zero() => quo + 1,
            Round::Nearest if (&rem << 1usize) >= den => quo + 1,
            _ => quo,
        };
        Dyadic::new(quo, -shift)
    }

    /// `self / o` rounded to `prec` significant bits.
    pub fn div(&self, o: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (prec as i64 + o.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let num = &self.mant << shift as usize;
        let (q, r) = num.div_mod_floor(&o.mant);
        let q = match mode {
            Round::Up if !r.is_zero() => q + 1,
            Round::Nearest if (&r << 1usize).abs() >= o.mant.abs() => q + 1,
            _ => q,
        };
        Dyadic::new(q, self.exp - o.exp - shift)
    }

    /// Square root of a nonnegative value, rounded in the given direction.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut shift = (2 * prec as i64 - self.mant.bits() as i64 + 2).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as usize;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let s = match mode {
            Round::Up if !exact => s + 1,
            Round::Nearest => {
                // compare m with (s + 1/2)^2 = s^2 + s + 1/4
                if (&m - &s * &s) > s {
                    s + 1
                } else {
                    s
                }
            }
            _ => s,
        };
        Dyadic::new(s, (self.exp - shift) / 2)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            ((&self.mant >> (bits - 60) as usize).to_f64().unwrap(), self.exp + bits - 60)
        } else {
            (self.mant.to_f64().unwrap(), self.exp)
        };
        let e = e.clamp(-2000, 2000) as i32;
        if e < -1000 {
            m * 2f64.powi(-1000) * 2f64.powi(e + 1000)
        } else {
            m * 2f64.powi(e)
        }
    }

    /// Exact decimal expansion (always finite for a dyadic).
    pub fn to_decimal(&self) -> String {
        if self.exp >= 0 {
            return (&self.mant << self.exp as usize).to_string();
        }
        let k = (-self.exp) as usize;
        let scaled = &self.mant * num_traits::pow(BigInt::from(5), k);
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let (int_part, frac) = if digits.len() > k {
            let (a, b) = digits.split_at(digits.len() - k);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{}{}", "0".repeat(k - digits.len()), digits))
        };
        let frac = frac.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    pub fn parse_decimal(s: &str) -> Option<Dyadic> {
        let q = crate::serde_util::parse_decimal(s)?;
        let d = q.denom();
        // only decimals with a power-of-two reduced denominator are dyadic
        if d.magnitude().count_ones() != 1 {
            return None;
        }
        let e = d.trailing_zeros().unwrap_or(0) as i64;
        Some(Dyadic::new(q.numer().clone(), -e))
    }

    pub fn max(self, o: Dyadic) -> Dyadic {
        if self >= o {
            self
        } else {
            o
        }
    }

    pub fn min(self, o: Dyadic) -> Dyadic {
        if self <= o {
            self
        } else {
            o
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), o.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // same nonzero sign: cheap magnitude test first
        let (ma, mb) = (self.magnitude(), o.magnitude());
        if ma != mb {
            return if sa > 0 { ma.cmp(&mb) } else { mb.cmp(&ma) };
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_and_decimal() {
        let x = Dyadic::from_f64(0.375);
        assert_eq!(x.to_decimal(), "0.375");
        assert_eq!(Dyadic::from_f64(-2.5).to_decimal(), "-2.5");
        assert_eq!(Dyadic::from_i64(12).to_decimal(), "12");
        assert_eq!(x.to_f64(), 0.375);
        assert_eq!(Dyadic::parse_decimal("0.375"), Some(x));
        assert_eq!(Dyadic::parse_decimal("0.1"), None);
    }

    #[test]
    fn rounding_directions() {
        let third = BigRational::new(1.into(), 3.into());
        let lo = Dyadic::from_rational(&third, 40, Round::Down);
        let hi = Dyadic::from_rational(&third, 40, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        let two = Dyadic::from_i64(2);
        let s_lo = two.sqrt(80, Round::Down);
        let s_hi = two.sqrt(80, Round::Up);
        assert!(s_lo.square() < two && two < s_hi.square());
        assert_eq!(Dyadic::from_i64(9).sqrt(10, Round::Up), Dyadic::from_i64(3));
    }

    #[test]
    fn ordering_is_exact() {
        let a = Dyadic::new(BigInt::from(3), -2);
        let b = Dyadic::new(BigInt::from(1), -1);
        assert!(a > b);
        assert!(a.neg() < b.neg());
        assert_eq!(a.sub(&b), Dyadic::new(BigInt::from(1), -2));
    }

    #[test]
    fn division_brackets_quotient() {
        let a = Dyadic::from_i64(1);
        let b = Dyadic::from_i64(7);
        let lo = a.div(&b, 64, Round::Down);
        let hi = a.div(&b, 64, Round::Up);
        let q = BigRational::new(1.into(), 7.into());
        assert!(lo.to_rational() <= q && q <= hi.to_rational());
        assert!(hi.sub(&lo) <= Dyadic::pow2(-60));
    }
}
