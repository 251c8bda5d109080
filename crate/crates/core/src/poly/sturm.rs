use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Interval endpoint for real-root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    At(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn int(v: i64) -> Self {
        Endpoint::At(BigRational::from_integer(BigInt::from(v)))
    }
}

/// Sturm chain with every member scaled to a primitive integer polynomial by a
/// positive factor, which leaves the sign-variation counts unchanged.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::domain("Sturm chain of the zero polynomial"));
        }
        let mut chain = vec![p.primitive_part()];
        let d = p.derivative();
        if d.is_zero() {
            return Ok(SturmChain { chain });
        }
        chain.push(d.primitive_part());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let (_, r) = a.divrem(b)?;
            if r.is_zero() {
                break;
            }
            // -r = s' · prim with s' > 0 after the sign fix below
            let (prim, s) = r.to_int_primitive();
            chain.push(if s.is_positive() { -prim } else { prim });
        }
        Ok(SturmChain { chain })
    }

    fn sign_at(p: &IntPoly, x: &Endpoint) -> i32 {
        let s = match x {
            Endpoint::At(v) => {
                let val = p.eval_rational(v);
                if val.is_zero() {
                    0
                } else if val.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Endpoint::PosInf => {
                if p.leading().is_positive() {
                    1
                } else {
                    -1
                }
            }
            Endpoint::NegInf => {
                let s = if p.leading().is_positive() { 1 } else { -1 };
                if p.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        };
        s
    }

    pub fn variations(&self, x: &Endpoint) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| Self::sign_at(p, x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    Ok(SturmChain::new(&p.squarefree_part())?.count(lo, hi))
}

pub fn real_root_count(p: &IntPoly) -> Result<usize> {
    sturm_count(p, &Endpoint::NegInf, &Endpoint::PosInf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn counts_real_roots() {
        assert_eq!(real_root_count(&p(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(real_root_count(&p(&[1, -3, 5, -5, 5, -3, 1])).unwrap(), 0);
        assert_eq!(real_root_count(&p(&[1, -1, 0, 2, 0, -1, 1])).unwrap(), 0);
        assert_eq!(real_root_count(&p(&[0, -1, 0, 1])).unwrap(), 3);
    }

    #[test]
    fn half_open_interval() {
        let q = p(&[0, -1, 0, 1]); // roots -1, 0, 1
        assert_eq!(sturm_count(&q, &Endpoint::int(-1), &Endpoint::int(1)).unwrap(), 2);
        assert_eq!(sturm_count(&q, &Endpoint::int(0), &Endpoint::int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &Endpoint::int(-2), &Endpoint::int(0)).unwrap(), 2);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        let q = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        assert_eq!(real_root_count(&q).unwrap(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(real_root_count(&IntPoly::zero()).is_err());
    }
}
