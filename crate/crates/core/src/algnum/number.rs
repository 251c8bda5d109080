use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ball::eval_int_poly;
use crate::numeric::roots::{certified_roots, RootDisk, DEFAULT_CAP_BITS};
use crate::numeric::{CBall, Dyadic, Interval};
use crate::poly::{factor_over_q, IntPoly};

/// Isolating radius used when a number is first constructed.
pub(crate) fn initial_radius() -> Dyadic {
    Dyadic::pow2(-60)
}

/// An algebraic number: an irreducible primitive minimal polynomial (positive
/// leading coefficient) together with an isolating disk selecting one root.
#[derive(Debug)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    disk: RwLock<RootDisk>,
}

impl Clone for AlgebraicNumber {
    fn clone(&self) -> Self {
        AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            disk: RwLock::new(self.disk.read().unwrap().clone()),
        }
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AlgebraicNumber", 2)?;
        st.serialize_field("minpoly", &self.minpoly)?;
        st.serialize_field("disk", &*self.disk.read().unwrap())?;
        st.end()
    }
}

impl AlgebraicNumber {
    /// Trusts that `minpoly` is irreducible and `disk` isolates one of its roots.
    pub(crate) fn from_parts(minpoly: IntPoly, disk: RootDisk) -> Self {
        AlgebraicNumber {
            minpoly,
            disk: RwLock::new(disk),
        }
    }

    pub fn rational(q: &BigRational) -> Self {
        let p = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let d = certified_roots(&p, &initial_radius()).expect("linear polynomial");
        AlgebraicNumber::from_parts(p, d.into_iter().next().unwrap())
    }

    pub fn integer(n: i64) -> Self {
        AlgebraicNumber::rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// All roots of an irreducible polynomial, as algebraic numbers (disk order).
    pub fn roots_of(p: &IntPoly) -> Result<Vec<AlgebraicNumber>> {
        let f = factor_over_q(p)?;
        if !f.is_irreducible() {
            return Err(Error::domain(format!("{p} is not irreducible over Q")));
        }
        let q = f.factors[0].0.clone();
        Ok(certified_roots(&q, &initial_radius())?
            .into_iter()
            .map(|d| AlgebraicNumber::from_parts(q.clone(), d))
            .collect())
    }

    /// The root of the irreducible `p` closest to the given approximation.
    pub fn root_near(p: &IntPoly, re: f64, im: f64) -> Result<AlgebraicNumber> {
        let roots = AlgebraicNumber::roots_of(p)?;
        let target = num_complex::Complex64::new(re, im);
        roots
            .into_iter()
            .min_by(|a, b| {
                let da = (a.approx() - target).norm();
                let db = (b.approx() - target).norm();
                da.partial_cmp(&db).unwrap()
            })
            .ok_or_else(|| Error::domain("polynomial has no roots"))
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn disk(&self) -> RootDisk {
        self.disk.read().unwrap().clone()
    }

    pub fn approx(&self) -> num_complex::Complex64 {
        self.disk.read().unwrap().center_f64()
    }

    pub fn is_real(&self) -> bool {
        self.disk.read().unwrap().real
    }

    /// Enclosure of radius at most `2^-bits`, contained in all earlier ones.
    pub fn ball(&self, bits: u32) -> Result<CBall> {
        let r = Dyadic::pow2(-(bits as i64));
        {
            let d = self.disk.read().unwrap();
            if d.radius <= r {
                return Ok(d.ball());
            }
        }
        let refined = self.disk.read().unwrap().refine(&r)?;
        let b = refined.ball();
        *self.disk.write().unwrap() = refined;
        Ok(b)
    }

    pub fn naive_height(&self) -> BigInt {
        self.minpoly.naive_height()
    }

    /// All conjugates (this number included), in disk order of the minimal polynomial.
    pub fn conjugates(&self) -> Result<Vec<AlgebraicNumber>> {
        AlgebraicNumber::roots_of(&self.minpoly)
    }

    pub fn conj(&self) -> Result<AlgebraicNumber> {
        if self.is_real() {
            return Ok(self.clone());
        }
        let d = self.disk();
        AlgebraicNumber::root_near(&self.minpoly, d.re.to_f64(), -d.im.to_f64())
    }

    /// Absolute logarithmic Weil height `h = (log|lc| + Σ log max(1, |α_i|)) / d`.
    pub fn weil_height(&self, bits: u32) -> Result<Interval> {
        weil_height_of_poly(&self.minpoly, bits)
    }

    /// `max(h, 1)`.
    pub fn weil_height_star(&self, bits: u32) -> Result<Interval> {
        Ok(self.weil_height(bits)?.max_const(&Dyadic::one()))
    }
}

/// `(log M(p)) / deg p` for an irreducible `p`, from certified roots.
pub fn weil_height_of_poly(p: &IntPoly, bits: u32) -> Result<Interval> {
    let prec = bits + 16;
    let r = Dyadic::pow2(-(bits as i64) - 8);
    let roots = certified_roots(p, &r)?;
    let one = Dyadic::one();
    let mut acc = Interval::from_int(&p.leading().abs()).ln(prec)?;
    for d in &roots {
        let m = d.ball().abs(prec).max_const(&one);
        acc = acc.add(&m.ln(prec)?, prec);
        debug_assert_eq!(d.multiplicity, 1);
    }
    let deg = Interval::from_i64(p.deg() as i64);
    acc.div(&deg, prec)
}

/// Given a polynomial known to vanish at a value (supplied as enclosures of
/// increasing accuracy), returns the value as an algebraic number: the unique
/// irreducible factor not certified nonzero, with the isolating disk that
/// meets the enclosure.
pub fn identify_root<F>(candidate: &IntPoly, value: F) -> Result<AlgebraicNumber>
where
    F: Fn(u32) -> Result<CBall>,
{
    let fac = factor_over_q(candidate)?;
    let factors: Vec<IntPoly> = fac.factors.iter().map(|(q, _)| q.clone()).collect();
    if factors.is_empty() {
        return Err(Error::domain("constant polynomial has no roots"));
    }
    let mut bits = 64u32;
    let mut alive: Vec<usize> = (0..factors.len()).collect();
    let mut roots: Option<(usize, Vec<RootDisk>)> = None;
    while bits <= DEFAULT_CAP_BITS {
        let v = value(bits)?;
        let prec = bits + 32;
        alive.retain(|&i| eval_int_poly(&factors[i], &v, prec).contains_zero());
        match alive.len() {
            0 => {
                return Err(Error::Certification(
                    "value is not a root of the candidate polynomial".into(),
                ))
            }
            1 => {
                let i = alive[0];
                let q = &factors[i];
                if roots.as_ref().is_none_or(|(j, _)| *j != i) {
                    roots = Some((i, certified_roots(q, &initial_radius())?));
                }
                let (_, disks) = roots.as_mut().unwrap();
                // shrink the candidate disks together with the enclosure
                let target = v.rad.clone().max(Dyadic::pow2(-(bits as i64)));
                for d in disks.iter_mut() {
                    if d.radius > target {
                        *d = d.refine(&target)?;
                    }
                }
                let hits: Vec<&RootDisk> = disks.iter().filter(|d| d.ball().overlaps(&v)).collect();
                if hits.len() == 1 {
                    return Ok(AlgebraicNumber::from_parts(q.clone(), hits[0].clone()));
                }
            }
            _ => {}
        }
        bits *= 2;
    }
    Err(Error::PrecisionCap {
        cap_bits: DEFAULT_CAP_BITS,
        context: format!("identifying a root of {candidate}"),
    })
}

/// Minimal polynomial of `ξ + conj(ξ)`.
pub fn real_part_sum(x: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    let cand = crate::poly::sum_roots_poly(x.minpoly(), x.minpoly())?;
    identify_root(&cand, |bits| {
        let b = x.ball(bits + 4)?;
        Ok(b.add(&b.conj(), bits + 32))
    })
}

/// Minimal polynomial of `ξ · conj(ξ)`.
pub fn modulus_product(x: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    let cand = crate::poly::product_roots_poly(x.minpoly(), x.minpoly())?;
    let cand = if cand.is_zero() {
        IntPoly::x()
    } else {
        cand
    };
    identify_root(&cand, |bits| {
        let b = x.ball(bits + 8)?;
        Ok(b.mul(&b.conj(), bits + 32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn naive_heights() {
        let half = AlgebraicNumber::rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.naive_height(), BigInt::from(2));
        let a = AlgebraicNumber::roots_of(&p(&[5, -3, 1])).unwrap();
        assert_eq!(a[0].naive_height(), BigInt::from(5));
        let f = AlgebraicNumber::roots_of(&p(&[1, -3, 5, -5, 5, -3, 1])).unwrap();
        assert!(f.iter().all(|x| x.naive_height() == BigInt::from(5)));
    }

    #[test]
    fn weil_height_of_two_and_half() {
        let l2 = std::f64::consts::LN_2;
        for x in [AlgebraicNumber::integer(2), AlgebraicNumber::rational(&BigRational::new(1.into(), 2.into()))] {
            let h = x.weil_height(80).unwrap();
            assert!(h.lo.to_f64() <= l2 + 1e-15 && l2 - 1e-15 <= h.hi.to_f64());
            assert!(h.width() < Dyadic::pow2(-60));
        }
    }

    #[test]
    fn beta_of_sqrt2_plus_i_sqrt3() {
        let m = p(&[25, 0, 2, 0, 1]); // (x^2 + 1)^2 + 24
        let xi = AlgebraicNumber::root_near(&m, 1.414, 1.732).unwrap();
        let b1 = real_part_sum(&xi).unwrap();
        assert_eq!(b1.minpoly(), &p(&[-8, 0, 1]));
        let b2 = modulus_product(&xi).unwrap();
        assert_eq!(b2.minpoly(), &p(&[-5, 1]));
    }
}
