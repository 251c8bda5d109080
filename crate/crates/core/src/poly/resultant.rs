use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};
use crate::linalg::det_bareiss;

/// Sylvester-matrix resultant. For `p = lc·Π(X − α_i)` this equals
/// `lc^{deg q} · Π q(α_i)`.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::domain("resultant of the zero polynomial")),
    };
    if m == 0 {
        return Ok(num_traits::pow(p.leading(), n));
    }
    if n == 0 {
        return Ok(num_traits::pow(q.leading(), m));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    let phigh: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
    let qhigh: Vec<BigInt> = q.coeffs().iter().rev().cloned().collect();
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        r[i..i + m + 1].clone_from_slice(&phigh);
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        r[i..i + n + 1].clone_from_slice(&qhigh);
        rows.push(r);
    }
    Ok(det_bareiss(rows))
}

/// Resultant of rational polynomials, by clearing denominators.
pub fn resultant_rat(p: &RatPoly, q: &RatPoly) -> Result<BigRational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::domain("resultant of the zero polynomial"));
    }
    let (pi, ps) = p.to_int_primitive();
    let (qi, qs) = q.to_int_primitive();
    let r = resultant(&pi, &qi)?;
    let scale = num_traits::pow(ps, q.deg()) * num_traits::pow(qs, p.deg());
    Ok(BigRational::from_integer(r) * scale)
}

/// Reconstructs `R(X) = Res_Y(p(Y), Q_X(Y))` by evaluation at `X = 0..=degree`
/// and exact Newton interpolation. `at(k)` must return `Q_k(Y)`.
pub fn interpolate_resultant<F>(p: &IntPoly, degree: usize, at: F) -> Result<RatPoly>
where
    F: Fn(&BigInt) -> RatPoly,
{
    let xs: Vec<BigInt> = (0..=degree).map(BigInt::from).collect();
    let mut ys = Vec::with_capacity(xs.len());
    let pr = p.to_rat();
    for x in &xs {
        let q = at(x);
        ys.push(if q.is_zero() {
            BigRational::zero()
        } else {
            resultant_rat(&pr, &q)?
        });
    }
    Ok(newton_interpolate(&xs, &ys))
}

pub fn newton_interpolate(xs: &[BigInt], ys: &[BigRational]) -> RatPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let lin = RatPoly::new(vec![BigRational::from_integer(-&xs[i]), BigRational::one()]);
        acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
    }
    acc
}

/// `lc(p)^{deg q} lc(q)^{deg p} Π_{i,j} (X − (α_i + β_j))` over roots of `p` and `q`.
pub fn sum_roots_poly(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    let (m, n) = (p.deg(), q.deg());
    let qr = q.to_rat();
    let r = interpolate_resultant(p, m * n, |x| {
        // q(x - Y)
        let lin = RatPoly::new(vec![BigRational::from_integer(x.clone()), -BigRational::one()]);
        qr.compose(&lin)
    })?;
    r.to_int_exact()
        .ok_or_else(|| Error::Certification("non-integral resultant interpolation".into()))
}

/// Polynomial whose roots are the products `α_i β_j`: `Res_Y(p(Y), Y^{deg q} q(X/Y))`.
pub fn product_roots_poly(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    let (m, n) = (p.deg(), q.deg());
    let r = interpolate_resultant(p, m * n, |x| {
        let mut c = vec![BigRational::zero(); n + 1];
        let mut xp = BigInt::one();
        for (j, qj) in q.coeffs().iter().enumerate() {
            c[n - j] = BigRational::from_integer(qj * &xp);
            xp *= x;
        }
        RatPoly::new(c)
    })?;
    r.to_int_exact()
        .ok_or_else(|| Error::Certification("non-integral resultant interpolation".into()))
}

/// Polynomial with roots `a + b·α_i` for the roots `α_i` of `p` (`b ≠ 0`), primitive.
pub fn affine_image_poly(p: &IntPoly, a: &BigRational, b: &BigRational) -> IntPoly {
    // p((X - a)/b)
    let binv = b.recip();
    let lin = RatPoly::new(vec![-(a * &binv), binv]);
    p.to_rat().compose(&lin).to_int_primitive().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-1, 1])).unwrap(), BigInt::from(-1));
        let f = p(&[1, -3, 5, -5, 5, -3, 1]);
        assert_eq!(resultant(&f, &p(&[0, 1])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn zero_input_is_error() {
        assert!(resultant(&IntPoly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn constant_cases() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[2])).unwrap(), BigInt::from(4));
    }

    #[test]
    fn sum_of_sqrt2_and_sqrt3() {
        let r = sum_roots_poly(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap();
        // x^4 - 10x^2 + 1
        assert_eq!(r, p(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn products_of_roots() {
        // roots ±i times roots ±i: products ±1, each twice
        let r = product_roots_poly(&p(&[1, 0, 1]), &p(&[1, 0, 1])).unwrap();
        assert_eq!(r, &p(&[-1, 0, 1]) * &p(&[-1, 0, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<BigInt> = (0..4).map(BigInt::from).collect();
        let target = RatPoly::from_i64s(&[3, -1, 0, 2]);
        let ys: Vec<BigRational> = xs.iter().map(|x| target.eval(&BigRational::from_integer(x.clone()))).collect();
        assert_eq!(newton_interpolate(&xs, &ys), target);
    }
}
