//! `√d₁ + … + √d_{k−1} + √(−d_k)` for coprime squarefree `d_i`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algnum::{identify_root, AlgebraicNumber, NumberField};
use crate::criteria::{galois_closure_check, GaloisVerdict};
use crate::error::{Error, Result};
use crate::numeric::{CBall, Interval};
use crate::poly::{sum_roots_poly, IntPoly};

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn check(ds: &[u64]) -> Result<()> {
    if ds.is_empty() {
        return Err(Error::domain("surd family needs at least one integer"));
    }
    for (i, &a) in ds.iter().enumerate() {
        if !is_squarefree(a) {
            return Err(Error::domain(format!("{a} is not a positive squarefree integer")));
        }
        for &b in &ds[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::domain(format!("{a} and {b} are not coprime")));
            }
        }
    }
    if ds.iter().filter(|&&d| d == 1).count() > 1 {
        return Err(Error::domain("1 may appear at most once"));
    }
    Ok(())
}

pub fn surd_label(ds: &[u64]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("surd({})", parts.join(","))
}

/// Enclosure of `Σ_{i<k} √d_i + i√d_k`.
pub fn surd_value(ds: &[u64], bits: u32) -> Result<CBall> {
    let prec = bits + 16;
    let (last, rest) = ds.split_last().expect("nonempty");
    let mut re = Interval::from_i64(0);
    for &d in rest {
        re = re.add(&Interval::from_i64(d as i64).sqrt(prec)?, prec);
    }
    let im = Interval::from_i64(*last as i64).sqrt(prec)?;
    Ok(CBall::from_interval(&re, &im))
}

pub fn surd_family(ds: &[u64]) -> Result<AlgebraicNumber> {
    check(ds)?;
    let (last, rest) = ds.split_last().unwrap();
    let mut p = IntPoly::new(vec![BigInt::from(*last), BigInt::from(0), BigInt::from(1)]);
    for &d in rest {
        let q = IntPoly::new(vec![-BigInt::from(d), BigInt::from(0), BigInt::from(1)]);
        p = sum_roots_poly(&p, &q)?;
    }
    let xi = identify_root(&p, |bits| surd_value(ds, bits))?;
    debug_assert_eq!(xi.degree(), 1 << ds.len());
    Ok(xi)
}

/// `Q(ξ)` for the surd element, with its automorphism table certified.
pub fn surd_field(ds: &[u64]) -> Result<NumberField> {
    let xi = surd_family(ds)?;
    let (k, v) = galois_closure_check(&surd_label(ds), xi.minpoly().clone())?;
    match v {
        GaloisVerdict::Galois(_) => Ok(k),
        other => Err(Error::Certification(format!(
            "{} expected Galois, found {}",
            surd_label(ds),
            other.label()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_members() {
        assert_eq!(surd_family(&[1]).unwrap().minpoly(), &IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(surd_family(&[2, 3]).unwrap().minpoly(), &IntPoly::from_i64s(&[25, 0, 2, 0, 1]));
        assert!(surd_family(&[2, 4]).is_err());
        assert!(surd_family(&[6, 10]).is_err());
    }

    #[test]
    fn surd_quartic_field_is_galois() {
        let k = surd_field(&[2, 3]).unwrap();
        assert_eq!(k.galois_table().unwrap().len(), 4);
        assert!(k.is_totally_complex());
    }
}
