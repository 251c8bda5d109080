//! The inequality `|P_α(ξ)| ≤ c₂ H(P_α) |ξ − α|` behind the transference step.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::algnum::AlgebraicNumber;
use crate::error::Result;
use crate::numeric::ball::eval_int_poly;
use crate::numeric::{Dyadic, Interval};

const PREC: u32 = 192;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Strict separation of certified enclosures.
    Certified,
    /// Holds by an exact identity (degree 1: `P(ξ) = q(ξ − α)`).
    Exact,
    /// Enclosures overlap; not refuted.
    Inconclusive,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferenceSample {
    pub minpoly: Vec<String>,
    pub height: String,
    pub poly_value: [f64; 2],
    pub distance: [f64; 2],
    /// `|P_α(ξ)| / (H(P_α) |ξ − α|)`.
    pub ratio: [f64; 2],
    /// `Σ_k k R^{k−1}`, `R = max(|ξ|, |α|)`.
    pub c2: f64,
    pub check: Check,
    /// `log|P_α(ξ)| / log H(P_α)`, compared against `(δ + 2 − d)/2` when `δ` is supplied.
    pub value_exponent: Option<f64>,
    pub consistent_with_delta: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferenceReport {
    pub degree: usize,
    pub delta: Option<f64>,
    pub samples: Vec<TransferenceSample>,
    pub max_ratio: f64,
    pub all_hold: bool,
}

fn pair(i: &Interval) -> [f64; 2] {
    [i.lo.to_f64(), i.hi.to_f64()]
}

/// Checks each sample; `delta` is an empirical norm-growth exponent, when known.
pub fn transference_check(xi: &AlgebraicNumber, samples: &[AlgebraicNumber], delta: Option<f64>) -> Result<TransferenceReport> {
    let d = xi.degree();
    let z = xi.ball(PREC)?;
    let mut out = Vec::with_capacity(samples.len());
    for a in samples {
        let p = a.minpoly();
        let h = p.naive_height();
        let ab = a.ball(PREC)?;
        let val = eval_int_poly(p, &z, PREC + 32).abs(PREC + 32);
        let dist = z.sub(&ab, PREC + 32).abs(PREC + 32);
        let hi = Interval::from_int(&h);
        // R = max(|ξ|, |α|), taken from upper ends
        let r = z.abs(PREC).hi.clone().max(ab.abs(PREC).hi.clone());
        let ri = Interval::point(r);
        let mut c2 = Interval::from_i64(0);
        let mut rk = Interval::from_i64(1);
        for k in 1..=p.deg() {
            c2 = c2.add(&rk.mul(&Interval::from_i64(k as i64), PREC), PREC);
            rk = rk.mul(&ri, PREC);
        }
        let rhs = c2.mul(&hi, PREC).mul(&dist, PREC);
        let check = if p.deg() == 1 {
            // |P(ξ)| = |q| |ξ − α| and c₂ = 1
            if p.coeff(1).abs() <= h {
                Check::Exact
            } else {
                Check::Violated
            }
        } else if val.hi <= rhs.lo {
            Check::Certified
        } else if val.lo > rhs.hi {
            Check::Violated
        } else {
            Check::Inconclusive
        };
        let ratio = if dist.contains_zero() {
            Interval::new(Dyadic::zero(), Dyadic::zero())
        } else {
            val.div(&hi.mul(&dist, PREC), PREC)?
        };
        let value_exponent = if h > BigInt::one() && !val.contains_zero() {
            let lv = val.ln(PREC)?;
            let lh = hi.ln(PREC)?;
            Some(lv.div(&lh, PREC)?.mid().to_f64())
        } else {
            None
        };
        let consistent = match (delta, value_exponent) {
            (Some(dl), Some(e)) => Some(e >= (dl + 2.0 - d as f64) / 2.0 - 1.0),
            _ => None,
        };
        out.push(TransferenceSample {
            minpoly: p.coeffs().iter().map(|c| c.to_string()).collect(),
            height: h.to_string(),
            poly_value: pair(&val),
            distance: pair(&dist),
            ratio: pair(&ratio),
            c2: c2.hi.to_f64(),
            check,
            value_exponent,
            consistent_with_delta: consistent,
        });
    }
    let max_ratio = out.iter().map(|s| s.ratio[1]).fold(0.0, f64::max);
    let all_hold = out.iter().all(|s| s.check != Check::Violated);
    Ok(TransferenceReport {
        degree: d,
        delta,
        samples: out,
        max_ratio,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::pell::{pell_approximant, pell_solve, pell_xi};

    #[test]
    fn zero_and_pell_samples() {
        let xi = pell_xi(2, 3).unwrap();
        let mut samples = vec![AlgebraicNumber::integer(0), AlgebraicNumber::integer(7)];
        for sol in pell_solve(2, 4).unwrap() {
            let rec = pell_approximant(2, 3, &sol).unwrap();
            samples.push(AlgebraicNumber::root_near(&rec.alpha_minpoly, 1.414, 1.732).unwrap());
        }
        let rep = transference_check(&xi, &samples, None).unwrap();
        assert!(rep.all_hold);
        assert_eq!(rep.samples[0].check, Check::Exact);
        // |P(ξ)| = |ξ| = √5 for α = 0
        let v = rep.samples[0].poly_value;
        assert!(v[0] <= 5f64.sqrt() && 5f64.sqrt() <= v[1] + 1e-15);
        assert!(rep.samples[2..].iter().all(|s| s.check == Check::Certified));
        assert!(rep.max_ratio < 10.0);
    }
}
