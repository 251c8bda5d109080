//! Exact norms of `x_0 + x_1 ξ + … + x_n ξ^n`, bounded enumeration of norm-form
//! solutions and minimum-norm growth profiles.
//!
//! Both searches walk the sign-canonical vectors of one max-norm shell at a
//! time. Every vector gets an `f64` enclosure `[lo, hi]` of `|Norm|` from the
//! embeddings; only vectors whose enclosure can matter are passed to the exact
//! resultant.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algnum::NumberField;
use crate::error::{Error, Result};
use crate::poly::resultant;
use crate::poly::IntPoly;
use crate::serde_util;

/// `Norm_{K/Q}(x_0 + x_1 ξ + … + x_n ξ^n) = Res(f, x_0 + x_1 X + … + x_n X^n)`
/// (f monic, so no leading-coefficient correction).
pub fn norm_of_vector(k: &NumberField, x: &[i64]) -> BigInt {
    let p = IntPoly::from_i64s(x);
    if p.is_zero() {
        return BigInt::zero();
    }
    resultant(k.poly(), &p).expect("nonzero polynomials")
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormFormSolution {
    pub coords: Vec<i64>,
    #[serde(with = "serde_util::bigint")]
    pub norm_value: BigInt,
    /// Max coordinate size.
    pub x: i64,
}

impl NormFormSolution {
    /// Computes the norm exactly; the record can't exist unverified.
    pub fn new(k: &NumberField, coords: Vec<i64>) -> NormFormSolution {
        let norm_value = norm_of_vector(k, &coords);
        let x = coords.iter().map(|c| c.abs()).max().unwrap_or(0);
        NormFormSolution { coords, norm_value, x }
    }

    pub fn verify(&self, k: &NumberField) -> bool {
        norm_of_vector(k, &self.coords) == self.norm_value
    }

    pub fn negated(&self, k: &NumberField) -> NormFormSolution {
        NormFormSolution::new(k, self.coords.iter().map(|c| -c).collect())
    }
}

/// One representative embedding per conjugate pair, with its multiplicity.
struct Screen {
    n: usize,
    pows: Vec<Vec<Complex64>>,
    mods: Vec<Vec<f64>>,
    mult: Vec<i32>,
}

// relative error allowance for one embedding value, covering the embedding
// approximation and the Horner-free summation
const REL: f64 = 1e-12;

impl Screen {
    fn new(k: &NumberField, n: usize) -> Screen {
        let d = k.degree();
        let mut pows = Vec::new();
        let mut mods = Vec::new();
        let mut mult = Vec::new();
        for i in 0..d {
            let j = k.conj_index(i);
            if j < i {
                continue;
            }
            let z = k.embedding(i).approx();
            let z = if j == i { Complex64::new(z.re, 0.0) } else { z };
            let mut p = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..n {
                p.push(p.last().unwrap() * z);
            }
            mods.push(p.iter().map(|w| w.norm()).collect());
            pows.push(p);
            mult.push(if j == i { 1 } else { 2 });
        }
        Screen { n, pows, mods, mult }
    }

    /// Encloses `|Norm(x)|`; `lo` may be zero when cancellation is heavy.
    fn bounds(&self, vals: &[Complex64], scale: &[f64]) -> (f64, f64) {
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        for ((v, s), &m) in vals.iter().zip(scale).zip(&self.mult) {
            let a = v.norm();
            let e = REL * s + 1e-300;
            let l = (a - e).max(0.0);
            let h = a + e;
            lo *= l.powi(m);
            hi *= h.powi(m);
        }
        (lo * (1.0 - 1e-12), hi * (1.0 + 1e-12))
    }

    /// Visits every sign-canonical vector (first nonzero coordinate positive)
    /// of max-norm exactly `x` with `x_0 = first`.
    fn walk_shell(&self, x: i64, first: i64, visit: &mut dyn FnMut(&[i64], f64, f64)) {
        let e = self.pows.len();
        let mut coords = vec![0i64; self.n + 1];
        coords[0] = first;
        let vals: Vec<Complex64> = self.pows.iter().map(|p| p[0] * first as f64).collect();
        let scale: Vec<f64> = self.mods.iter().map(|m| m[0] * first.abs() as f64).collect();
        let mut st = WalkState {
            coords,
            vals: vec![vals],
            scale: vec![scale],
        };
        st.vals.resize(self.n + 1, vec![Complex64::new(0.0, 0.0); e]);
        st.scale.resize(self.n + 1, vec![0.0; e]);
        self.rec(&mut st, 1, first.abs(), first != 0, x, visit);
    }

    fn rec(&self, st: &mut WalkState, level: usize, mx: i64, started: bool, x: i64, visit: &mut dyn FnMut(&[i64], f64, f64)) {
        if level > self.n {
            if mx == x && started {
                let (lo, hi) = self.bounds(&st.vals[level - 1], &st.scale[level - 1]);
                visit(&st.coords, lo, hi);
            }
            return;
        }
        let last = level == self.n;
        let lo_t = if started { -x } else { 0 };
        for t in lo_t..=x {
            if last && mx < x && t.abs() != x {
                continue;
            }
            st.coords[level] = t;
            let (prev, next) = st.vals.split_at_mut(level);
            let (sprev, snext) = st.scale.split_at_mut(level);
            let tf = t as f64;
            for j in 0..self.pows.len() {
                next[0][j] = prev[level - 1][j] + self.pows[j][level] * tf;
                snext[0][j] = sprev[level - 1][j] + self.mods[j][level] * tf.abs();
            }
            self.rec(st, level + 1, mx.max(t.abs()), started || t != 0, x, visit);
        }
        st.coords[level] = 0;
    }
}

struct WalkState {
    coords: Vec<i64>,
    vals: Vec<Vec<Complex64>>,
    scale: Vec<Vec<f64>>,
}

fn check_n(k: &NumberField, n: usize) -> Result<()> {
    if n + 2 > k.degree() {
        return Err(Error::domain(format!("need n <= d - 2 (n = {n}, d = {})", k.degree())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMode {
    /// `Norm = m` only.
    Exact,
    /// `Norm = ±m`.
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Enumeration {
    pub field: String,
    pub n: usize,
    #[serde(with = "serde_util::bigint")]
    pub m: BigInt,
    pub sign_mode: SignMode,
    pub x_max: i64,
    /// Shells fully searched (equals `x_max` unless partial).
    pub x_done: i64,
    /// Every solution found, sorted; closed under negation whenever `-x` also
    /// meets the target.
    pub solutions: Vec<NormFormSolution>,
    /// Canonical representatives (first nonzero coordinate positive).
    pub representatives: Vec<NormFormSolution>,
    /// `[i, j]` with `solutions[j] = -solutions[i]`, `i` the canonical one.
    pub pairs: Vec<[usize; 2]>,
    /// Vectors passed to the exact resultant.
    pub exact_checks: u64,
    pub partial: bool,
}

impl Enumeration {
    pub fn closed_under_negation(&self) -> bool {
        self.solutions.iter().all(|s| {
            let neg: Vec<i64> = s.coords.iter().map(|c| -c).collect();
            self.solutions.iter().any(|t| t.coords == neg)
        })
    }
}

/// All `x` with `max |x_i| <= x_max` and `Norm(x) = m` (or `±m`), shell by
/// shell; the budget is checked between shells.
pub fn enumerate_solutions(
    k: &NumberField,
    n: usize,
    m: &BigInt,
    sign_mode: SignMode,
    x_max: i64,
    budget: Option<Duration>,
) -> Result<Enumeration> {
    check_n(k, n)?;
    if m.is_zero() {
        return Err(Error::domain("norm target must be nonzero"));
    }
    let screen = Screen::new(k, n);
    let target = m.abs().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let accept = |v: &BigInt| match sign_mode {
        SignMode::Exact => v == m,
        SignMode::Both => v.abs() == m.abs(),
    };
    let t0 = Instant::now();
    let mut reps = Vec::new();
    let mut checks = 0u64;
    let mut x_done = 0;
    let mut partial = false;
    for x in 1..=x_max {
        if budget.is_some_and(|b| t0.elapsed() > b) {
            partial = true;
            break;
        }
        let found: Vec<(Vec<NormFormSolution>, u64)> = (0..=x)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut c = 0u64;
                screen.walk_shell(x, first, &mut |coords, lo, hi| {
                    if lo <= target && target <= hi {
                        c += 1;
                        let s = NormFormSolution::new(k, coords.to_vec());
                        if accept(&s.norm_value) {
                            out.push(s);
                        }
                    }
                });
                (out, c)
            })
            .collect();
        for (sols, c) in found {
            reps.extend(sols);
            checks += c;
        }
        x_done = x;
    }
    reps.sort();
    let mut solutions: Vec<NormFormSolution> = Vec::new();
    for r in &reps {
        solutions.push(r.clone());
        let neg = r.negated(k);
        if accept(&neg.norm_value) {
            solutions.push(neg);
        }
    }
    solutions.sort();
    let pairs = reps
        .iter()
        .filter_map(|r| {
            let i = solutions.binary_search(r).ok()?;
            let neg: Vec<i64> = r.coords.iter().map(|c| -c).collect();
            let j = solutions.iter().position(|s| s.coords == neg)?;
            Some([i, j])
        })
        .collect();
    Ok(Enumeration {
        field: k.label.clone(),
        n,
        m: m.clone(),
        sign_mode,
        x_max,
        x_done,
        solutions,
        representatives: reps,
        pairs,
        exact_checks: checks,
        partial,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileShell {
    pub x: i64,
    /// Exact minimum of `|Norm|` over the shell (never zero: `n < d`).
    #[serde(with = "serde_util::bigint")]
    pub min_norm: BigInt,
    /// Smallest canonical vector attaining it.
    pub argmin: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinNormProfile {
    pub field: String,
    pub n: usize,
    pub x_max: i64,
    pub shells: Vec<ProfileShell>,
    /// Shells with `x >= fit_from` enter the log-log fit.
    pub fit_from: i64,
    /// Least-squares slope of `log min_norm` against `log x` (empirical κ).
    pub fitted_exponent: Option<f64>,
    pub intercept: Option<f64>,
    /// Root-mean-square residual of the fit.
    pub residual: Option<f64>,
    pub partial: bool,
}

impl MinNormProfile {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("X,min_norm,argmin\n");
        for r in &self.shells {
            let a: Vec<String> = r.argmin.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("{},{},{}\n", r.x, r.min_norm, a.join(" ")));
        }
        s
    }
}

pub const DEFAULT_FIT_FROM: i64 = 4;

fn least_squares(pts: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - icpt - slope * p.0).powi(2)).sum();
    Some((slope, icpt, (rss / k).sqrt()))
}

fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        v.to_string().parse::<f64>().unwrap().ln()
    } else {
        let shift = bits - 60;
        let top: BigInt = v >> shift;
        top.to_string().parse::<f64>().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Per-shell exact minima of `|Norm|` for `1 <= x <= x_max`.
pub fn min_norm_profile(
    k: &NumberField,
    n: usize,
    x_max: i64,
    fit_from: i64,
    budget: Option<Duration>,
) -> Result<MinNormProfile> {
    check_n(k, n)?;
    let screen = Screen::new(k, n);
    let t0 = Instant::now();
    let mut shells = Vec::new();
    let mut partial = false;
    for x in 1..=x_max {
        if budget.is_some_and(|b| t0.elapsed() > b) {
            partial = true;
            break;
        }
        // per leading coordinate: the smallest upper bound and every vector
        // whose lower bound does not exceed it
        let parts: Vec<(f64, Vec<(f64, Vec<i64>)>)> = (0..=x)
            .into_par_iter()
            .map(|first| {
                let mut best = f64::INFINITY;
                let mut cand: Vec<(f64, Vec<i64>)> = Vec::new();
                screen.walk_shell(x, first, &mut |coords, lo, hi| {
                    if lo > best {
                        return;
                    }
                    if hi < best {
                        best = hi;
                        if cand.len() > 64 {
                            cand.retain(|c| c.0 <= best);
                        }
                    }
                    cand.push((lo, coords.to_vec()));
                });
                (best, cand)
            })
            .collect();
        let best = parts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let mut min: Option<(BigInt, Vec<i64>)> = None;
        for (_, cand) in parts {
            for (lo, c) in cand {
                if lo > best {
                    continue;
                }
                let v = norm_of_vector(k, &c).abs();
                let better = match &min {
                    None => true,
                    Some((m, a)) => v < *m || (v == *m && c < *a),
                };
                if better {
                    min = Some((v, c));
                }
            }
        }
        let (min_norm, argmin) = min.ok_or_else(|| Error::Certification(format!("no minimum found in shell {x}")))?;
        shells.push(ProfileShell { x, min_norm, argmin });
    }
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .filter(|s| s.x >= fit_from)
        .map(|s| ((s.x as f64).ln(), ln_big(&s.min_norm)))
        .collect();
    let fit = least_squares(&pts);
    Ok(MinNormProfile {
        field: k.label.clone(),
        n,
        x_max,
        shells,
        fit_from,
        fitted_exponent: fit.map(|f| f.0),
        intercept: fit.map(|f| f.1),
        residual: fit.map(|f| f.2),
        partial,
    })
}

/// `|Norm|` lower and upper `f64` bounds through the embeddings, exposed for
/// oracle comparisons.
pub fn norm_enclosure(k: &NumberField, x: &[i64]) -> (f64, f64) {
    let n = x.len().saturating_sub(1);
    let s = Screen::new(k, n);
    let vals: Vec<Complex64> = s
        .pows
        .iter()
        .map(|p| p.iter().zip(x).map(|(w, &c)| w * c as f64).sum())
        .collect();
    let scale: Vec<f64> = s
        .mods
        .iter()
        .map(|m| m.iter().zip(x).map(|(w, &c)| w * c.abs() as f64).sum())
        .collect();
    s.bounds(&vals, &scale)
}

pub fn is_unit_norm(v: &BigInt) -> bool {
    v.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kf() -> NumberField {
        NumberField::new("paper-f", IntPoly::from_i64s(&[1, -3, 5, -5, 5, -3, 1])).unwrap()
    }

    #[test]
    fn norms_of_powers() {
        let k = kf();
        for j in 0..5 {
            let mut e = vec![0i64; 5];
            e[j] = 1;
            assert_eq!(norm_of_vector(&k, &e), BigInt::one());
        }
        // Norm(2) = 2^6, Norm(1 + ξ) = f(-1)
        assert_eq!(norm_of_vector(&k, &[2]), BigInt::from(64));
        assert_eq!(norm_of_vector(&k, &[1, 1]), BigInt::from(23));
    }

    #[test]
    fn shell_walk_is_sign_canonical() {
        let k = kf();
        let s = Screen::new(&k, 2);
        for x in 1..4i64 {
            let mut seen = std::collections::BTreeSet::new();
            for first in 0..=x {
                s.walk_shell(x, first, &mut |c, lo, hi| {
                    assert!(lo <= hi);
                    assert!(seen.insert(c.to_vec()));
                });
            }
            let full = (2 * x + 1).pow(3) - (2 * x - 1).pow(3);
            assert_eq!(seen.len() as i64, full / 2);
        }
    }

    #[test]
    fn small_unit_search() {
        let k = kf();
        let e = enumerate_solutions(&k, 4, &BigInt::one(), SignMode::Both, 1, None).unwrap();
        assert!(e.closed_under_negation());
        for j in 0..5 {
            let mut v = vec![0i64; 5];
            v[j] = 1;
            assert!(e.solutions.iter().any(|s| s.coords == v));
        }
        assert!(e.solutions.iter().all(|s| s.verify(&k)));
    }

    #[test]
    fn quartic_profile_first_shell() {
        let k = NumberField::new("surd(2,3)", IntPoly::from_i64s(&[25, 0, 2, 0, 1])).unwrap();
        let p = min_norm_profile(&k, 2, 3, 1, None).unwrap();
        assert_eq!(p.shells[0].min_norm, BigInt::one());
    }
}
