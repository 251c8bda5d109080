//! Brute-force estimators for `w_n(ξ)` and `w_n*(ξ)` over height shells.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pell::exponent_of;
use crate::algnum::AlgebraicNumber;
use crate::error::Result;
use crate::numeric::ball::eval_int_poly;
use crate::numeric::roots::aberth_f64;
use crate::numeric::Interval;
use crate::poly::{is_irreducible, IntPoly};

const PREC: u32 = 192;
/// Candidates per shell kept for exact follow-up on the `w*` side.
const TOP_K: usize = 8;

/// One height shell `H(P) = h`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShellRow {
    pub h: u32,
    /// Minimal `|P(ξ)|` over nonzero `P` with `H(P) = h`, `[lo, hi]`.
    pub min_poly_value: Option<[f64; 2]>,
    pub best_poly: Option<Vec<i64>>,
    /// Minimal `|ξ − α|` over `α` with minimal polynomial of height `h`, `[lo, hi]`.
    pub min_distance: Option<[f64; 2]>,
    pub best_alpha_minpoly: Option<Vec<i64>>,
    /// `−log min|P(ξ)| / log h`.
    pub w_shell: Option<f64>,
    /// `−log min|ξ−α| / log h − 1`.
    pub wstar_shell: Option<f64>,
    pub w_running: Option<f64>,
    pub wstar_running: Option<f64>,
    /// Lower end of `min|ξ − α| · h^{d/2}`.
    pub liouville: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExponentTable {
    pub n: usize,
    pub degree: usize,
    pub hmax: u32,
    pub rows: Vec<ShellRow>,
    /// Budget ran out before `hmax`.
    pub partial: bool,
    /// `min_h min|ξ−α| · h^{d/2}` (lower end of the certified enclosure).
    pub liouville_floor: Option<f64>,
    /// `w*` running estimate never exceeds the `w` one.
    pub wstar_le_w: bool,
    /// Heights where the running `w*` is above the running `w`.
    pub wstar_excess: Vec<u32>,
    pub warnings: Vec<String>,
}

impl ExponentTable {
    pub fn to_csv(&self) -> String {
        let f = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.12e}"));
        let mut out = String::from("H,min_poly_value,min_distance,w_running,wstar_running\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.h,
                f(r.min_poly_value.map(|v| v[1])),
                f(r.min_distance.map(|v| v[1])),
                f(r.w_running),
                f(r.wstar_running)
            ));
        }
        out
    }

    pub fn w_final(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.w_running)
    }

    pub fn wstar_final(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.wstar_running)
    }
}

/// Calls `f` on every coefficient vector (constant term first) of degree at most
/// `n` with max-norm exactly `h` and positive leading coefficient.
pub fn for_each_in_shell(n: usize, h: i64, mut f: impl FnMut(&[i64])) {
    let len = n + 1;
    let mut c = vec![0i64; len];
    // j = first index with |c_j| = h
    for j in 0..len {
        let lo: Vec<i64> = (0..len).map(|i| if i < j { 1 - h } else { -h }).collect();
        let hi: Vec<i64> = (0..len).map(|i| if i < j { h - 1 } else { h }).collect();
        c.copy_from_slice(&lo);
        loop {
            if c[j].abs() == h {
                if let Some(top) = c.iter().rev().find(|&&x| x != 0) {
                    if *top > 0 {
                        f(&c);
                    }
                }
            }
            // odometer; c_j only takes ±h
            let mut i = 0;
            loop {
                if i == len {
                    break;
                }
                if i == j {
                    if c[j] == -h {
                        c[j] = h;
                        break;
                    }
                    c[j] = -h;
                    i += 1;
                    continue;
                }
                if c[i] < hi[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = lo[i];
                i += 1;
            }
            if i == len {
                break;
            }
        }
    }
}

fn horner(c: &[i64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k as f64)
}

fn content(c: &[i64]) -> i64 {
    c.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn degree(c: &[i64]) -> usize {
    c.iter().rposition(|&x| x != 0).unwrap_or(0)
}

/// Approximate roots of the polynomial with coefficients `c`.
fn approx_roots(c: &[i64]) -> Vec<Complex64> {
    match degree(c) {
        0 => Vec::new(),
        1 => vec![Complex64::new(-(c[0] as f64) / c[1] as f64, 0.0)],
        2 => {
            let (a, b, cc) = (c[2] as f64, c[1] as f64, c[0] as f64);
            let disc = Complex64::new(b * b - 4.0 * a * cc, 0.0).sqrt();
            // stable pair
            let q = if b >= 0.0 { -(b + disc) / 2.0 } else { -(b - disc) / 2.0 };
            let r1 = q / a;
            let r2 = if q.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { cc / q };
            vec![r1, r2]
        }
        _ => aberth_f64(&IntPoly::from_i64s(c)).unwrap_or_default(),
    }
}

/// Irreducibility over `Q` of a primitive polynomial; exact.
fn irreducible(c: &[i64]) -> bool {
    match degree(c) {
        0 => false,
        1 => true,
        2 => {
            let disc = c[1] as i128 * c[1] as i128 - 4 * c[2] as i128 * c[0] as i128;
            disc < 0 || {
                let s = (disc as f64).sqrt() as i128;
                !(s - 1..=s + 1).any(|t| t >= 0 && t * t == disc)
            }
        }
        _ => is_irreducible(&IntPoly::from_i64s(c)).unwrap_or(false),
    }
}

struct ShellScan {
    /// (approximate |P(ξ)|, coefficients), smallest first
    values: Vec<(f64, Vec<i64>)>,
    dists: Vec<(f64, Vec<i64>)>,
}

fn push_top(v: &mut Vec<(f64, Vec<i64>)>, x: f64, c: &[i64]) {
    if v.len() == TOP_K && x >= v[TOP_K - 1].0 {
        return;
    }
    let pos = v.partition_point(|(y, _)| *y <= x);
    v.insert(pos, (x, c.to_vec()));
    v.truncate(TOP_K);
}

fn scan_shell(z: Complex64, n: usize, h: i64, exact_deg_le_n: bool) -> ShellScan {
    let mut s = ShellScan {
        values: Vec::new(),
        dists: Vec::new(),
    };
    for_each_in_shell(n, h, |c| {
        let v = horner(c, z).norm();
        if !(exact_deg_le_n && v < 1e-8) {
            push_top(&mut s.values, v, c);
        }
        if degree(c) == 0 || content(c) != 1 {
            return;
        }
        if degree(c) <= 2 && !irreducible(c) {
            return;
        }
        let d = approx_roots(c).into_iter().map(|r| (r - z).norm()).fold(f64::INFINITY, f64::min);
        if d.is_finite() {
            push_top(&mut s.dists, d, c);
        }
    });
    s
}

fn pair(i: &Interval) -> [f64; 2] {
    [i.lo.to_f64(), i.hi.to_f64()]
}

fn shell_row(xi: &AlgebraicNumber, n: usize, h: u32, d: usize) -> Result<ShellRow> {
    let z = xi.approx();
    let scan = scan_shell(z, n, h as i64, xi.degree() <= n);
    let zb = xi.ball(PREC)?;
    let hb = BigInt::from(h);

    // certify every candidate close to the floating-point minimum; keep the smallest
    let mut best_val: Option<(Interval, Vec<i64>)> = None;
    if let Some(&(v0, _)) = scan.values.first() {
        for (v, c) in &scan.values {
            if *v > v0 * (1.0 + 1e-6) + 1e-300 {
                break;
            }
            let p = IntPoly::from_i64s(c);
            let iv = eval_int_poly(&p, &zb, PREC + 32).abs(PREC + 32);
            if iv.contains_zero() {
                continue;
            }
            if best_val.as_ref().is_none_or(|(b, _)| iv.mid() < b.mid()) {
                best_val = Some((iv, c.clone()));
            }
        }
    }
    let mut best_dist: Option<(Interval, Vec<i64>)> = None;
    let mut floor_v0 = None;
    for (v, c) in &scan.dists {
        if let Some(v0) = floor_v0 {
            if *v > v0 * (1.0 + 1e-6) + 1e-300 {
                break;
            }
        }
        if degree(c) > 2 && !irreducible(c) {
            continue;
        }
        floor_v0.get_or_insert(*v);
        let p = IntPoly::from_i64s(c);
        let roots = AlgebraicNumber::roots_of(&p)?;
        for a in roots {
            let iv = zb.sub(&a.ball(PREC)?, PREC + 32).abs(PREC + 32);
            if best_dist.as_ref().is_none_or(|(b, _)| iv.mid() < b.mid()) {
                best_dist = Some((iv, c.clone()));
            }
        }
    }
    let w_shell = match &best_val {
        Some((iv, _)) => exponent_of(iv, &hb, PREC)?.map(|e| e.mid().to_f64()),
        None => None,
    };
    let wstar_shell = match &best_dist {
        Some((iv, _)) => exponent_of(iv, &hb, PREC)?.map(|e| e.mid().to_f64() - 1.0),
        None => None,
    };
    let liouville = best_dist.as_ref().map(|(iv, _)| {
        // h^{d/2} = sqrt(h^d)
        let hd = Interval::from_int(&num_traits::pow(hb.clone(), d));
        let s = hd.sqrt(PREC).expect("positive");
        iv.mul(&s, PREC).lo.to_f64()
    });
    Ok(ShellRow {
        h,
        min_poly_value: best_val.as_ref().map(|(iv, _)| pair(iv)),
        best_poly: best_val.map(|(_, c)| c),
        min_distance: best_dist.as_ref().map(|(iv, _)| pair(iv)),
        best_alpha_minpoly: best_dist.map(|(_, c)| c),
        w_shell,
        wstar_shell,
        w_running: None,
        wstar_running: None,
        liouville,
    })
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Shells `1..=hmax` (continuing after the rows of `resume` if given); the
/// budget is checked before each shell starts.
pub fn estimate_exponents(
    xi: &AlgebraicNumber,
    n: usize,
    hmax: u32,
    budget: Option<Duration>,
    resume: Option<ExponentTable>,
) -> Result<ExponentTable> {
    let d = xi.degree();
    let mut warnings = Vec::new();
    if n + 2 > d {
        warnings.push(format!("n = {n} exceeds d - 2 = {}", d as i64 - 2));
    }
    let mut rows = resume.map(|t| t.rows).unwrap_or_default();
    rows.retain(|r| r.h <= hmax);
    let start = rows.last().map_or(1, |r| r.h + 1);
    let t0 = Instant::now();
    let fresh: Vec<Option<Result<ShellRow>>> = (start..=hmax)
        .into_par_iter()
        .map(|h| {
            if budget.is_some_and(|b| t0.elapsed() > b) {
                return None;
            }
            Some(shell_row(xi, n, h, d))
        })
        .collect();
    let mut partial = false;
    for r in fresh {
        match r {
            Some(r) => rows.push(r?),
            None => {
                partial = true;
                break;
            }
        }
    }
    let (mut w, mut ws) = (None, None);
    let mut excess = Vec::new();
    let mut floor: Option<f64> = None;
    for r in rows.iter_mut() {
        w = max_opt(w, r.w_shell);
        ws = max_opt(ws, r.wstar_shell);
        r.w_running = w;
        r.wstar_running = ws;
        if let (Some(a), Some(b)) = (ws, w) {
            if a > b {
                excess.push(r.h);
            }
        }
        if let Some(l) = r.liouville {
            floor = Some(floor.map_or(l, |f: f64| f.min(l)));
        }
    }
    if partial {
        warnings.push("budget exhausted; table is partial".into());
    }
    if !excess.is_empty() {
        // the asymptotic inequality carries a constant; small shells can break it
        warnings.push(format!("running w* exceeds running w at H = {excess:?}"));
    }
    Ok(ExponentTable {
        n,
        degree: d,
        hmax,
        rows,
        partial,
        liouville_floor: floor,
        wstar_le_w: excess.is_empty(),
        wstar_excess: excess,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_counts() {
        // vectors of max-norm h in dimension n+1, up to sign: ((2h+1)^{n+1} - (2h-1)^{n+1}) / 2
        for n in 0..3 {
            for h in 1..5i64 {
                let mut k = 0u64;
                let mut seen = std::collections::BTreeSet::new();
                for_each_in_shell(n, h, |c| {
                    k += 1;
                    assert!(seen.insert(c.to_vec()));
                    let neg: Vec<i64> = c.iter().map(|x| -x).collect();
                    assert!(!seen.contains(&neg) || neg == c);
                });
                let full = (2 * h as u64 + 1).pow(n as u32 + 1) - (2 * h as u64 - 1).pow(n as u32 + 1);
                assert_eq!(k, full / 2);
            }
        }
    }

    #[test]
    fn quadratic_pell_surd_best_record() {
        let xi = super::super::pell::pell_xi(2, 3).unwrap();
        let t = estimate_exponents(&xi, 2, 10, None, None).unwrap();
        let row5 = &t.rows[4];
        assert_eq!(row5.best_alpha_minpoly.as_deref(), Some(&[5, -3, 1][..]));
        assert!(t.liouville_floor.unwrap() > 0.0);
        assert_eq!(t.wstar_le_w, t.wstar_excess.is_empty());
    }
}
