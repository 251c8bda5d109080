//! Certified complex root isolation.
//!
//! Approximations come from Aberth–Ehrlich iteration (double precision seed,
//! then dyadic arithmetic at the working precision). Each approximation `z`
//! is turned into an inclusion disk of radius `n·|p(z)|/|p'(z)|` using exact
//! evaluation; `n` pairwise disjoint disks for a squarefree polynomial of
//! degree `n` hold exactly one root each.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::ball::CBall;
use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::poly::{real_root_count, IntPoly};

/// 64 decimal digits.
pub const DEFAULT_PRECISION_BITS: u32 = 213;
pub const DEFAULT_CAP_BITS: u32 = 1 << 14;

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    pub precision_bits: u32,
    pub cap_bits: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            cap_bits: DEFAULT_CAP_BITS,
        }
    }
}

/// Disk containing exactly one root of `poly` (a squarefree integer polynomial).
#[derive(Clone, Debug)]
pub struct RootDisk {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
    /// 1-based label, stable for a given input polynomial.
    pub index: usize,
    /// Multiplicity of the root in the polynomial originally passed in.
    pub multiplicity: usize,
    /// The root is certified real (the disk is centred on the real axis and
    /// meets no other disk, so the root equals its own conjugate).
    pub real: bool,
    pub poly: Arc<IntPoly>,
    cap_bits: u32,
}

impl Serialize for RootDisk {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RootDisk", 3)?;
        st.serialize_field("re", &self.re.to_decimal())?;
        st.serialize_field("im", &self.im.to_decimal())?;
        st.serialize_field("radius", &self.radius.to_decimal())?;
        st.end()
    }
}

impl RootDisk {
    pub fn ball(&self) -> CBall {
        CBall::new(self.re.clone(), self.im.clone(), self.radius.clone())
    }

    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// The disk does not meet the real axis.
    pub fn is_nonreal(&self) -> bool {
        self.im.abs() > self.radius
    }

    /// Shrinks the disk to radius at most `new_radius`; the result is contained in `self`.
    pub fn refine(&self, new_radius: &Dyadic) -> Result<RootDisk> {
        if self.radius <= *new_radius {
            return Ok(self.clone());
        }
        let n = self.poly.deg();
        let dp = self.poly.derivative();
        let mut prec = bits_for_radius(new_radius).max(64);
        let mut z = Cx {
            re: self.re.clone(),
            im: self.im.clone(),
        };
        loop {
            if prec > self.cap_bits {
                return Err(Error::PrecisionCap {
                    cap_bits: self.cap_bits,
                    context: format!("refining a root of {}", self.poly),
                });
            }
            for _ in 0..200 {
                let v = horner_cx(&self.poly, &z, prec);
                let d = horner_cx(&dp, &z, prec);
                if d.is_zero() {
                    break;
                }
                let w = v.div(&d, prec);
                z = z.sub(&w).round(prec);
                if w.is_zero() || w.magnitude() < z.magnitude().max(0) - prec as i64 + 4 {
                    break;
                }
            }
            if let Some(r) = inclusion_radius(&self.poly, &dp, n, &z, prec) {
                let cand = CBall::new(z.re.clone(), z.im.clone(), r.clone());
                if r <= *new_radius && cand.within(&self.ball()) {
                    return Ok(RootDisk {
                        re: z.re,
                        im: z.im,
                        radius: r,
                        ..self.clone()
                    });
                }
            }
            prec *= 2;
        }
    }
}

fn bits_for_radius(r: &Dyadic) -> u32 {
    if r.is_zero() {
        return DEFAULT_CAP_BITS;
    }
    (-(r.magnitude()) + 40).max(64) as u32
}

/// Gaussian dyadic used by the iteration (values are rounded to the working precision).
#[derive(Clone, Debug, PartialEq)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Cx {
        Cx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn from_c64(z: Complex64) -> Cx {
        Cx {
            re: Dyadic::from_f64(z.re),
            im: Dyadic::from_f64(z.im),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn magnitude(&self) -> i64 {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => i64::MIN / 4,
            (false, true) => self.re.magnitude(),
            (true, false) => self.im.magnitude(),
            _ => self.re.magnitude().max(self.im.magnitude()),
        }
    }

    fn round(&self, prec: u32) -> Cx {
        // round to an absolute grid relative to the larger component
        let m = self.magnitude();
        if m == i64::MIN / 4 {
            return self.clone();
        }
        let e = m + 1 - prec as i64;
        Cx {
            re: self.re.round_to_exp(e, Round::Nearest),
            im: self.im.round_to_exp(e, Round::Nearest),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    fn mul_exact(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn norm2(&self) -> Dyadic {
        self.re.square().add(&self.im.square())
    }

    fn div(&self, o: &Cx, prec: u32) -> Cx {
        let n = o.norm2();
        let num = Cx {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)),
        };
        Cx {
            re: num.re.div(&n, prec, Round::Nearest),
            im: num.im.div(&n, prec, Round::Nearest),
        }
    }
}

fn horner_cx(p: &IntPoly, z: &Cx, prec: u32) -> Cx {
    let mut acc = Cx::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul_exact(z).round(prec + 8);
        acc.re = acc.re.add(&Dyadic::from_int(c.clone()));
    }
    acc
}

fn horner_exact(p: &IntPoly, z: &Cx) -> Cx {
    let mut acc = Cx::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul_exact(z);
        acc.re = acc.re.add(&Dyadic::from_int(c.clone()));
    }
    acc
}

/// Upper bound on `n·|p(z)| / |p'(z)|`, from exact evaluation at `z`.
fn inclusion_radius(p: &IntPoly, dp: &IntPoly, n: usize, z: &Cx, prec: u32) -> Option<Dyadic> {
    let v = horner_exact(p, z);
    let d = horner_exact(dp, z);
    let dn = d.norm2();
    if dn.is_zero() {
        return None;
    }
    let num = v.norm2().mul_int(&BigInt::from(n * n));
    let q = num.div(&dn, prec.max(32), Round::Up);
    Some(q.sqrt(prec.max(32), Round::Up))
}

/// Double-precision Aberth–Ehrlich iteration; returns approximate roots of a squarefree `p`.
pub fn aberth_f64(p: &IntPoly) -> Option<Vec<Complex64>> {
    let n = p.deg();
    let c: Vec<f64> = p.to_f64s();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let lc = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lc).collect();
    // Fujiwara bound on root moduli
    let bound = (0..n)
        .map(|k| {
            let v = a[k].abs();
            let v = if k == 0 { v / 2.0 } else { v };
            v.powf(1.0 / (n - k) as f64)
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let bound = if bound.is_finite() && bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &ck in a.iter().rev() {
            d = d * x + v;
            v = v * x + ck;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut done = true;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() > 1e-15 * z[k].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(z)
}

/// One dyadic Aberth sweep; returns the largest correction magnitude (log2).
fn aberth_step(p: &IntPoly, dp: &IntPoly, z: &mut [Cx], prec: u32) -> i64 {
    let n = z.len();
    let mut worst = i64::MIN / 4;
    for k in 0..n {
        let v = horner_cx(p, &z[k], prec);
        if v.is_zero() {
            continue;
        }
        let d = horner_cx(dp, &z[k], prec);
        if d.is_zero() {
            // nudge off a critical point
            z[k].re = z[k].re.add(&Dyadic::pow2(z[k].magnitude().max(0) - prec as i64 / 2));
            worst = worst.max(0);
            continue;
        }
        let ratio = v.div(&d, prec);
        let mut s = Cx::zero();
        for j in 0..n {
            if j == k {
                continue;
            }
            let diff = z[k].sub(&z[j]);
            if diff.is_zero() {
                continue;
            }
            let one = Cx {
                re: Dyadic::one(),
                im: Dyadic::zero(),
            };
            s = s.add(&one.div(&diff, prec)).round(prec + 8);
        }
        let one = Cx {
            re: Dyadic::one(),
            im: Dyadic::zero(),
        };
        let den = one.sub(&ratio.mul_exact(&s).round(prec + 8));
        let w = if den.is_zero() { ratio } else { ratio.div(&den, prec) };
        worst = worst.max(w.magnitude() - z[k].magnitude().max(0));
        z[k] = z[k].sub(&w).round(prec);
    }
    worst
}

/// Isolates the roots of a squarefree integer polynomial.
fn isolate_squarefree(p: &IntPoly, target: &Dyadic, cfg: RootConfig) -> Result<Vec<(Cx, Dyadic, bool)>> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let mut prec = cfg.precision_bits.max(bits_for_radius(target).min(cfg.cap_bits));
    let mut z: Vec<Cx> = match aberth_f64(p) {
        Some(s) => s.into_iter().map(Cx::from_c64).collect(),
        None => (0..n)
            .map(|k| Cx::from_c64(Complex64::from_polar(1.0, 0.4 + 6.28 * k as f64 / n as f64)))
            .collect(),
    };
    loop {
        if prec > cfg.cap_bits {
            return Err(Error::PrecisionCap {
                cap_bits: cfg.cap_bits,
                context: format!("isolating the roots of {p}"),
            });
        }
        for _ in 0..400 {
            let worst = aberth_step(p, &dp, &mut z, prec);
            if worst < -(prec as i64) + 12 {
                break;
            }
        }
        if let Some(out) = certify(p, &dp, &z, target, prec) {
            return Ok(out);
        }
        log::debug!("root certification failed at {prec} bits for degree {n}; doubling");
        prec *= 2;
    }
}

fn certify(p: &IntPoly, dp: &IntPoly, z: &[Cx], target: &Dyadic, prec: u32) -> Option<Vec<(Cx, Dyadic, bool)>> {
    let n = p.deg();
    let mut disks = Vec::with_capacity(n);
    for zk in z {
        let r = inclusion_radius(p, dp, n, zk, prec)?;
        if r > *target {
            return None;
        }
        disks.push(CBall::new(zk.re.clone(), zk.im.clone(), r));
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks[i].overlaps(&disks[j]) {
                return None;
            }
        }
    }
    // real roots: a disk that meets the axis is widened to its conjugation-symmetric hull.
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d = &disks[i];
        if d.im.abs() > d.rad {
            out.push((z[i].clone(), d.rad.clone(), false));
            continue;
        }
        let hull = CBall::new(d.re.clone(), Dyadic::zero(), d.rad.add(&d.im.abs()));
        if hull.rad > *target || (0..n).any(|j| j != i && hull.overlaps(&disks[j])) {
            return None;
        }
        out.push((
            Cx {
                re: d.re.clone(),
                im: Dyadic::zero(),
            },
            hull.rad,
            true,
        ));
    }
    Some(out)
}

/// Certified isolating disks of all distinct roots of `p`, each with radius at most `target`.
pub fn certified_roots(p: &IntPoly, target: &Dyadic) -> Result<Vec<RootDisk>> {
    certified_roots_with(p, target, RootConfig::default())
}

pub fn certified_roots_with(p: &IntPoly, target: &Dyadic, cfg: RootConfig) -> Result<Vec<RootDisk>> {
    if p.is_zero() {
        return Err(Error::domain("roots of the zero polynomial"));
    }
    if !target.is_positive() {
        return Err(Error::domain("target radius must be positive"));
    }
    let mut all: Vec<RootDisk> = Vec::new();
    for (s, mult) in p.squarefree_decomposition() {
        if s.deg() == 0 {
            continue;
        }
        let s = Arc::new(s.canonical());
        for (c, r, real) in isolate_squarefree(&s, target, cfg)? {
            all.push(RootDisk {
                re: c.re,
                im: c.im,
                radius: r,
                index: 0,
                multiplicity: mult,
                real,
                poly: s.clone(),
                cap_bits: cfg.cap_bits,
            });
        }
    }
    // disks coming from different squarefree factors must also be separated
    loop {
        let mut clash = None;
        'outer: for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i].ball().overlaps(&all[j].ball()) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        for k in [i, j] {
            let half = all[k].radius.shl(-2);
            all[k] = all[k].refine(&half)?;
        }
    }
    all.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    for (k, d) in all.iter_mut().enumerate() {
        d.index = k + 1;
    }
    let real = all.iter().filter(|d| d.real).count();
    let sturm = real_root_count(p)?;
    if real != sturm {
        return Err(Error::Certification(format!(
            "real-root count mismatch for {p}: disks {real}, Sturm {sturm}"
        )));
    }
    Ok(all)
}

/// Roots of `p` as isolating disks at the default radius `2^-precision`.
pub fn roots_default(p: &IntPoly) -> Result<Vec<RootDisk>> {
    certified_roots(p, &Dyadic::pow2(-(DEFAULT_PRECISION_BITS as i64) / 2))
}

/// Pairs of conjugate roots `(upper, lower)`, sorted by decreasing modulus; ties
/// (moduli closer than the disks can separate) are broken by decreasing real part.
pub fn conjugate_pairing(disks: &[RootDisk]) -> Result<Vec<(usize, usize)>> {
    if disks.iter().any(|d| d.real || !d.is_nonreal()) {
        return Err(Error::domain("pairing requires totally complex input"));
    }
    let mut pairs = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        if !d.im.is_positive() {
            continue;
        }
        let c = d.ball().conj();
        let hits: Vec<usize> = (0..disks.len())
            .filter(|&j| j != i && disks[j].ball().overlaps(&c))
            .collect();
        if hits.len() != 1 {
            return Err(Error::Certification("ambiguous conjugate matching; refine the disks".into()));
        }
        pairs.push((i, hits[0]));
    }
    if 2 * pairs.len() != disks.len() {
        return Err(Error::Certification("conjugate matching is not perfect".into()));
    }
    let key = |i: usize| {
        let d = &disks[i];
        (d.re.square().add(&d.im.square()), d.radius.clone())
    };
    pairs.sort_by(|&(a, _), &(b, _)| {
        let (ma, ra) = key(a);
        let (mb, rb) = key(b);
        // |a|^2 and |b|^2 are separated if their gap exceeds the worst-case slack
        let slack = {
            let s = disks[a].re.abs().add(&disks[a].im.abs()).add(&disks[b].re.abs()).add(&disks[b].im.abs());
            s.add(&Dyadic::one()).mul(&ra.add(&rb)).shl(2)
        };
        if ma.sub(&mb).abs() > slack {
            mb.cmp(&ma)
        } else {
            disks[b].re.cmp(&disks[a].re).then(disks[b].im.cmp(&disks[a].im))
        }
    });
    Ok(pairs)
}

/// Re-isolates `p` until all disks have radius below `r`; used when a caller
/// needs tighter enclosures than the defaults.
pub fn refine_all(disks: &[RootDisk], r: &Dyadic) -> Result<Vec<RootDisk>> {
    disks.iter().map(|d| d.refine(r)).collect()
}

pub fn vieta_sum(disks: &[RootDisk], prec: u32) -> CBall {
    disks
        .iter()
        .fold(CBall::zero(), |acc, d| acc.add(&d.ball().mul_int(&BigInt::from(d.multiplicity)), prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn tiny() -> Dyadic {
        Dyadic::pow2(-66)
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let d = certified_roots(&p(&[1, 0, 1]), &tiny()).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d[0].ball().contains_point(&Dyadic::zero(), &Dyadic::from_i64(-1)));
        assert!(d[1].ball().contains_point(&Dyadic::zero(), &Dyadic::one()));
        assert!(d.iter().all(|x| x.radius <= tiny()));
        let pairs = conjugate_pairing(&d).unwrap();
        assert_eq!(pairs, vec![(1, 0)]);
    }

    #[test]
    fn sextic_is_three_pairs() {
        let f = p(&[1, -3, 5, -5, 5, -3, 1]);
        let d = certified_roots(&f, &tiny()).unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.iter().all(|x| x.is_nonreal()));
        assert_eq!(conjugate_pairing(&d).unwrap().len(), 3);
    }

    #[test]
    fn multiplicities() {
        let q = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let d = certified_roots(&q, &tiny()).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d[0].real && d[1].real);
        assert!(d[0].ball().contains_point(&Dyadic::from_i64(-2), &Dyadic::zero()));
        assert_eq!(d[0].multiplicity, 1);
        assert_eq!(d[1].multiplicity, 2);
        assert!(conjugate_pairing(&d).is_err());
    }

    #[test]
    fn eighth_roots_pair_up() {
        let d = certified_roots(&p(&[1, 0, 0, 0, 1]), &tiny()).unwrap();
        let pairs = conjugate_pairing(&d).unwrap();
        assert_eq!(pairs.len(), 2);
        for (a, b) in pairs {
            assert!(d[a].ball().conj().overlaps(&d[b].ball()));
            assert!(d[a].im.is_positive());
        }
    }

    #[test]
    fn refinement_is_nested() {
        let d = certified_roots(&p(&[1, 0, 1]), &Dyadic::pow2(-17)).unwrap();
        let r1 = d[1].refine(&Dyadic::pow2(-166)).unwrap();
        assert!(r1.ball().within(&d[1].ball()));
        let r2 = r1.refine(&Dyadic::pow2(-400)).unwrap();
        assert!(r2.ball().within(&r1.ball()));
        assert!(r2.radius <= Dyadic::pow2(-400));
        assert!(r2.ball().contains_point(&Dyadic::zero(), &Dyadic::one()));
    }

    #[test]
    fn vieta_sum_of_sextic() {
        let f = p(&[1, -3, 5, -5, 5, -3, 1]);
        let d = refine_all(&certified_roots(&f, &tiny()).unwrap(), &Dyadic::pow2(-333)).unwrap();
        let s = vieta_sum(&d, 400);
        assert!(s.contains_point(&Dyadic::from_i64(3), &Dyadic::zero()));
        assert!(s.rad <= Dyadic::pow2(-320));
    }

    #[test]
    fn serializes_as_decimal_strings() {
        let d = certified_roots(&p(&[-1, 2]), &tiny()).unwrap();
        let v = serde_json::to_value(&d[0]).unwrap();
        assert_eq!(v["re"], "0.5");
        assert_eq!(v["im"], "0");
    }

    #[test]
    fn clustered_roots() {
        // (1000x - 1)(1000x - 1 - 1e-6 scale) style cluster: x^2 - 2x + (1 - 10^-12) scaled
        let q = IntPoly::new(vec![
            BigInt::from(10).pow(12) - 1,
            -BigInt::from(2) * BigInt::from(10).pow(12),
            BigInt::from(10).pow(12),
        ]);
        let d = certified_roots(&q, &tiny()).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|x| x.real));
    }
}
