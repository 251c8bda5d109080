//! Hypothesis checks for the approximation theorems and the `w_n*` classifier.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algnum::{
    express_in_field, identify_root, modulus_product, real_part_sum, AlgebraicNumber, ExprBudget, Expressed,
    FieldElement, NumberField,
};
use crate::error::{Error, Result};
use crate::linalg::{rank, right_kernel, Scalar};
use crate::numeric::CBall;
use crate::poly::{affine_image_poly, is_irreducible, modp, real_root_count, Combinations, IntPoly, RatPoly};

pub fn is_totally_complex(f: &IntPoly) -> Result<bool> {
    if !is_irreducible(f)? {
        return Err(Error::domain(format!("{f} is reducible")));
    }
    Ok(real_root_count(f)? == 0)
}

/// `lc^{d-1} f(X / lc)`: monic, with roots `lc · ξ_i`.
pub fn monic_generator(f: &IntPoly) -> IntPoly {
    let a = f.leading();
    let d = f.deg();
    let mut c: Vec<BigInt> = (0..d).map(|k| f.coeff(k) * num_traits::pow(a.clone(), d - 1 - k)).collect();
    c.push(BigInt::one());
    IntPoly::new(c)
}

#[derive(Clone, Debug)]
pub enum GaloisVerdict {
    /// Automorphism table in embedding order.
    Galois(Vec<RatPoly>),
    /// Unramified prime whose factorization pattern is not uniform.
    NotGalois { prime: u64, pattern: Vec<usize> },
    Unknown(String),
}

impl GaloisVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            GaloisVerdict::Galois(_) => Some(true),
            GaloisVerdict::NotGalois { .. } => Some(false),
            GaloisVerdict::Unknown(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GaloisVerdict::Galois(_) => "galois",
            GaloisVerdict::NotGalois { .. } => "not-galois",
            GaloisVerdict::Unknown(_) => "unknown (budget)",
        }
    }
}

/// Looks for a prime `p ∤ lc · disc` where `f` splits into factors of unequal degree.
pub fn non_galois_witness(f: &IntPoly, primes: usize) -> Option<(u64, Vec<usize>)> {
    modp::primes_from(3).take(primes).find_map(|p| {
        let degs = modp::factor_degrees(f, p)?;
        (degs.first() != degs.last()).then_some((p, degs))
    })
}

/// Galois test for an irreducible `f` (a non-monic `f` is replaced by its monic
/// generator, so the table refers to the root `lc · ξ`).
pub fn is_galois(f: &IntPoly) -> Result<GaloisVerdict> {
    let k = NumberField::new("", monic_generator(f))?;
    is_galois_field(&k, ExprBudget::default())
}

pub fn is_galois_field(k: &NumberField, budget: ExprBudget) -> Result<GaloisVerdict> {
    if let Some(t) = k.galois_table() {
        return Ok(GaloisVerdict::Galois(t.to_vec()));
    }
    if let Some((prime, pattern)) = non_galois_witness(k.poly(), 200) {
        return Ok(GaloisVerdict::NotGalois { prime, pattern });
    }
    let mut table = vec![RatPoly::x()];
    for i in 1..k.degree() {
        match express_in_field(k.embedding(i), k, budget)? {
            Expressed::Found(g) => table.push(g),
            _ => return Ok(GaloisVerdict::Unknown(format!("root {} not expressed within budget", i + 1))),
        }
    }
    let k2 = k.clone().with_galois_table(table)?;
    Ok(GaloisVerdict::Galois(k2.galois_table().unwrap().to_vec()))
}

/// Builds `K` and attaches its automorphism table when the field is Galois.
pub fn galois_closure_check(label: &str, poly: IntPoly) -> Result<(NumberField, GaloisVerdict)> {
    let k = NumberField::new(label, poly)?;
    let v = is_galois_field(&k, ExprBudget::default())?;
    let k = match &v {
        GaloisVerdict::Galois(t) => k.with_galois_table(t.clone())?,
        _ => k,
    };
    Ok((k, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dependence {
    Independent,
    Dependent,
}

/// Verdict on the linear independence of `1, ξ+ξ̄, ξ·ξ̄` over `Q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependenceVerdict {
    pub status: Dependence,
    /// Primitive `(a, b, c)` with `a + b β₁ + c β₂ = 0`.
    #[serde(serialize_with = "ser_relation")]
    pub relation: Option<Vec<BigInt>>,
    pub certificate: String,
}

fn ser_relation<S: Serializer>(r: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => crate::serde_util::serialize_ints(v, s),
        None => s.serialize_none(),
    }
}

impl IndependenceVerdict {
    pub fn is_dependent(&self) -> bool {
        self.status == Dependence::Dependent
    }

    fn independent(certificate: impl Into<String>) -> Self {
        IndependenceVerdict {
            status: Dependence::Independent,
            relation: None,
            certificate: certificate.into(),
        }
    }

    fn dependent(rel: [BigRational; 3], certificate: impl Into<String>) -> Self {
        IndependenceVerdict {
            status: Dependence::Dependent,
            relation: Some(normalize_relation(&rel)),
            certificate: certificate.into(),
        }
    }

    /// Evaluates the relation on enclosures of `β₁, β₂`.
    pub fn relation_encloses_zero(&self, beta1: &CBall, beta2: &CBall) -> bool {
        let Some(r) = &self.relation else { return false };
        let prec = 256;
        let v = CBall::from_int(&r[0])
            .add(&beta1.mul_int(&r[1]), prec)
            .add(&beta2.mul_int(&r[2]), prec);
        v.contains_zero()
    }
}

/// Clears denominators, divides by the content, and makes the first nonzero of
/// `(b, c)` positive.
pub fn normalize_relation(rel: &[BigRational; 3]) -> Vec<BigInt> {
    let l = rel.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut v: Vec<BigInt> = rel.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        v.iter_mut().for_each(|x| *x /= &g);
    }
    let lead = if !v[1].is_zero() { &v[1] } else { &v[2] };
    if lead.is_negative() {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

fn rational_root(p: &IntPoly) -> BigRational {
    BigRational::new(-p.coeff(0), p.coeff(1))
}

/// Mean of the roots and the central power sums `Σ (α_i − μ)^k`, `k = 0..=deg`.
fn central_power_sums(p: &IntPoly) -> (BigRational, Vec<BigRational>) {
    let e = p.deg();
    let q = p.to_rat().monic();
    let mu = -q.coeff(e - 1) / BigRational::from_integer(BigInt::from(e));
    let s = q.compose(&RatPoly::new(vec![mu.clone(), BigRational::one()]));
    // elementary symmetric functions of the shifted roots
    let el: Vec<BigRational> = (0..=e)
        .map(|i| {
            let c = s.coeff(e - i);
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let mut pk = vec![BigRational::from_integer(BigInt::from(e))];
    for k in 1..=e {
        let mut acc = BigRational::zero();
        for i in 1..k {
            let t = &el[i] * &pk[k - i];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let t = &el[k] * BigRational::from_integer(BigInt::from(k));
        if k % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
        pk.push(acc);
    }
    (mu, pk)
}

/// Rational `k`-th roots of `q` (both signs when `k` is even).
fn rational_kth_roots(q: &BigRational, k: u32) -> Vec<BigRational> {
    if Zero::is_zero(q) {
        return vec![BigRational::zero()];
    }
    if q.is_negative() && k % 2 == 0 {
        return Vec::new();
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == n.abs()).then_some(r)
    };
    let (Some(a), Some(b)) = (root(q.numer()), root(q.denom())) else {
        return Vec::new();
    };
    let r = BigRational::new(a, b);
    if k % 2 == 0 {
        vec![r.clone(), -r]
    } else if q.is_negative() {
        vec![-r]
    } else {
        vec![r]
    }
}

/// Certified verdict for `1, β₁ = ξ+ξ̄, β₂ = ξ·ξ̄` from their exact minimal
/// polynomials. A relation `a + bβ₁ + cβ₂ = 0` with `b, c ≠ 0` forces
/// `Q(β₁) = Q(β₂)` and an affine bijection between the conjugates, which is
/// searched for exactly through central power sums.
pub fn independence_triple(xi: &AlgebraicNumber) -> Result<IndependenceVerdict> {
    if xi.is_real() {
        return Err(Error::domain("independence_triple needs a non-real number"));
    }
    let b1 = real_part_sum(xi)?;
    let b2 = modulus_product(xi)?;
    independence_from_betas(&b1, &b2)
}

pub fn independence_from_betas(b1: &AlgebraicNumber, b2: &AlgebraicNumber) -> Result<IndependenceVerdict> {
    let (m1, m2) = (b1.minpoly(), b2.minpoly());
    let one = BigRational::one;
    let zero = BigRational::zero;
    if m2.deg() == 1 {
        let q = rational_root(m2);
        return Ok(IndependenceVerdict::dependent(
            [-q, zero(), one()],
            format!("xi*conj(xi) has minimal polynomial {m2}"),
        ));
    }
    if m1.deg() == 1 {
        let q = rational_root(m1);
        return Ok(IndependenceVerdict::dependent(
            [-q, one(), zero()],
            format!("xi+conj(xi) has minimal polynomial {m1}"),
        ));
    }
    if m1.deg() != m2.deg() {
        return Ok(IndependenceVerdict::independent(format!(
            "deg(xi+conj(xi)) = {} differs from deg(xi*conj(xi)) = {}",
            m1.deg(),
            m2.deg()
        )));
    }
    let (mu1, c1) = central_power_sums(m1);
    let (mu2, c2) = central_power_sums(m2);
    let k = (2..c1.len())
        .find(|&k| !Zero::is_zero(&c1[k]))
        .expect("irreducible polynomial of degree > 1 has distinct roots");
    let ratio = &c2[k] / &c1[k];
    for b in rational_kth_roots(&ratio, k as u32) {
        if Zero::is_zero(&b) {
            continue;
        }
        let a = &mu2 - &b * &mu1;
        if affine_image_poly(m1, &a, &b).canonical() != m2.canonical() {
            continue;
        }
        if affine_maps_root(&a, &b, b1, b2)? {
            return Ok(IndependenceVerdict::dependent(
                [-a.clone(), -b.clone(), one()],
                format!("xi*conj(xi) = {a} + ({b})(xi+conj(xi)): minimal polynomials match and the root disks agree"),
            ));
        }
    }
    Ok(IndependenceVerdict::independent(format!(
        "no affine map a + b*beta1 carries the conjugates of beta1 onto those of beta2 (central power sum {k})"
    )))
}

/// Decides whether `a + b·β₁` is the root of `m₂` isolated by `β₂`'s disk,
/// given that it is some root of `m₂`.
fn affine_maps_root(a: &BigRational, b: &BigRational, b1: &AlgebraicNumber, b2: &AlgebraicNumber) -> Result<bool> {
    let disk = b2.disk().ball();
    let mut bits = 64;
    while bits <= 8192 {
        let prec = bits + 32;
        let v = CBall::from_rational(a, prec).add(&b1.ball(bits)?.mul(&CBall::from_rational(b, prec), prec), prec);
        if v.within(&disk) {
            return Ok(true);
        }
        if !v.overlaps(&disk) {
            return Ok(false);
        }
        bits *= 2;
    }
    Err(Error::PrecisionCap {
        cap_bits: 8192,
        context: "matching an affine image against a root disk".into(),
    })
}

/// Exact independence test for `σ_j(u)` in a Galois field: `conj(σ_j u)` is
/// `σ_{j'}(u)` with `j'` the paired embedding, so `β₁, β₂` are the field
/// elements `u∘g_j + u∘g_j'` and `(u∘g_j)(u∘g_j')`; the verdict is the rank of
/// their coordinate vectors together with `1`.
pub fn independence_in_field(k: &NumberField, u: &FieldElement, j: usize) -> Result<IndependenceVerdict> {
    let table = k
        .galois_table()
        .ok_or_else(|| Error::domain("field route needs an automorphism table"))?;
    let jc = k.conj_index(j);
    if jc == j {
        return Err(Error::domain("independence needs a non-real embedding"));
    }
    let uj = u.apply(&table[j]);
    let uc = u.apply(&table[jc]);
    let b1 = Scalar::add(&uj, &uc);
    let b2 = Scalar::mul(&uj, &uc);
    let cols = [u.one_like().coords(), b1.coords(), b2.coords()];
    let rows: Vec<Vec<BigRational>> = (0..k.degree()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let r = rank(&rows);
    if r == 3 {
        return Ok(IndependenceVerdict::independent("coordinate vectors of 1, beta1, beta2 have rank 3"));
    }
    if b2.is_rational() {
        let q = b2.coords()[0].clone();
        return Ok(IndependenceVerdict::dependent(
            [-q, BigRational::zero(), BigRational::one()],
            format!("beta2 is rational (rank {r})"),
        ));
    }
    let ker = right_kernel(&rows, 3, &BigRational::zero());
    let v = &ker[0];
    Ok(IndependenceVerdict::dependent(
        [v[0].clone(), v[1].clone(), v[2].clone()],
        format!("coordinate vectors of 1, beta1, beta2 have rank {r}"),
    ))
}

/// `[Q(ξ) ∩ R : Q]` for the chosen embedding, with an exactness flag.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealSubfield {
    /// Certified lower bound (the degree itself when `exact`).
    pub degree: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: String,
}

/// Real subfield degree of `Q(σ_w ξ)`; `K` must be totally complex.
pub fn real_subfield_degree(k: &NumberField, w: usize) -> Result<RealSubfield> {
    if !k.is_totally_complex() {
        return Err(Error::domain("real_subfield_degree needs a totally complex field"));
    }
    if let Some(table) = k.galois_table() {
        let d = k.degree();
        let wc = k.conj_index(w);
        // kernel of u ↦ u∘g_w − u∘g_w' on the power basis
        let xi = k.xi();
        let cols: Vec<Vec<BigRational>> = (0..d)
            .map(|m| {
                let xm = xi.pow(m as u32);
                Scalar::sub(&xm.apply(&table[w]), &xm.apply(&table[wc])).coords()
            })
            .collect();
        let rows: Vec<Vec<BigRational>> = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let dim = d - rank(&rows);
        if 2 * dim != d {
            return Err(Error::Certification(format!(
                "fixed field of complex conjugation has dimension {dim}, expected {}",
                d / 2
            )));
        }
        return Ok(RealSubfield {
            degree: dim,
            upper: dim,
            exact: true,
            method: "kernel of conjugation on the power basis".into(),
        });
    }
    real_subfield_by_blocks(k, w)
}

/// Elementary-symmetric combination `Σ_k t^{k-1} e_k(S)` of a set of roots.
fn block_value(roots: &[CBall], t: i64, prec: u32) -> CBall {
    // coefficients of Π (1 + z Y)
    let mut e = vec![CBall::one()];
    for z in roots {
        let mut next = e.clone();
        next.push(CBall::zero());
        for i in 0..e.len() {
            next[i + 1] = next[i + 1].add(&e[i].mul(z, prec), prec);
        }
        e = next;
    }
    let mut acc = CBall::zero();
    let mut tp = BigInt::one();
    for ek in e.iter().skip(1) {
        acc = acc.add(&ek.mul_int(&tp), prec);
        tp *= t;
    }
    acc
}

/// `Π_S (X − s_t(S))` over all `size`-subsets of the roots of a monic `f`;
/// integral, recovered by rounding certified enclosures.
fn block_poly(k: &NumberField, size: usize, t: i64) -> Result<IntPoly> {
    let d = k.degree();
    let mut bits = 128u32;
    while bits <= 8192 {
        let prec = bits + 32;
        let roots: Vec<CBall> = (0..d).map(|i| k.embedding(i).ball(bits)).collect::<Result<_>>()?;
        let mut coeffs = vec![CBall::one()];
        for s in Combinations::new(d, size) {
            let sub: Vec<CBall> = s.iter().map(|&i| roots[i].clone()).collect();
            let v = block_value(&sub, t, prec).neg();
            let mut next = vec![CBall::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c, prec);
                next[i] = next[i].add(&c.mul(&v, prec), prec);
            }
            coeffs = next;
        }
        let ints: Option<Vec<BigInt>> = coeffs
            .iter()
            .map(|c| {
                if c.im_interval().contains_zero() {
                    c.re_interval().unique_integer()
                } else {
                    None
                }
            })
            .collect();
        if let Some(ints) = ints {
            return Ok(IntPoly::new(ints));
        }
        bits *= 2;
    }
    Err(Error::PrecisionCap {
        cap_bits: 8192,
        context: "rounding a block polynomial".into(),
    })
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|e| n % e == 0).collect()
}

/// Non-Galois route. If `L = Q(γ) ∩ R` has degree `e`, the conjugates of `γ`
/// over `L` form a block `B ∋ γ, γ̄` of size `d/e` whose symmetric functions lie
/// in `L`; a real value `s_t(B)` of degree `> e` (or a non-real one) rules `B` out.
/// Lower bounds come from expressing surviving `s_t(B)` in `Q(γ)`.
fn real_subfield_by_blocks(k: &NumberField, w: usize) -> Result<RealSubfield> {
    let d = k.degree();
    let wc = k.conj_index(w);
    let kw = k.with_generator(w)?;
    let others: Vec<usize> = (0..d).filter(|&i| i != w && i != wc).collect();
    for e in divisors(d).into_iter().rev().filter(|&e| e >= 2 && 2 * e <= d) {
        let size = d / e;
        let mut survivors: Vec<AlgebraicNumber> = Vec::new();
        for rest in Combinations::new(others.len(), size - 2) {
            let block: Vec<usize> = [w, wc].into_iter().chain(rest.iter().map(|&i| others[i])).collect();
            let mut kept = Vec::new();
            let mut ruled_out = false;
            for t in 1..=3 {
                let p = block_poly(k, size, t)?;
                let v = identify_root(&p, |bits| {
                    let roots: Vec<CBall> = block.iter().map(|&i| k.embedding(i).ball(bits + 16)).collect::<Result<_>>()?;
                    Ok(block_value(&roots, t, bits + 32))
                })?;
                if v.degree() > e || !v.is_real() {
                    ruled_out = true;
                    break;
                }
                kept.push(v);
            }
            if !ruled_out {
                survivors.extend(kept);
            }
        }
        if survivors.is_empty() {
            continue;
        }
        let mut lower = 1;
        for s in &survivors {
            if s.degree() <= lower {
                continue;
            }
            if let Expressed::Found(_) = express_in_field(s, &kw, ExprBudget::default())? {
                lower = s.degree();
            }
            if lower == e {
                break;
            }
        }
        return Ok(RealSubfield {
            degree: lower,
            upper: e,
            exact: lower == e,
            method: if lower == e {
                format!("blocks of size > {size} ruled out; real element of degree {e} expressed in the field")
            } else {
                "unknown-exact".into()
            },
        });
    }
    Ok(RealSubfield {
        degree: 1,
        upper: 1,
        exact: true,
        method: "every block containing xi and conj(xi) ruled out".into(),
    })
}

/// Value of `w_n*`: a known number, the paper's undetermined configuration, or
/// a case the classifier does not cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WStar {
    Value(BigRational),
    Undetermined,
    OutOfScope,
}

impl WStar {
    pub fn half(k: i64) -> WStar {
        WStar::Value(BigRational::new(BigInt::from(k), BigInt::from(2)))
    }
}

impl std::fmt::Display for WStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WStar::Value(q) => write!(f, "{q}"),
            WStar::Undetermined => write!(f, "undetermined"),
            WStar::OutOfScope => write!(f, "out of classifier scope"),
        }
    }
}

impl Serialize for WStar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The classification rules, with the certified inputs supplied lazily.
pub fn wstar_rule(
    d: usize,
    n: usize,
    dependent: impl FnOnce() -> Result<bool>,
    index_two: impl FnOnce() -> Result<bool>,
) -> Result<WStar> {
    if n == 0 || n + 2 > d {
        return Err(Error::domain(format!("classify_wstar needs 1 <= n <= d - 2 (n = {n}, d = {d})")));
    }
    if n % 2 == 1 {
        return Ok(WStar::half(n as i64 - 1));
    }
    match n {
        2 if d == 4 => Ok(if dependent()? { WStar::half(2) } else { WStar::half(1) }),
        4 if d == 6 => Ok(if dependent()? || index_two()? {
            WStar::half(4)
        } else {
            WStar::half(3)
        }),
        2 | 4 => Ok(WStar::OutOfScope),
        _ if n + 2 < d && d <= 2 * n - 2 && index_two()? && !dependent()? => Ok(WStar::Undetermined),
        _ => Ok(WStar::OutOfScope),
    }
}

/// `Q(ξ)` presented by a monic generator, and the embedding index of `lc · ξ`.
pub fn field_of(xi: &AlgebraicNumber) -> Result<(NumberField, usize)> {
    let m = xi.minpoly();
    let k = NumberField::new("", monic_generator(m))?;
    let lc = m.leading();
    let w = locate_scaled(&k, xi, &lc)?;
    Ok((k, w))
}

fn locate_scaled(k: &NumberField, xi: &AlgebraicNumber, lc: &BigInt) -> Result<usize> {
    let mut bits = 64;
    while bits <= 8192 {
        let v = xi.ball(bits)?.mul_int(lc);
        let hits: Vec<usize> = (0..k.degree())
            .filter(|&i| k.embedding(i).disk().ball().overlaps(&v))
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0]);
        }
        bits *= 2;
    }
    Err(Error::PrecisionCap {
        cap_bits: 8192,
        context: "locating a scaled root".into(),
    })
}

pub fn classify_wstar(xi: &AlgebraicNumber, n: usize) -> Result<WStar> {
    let d = xi.degree();
    wstar_rule(
        d,
        n,
        || Ok(independence_triple(xi)?.is_dependent()),
        || {
            let (k, w) = field_of(xi)?;
            if !k.is_totally_complex() {
                // a real conjugate does not change Q(ξ) ∩ R for this embedding; use blocks
                return Err(Error::domain("index test implemented for totally complex fields"));
            }
            let r = real_subfield_degree(&k, w)?;
            if !r.exact {
                return Err(Error::budget("real subfield degree not determined exactly"));
            }
            Ok(2 * r.degree == d)
        },
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: String,
    /// `None` when not evaluated because an earlier condition already failed.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateReport {
    pub n: usize,
    pub theorem: String,
    pub applies: bool,
    pub conditions: Vec<Condition>,
}

fn cond(name: &str, holds: Option<bool>, detail: impl Into<String>) -> Condition {
    Condition {
        name: name.into(),
        holds,
        detail: detail.into(),
    }
}

pub fn theorem_name(n: usize) -> &'static str {
    match n {
        2 => "Thm2.2",
        3 => "Thm2.3",
        _ => "Thm2.4/2.5",
    }
}

/// Hypotheses of the theorem for degree-`n` approximation, for `σ_w(ξ)` in `K`
/// (`K` carries its automorphism table when Galois).
pub fn theorem_gate_field(k: &NumberField, galois: Option<bool>, w: usize, n: usize) -> Result<GateReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::domain("theorem_gate covers n = 2, 3, 4"));
    }
    let d = k.degree();
    let tc = k.is_totally_complex();
    let mut cs = vec![cond("totally complex", Some(tc), if tc { "no real embedding" } else { "has a real embedding" })];
    let galois_cond = |cs: &mut Vec<Condition>| {
        cs.push(cond(
            "Galois",
            galois,
            match galois {
                Some(true) => "automorphism table certified",
                Some(false) => "non-uniform splitting at an unramified prime",
                None => "unknown (budget)",
            },
        ))
    };
    match n {
        2 => {
            cs.push(cond("d >= 4", Some(d >= 4), format!("d = {d}")));
            if d > 4 {
                cs.push(cond("d > 4 or independent", Some(true), format!("d = {d}")));
            } else if tc && d == 4 {
                let v = match k.galois_table() {
                    Some(_) => independence_in_field(k, &k.xi(), w)?,
                    None => independence_triple(k.embedding(w))?,
                };
                cs.push(cond("d > 4 or independent", Some(!v.is_dependent()), v.certificate));
            } else {
                cs.push(cond("d > 4 or independent", None, "not evaluated"));
            }
        }
        3 => {
            galois_cond(&mut cs);
            cs.push(cond("d >= 6", Some(d >= 6), format!("d = {d}")));
        }
        _ => {
            galois_cond(&mut cs);
            cs.push(cond("d >= 8", Some(d >= 8), format!("d = {d}")));
            if tc && k.galois_table().is_some() {
                let mut all = true;
                let mut detail = String::from("every conjugate independent");
                for j in (0..d).step_by(2) {
                    let v = independence_in_field(k, &k.xi(), j)?;
                    if v.is_dependent() {
                        all = false;
                        detail = format!("conjugate {} dependent: {}", j + 1, v.certificate);
                        break;
                    }
                }
                cs.push(cond("all conjugates independent", Some(all), detail));
            } else {
                cs.push(cond("all conjugates independent", None, "not evaluated"));
            }
        }
    }
    let applies = cs.iter().all(|c| c.holds == Some(true));
    Ok(GateReport {
        n,
        theorem: theorem_name(n).into(),
        applies,
        conditions: cs,
    })
}

pub fn theorem_gate(xi: &AlgebraicNumber, n: usize) -> Result<GateReport> {
    let (k, w) = field_of(xi)?;
    let (k, galois) = if n >= 3 {
        let v = is_galois_field(&k, ExprBudget::default())?;
        match v {
            GaloisVerdict::Galois(t) => (k.with_galois_table(t)?, Some(true)),
            other => (k, other.as_bool()),
        }
    } else {
        (k, None)
    };
    theorem_gate_field(&k, galois, w, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugateReport {
    /// 1-based embedding index.
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub label: Option<String>,
    pub independence: IndependenceVerdict,
    pub real_subfield: RealSubfield,
    pub wstar: BTreeMap<usize, WStar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub label: String,
    pub poly: IntPoly,
    pub degree: usize,
    pub totally_complex: bool,
    pub galois: String,
    pub automorphisms: usize,
    pub real_subfield_degree: usize,
    pub conjugates: Vec<ConjugateReport>,
    pub applicable_theorems: Vec<String>,
}

/// Full classification of a totally complex field, conjugate by conjugate
/// (each conjugate pair computed once).
pub fn classify_field(k: &NumberField, ns: &[usize]) -> Result<ClassificationReport> {
    if !k.is_totally_complex() {
        return Err(Error::domain(format!("{} is not totally complex", k.label)));
    }
    let d = k.degree();
    let verdict = is_galois_field(k, ExprBudget::default())?;
    let k = &match &verdict {
        GaloisVerdict::Galois(t) if k.galois_table().is_none() => k.clone().with_galois_table(t.clone())?,
        _ => k.clone(),
    };
    let mut conjugates = Vec::with_capacity(d);
    for j in (0..d).step_by(2) {
        let indep = match k.galois_table() {
            Some(_) => independence_in_field(k, &k.xi(), j)?,
            None => independence_triple(k.embedding(j))?,
        };
        let real = real_subfield_degree(k, j)?;
        let mut wstar = BTreeMap::new();
        for &n in ns {
            let v = wstar_rule(
                d,
                n,
                || Ok(indep.is_dependent()),
                || {
                    if real.exact {
                        Ok(2 * real.degree == d)
                    } else {
                        Err(Error::budget("real subfield degree not determined exactly"))
                    }
                },
            )?;
            wstar.insert(n, v);
        }
        for i in [j, j + 1] {
            let z = k.embedding(i).approx();
            conjugates.push(ConjugateReport {
                index: i + 1,
                re: z.re,
                im: z.im,
                label: None,
                independence: indep.clone(),
                real_subfield: real.clone(),
                wstar: wstar.clone(),
            });
        }
    }
    let galois = verdict.as_bool();
    let mut applicable = Vec::new();
    for n in 2..=4 {
        if n + 2 <= d && theorem_gate_field(k, galois, 0, n)?.applies {
            applicable.push(theorem_name(n).to_string());
        }
    }
    Ok(ClassificationReport {
        label: k.label.clone(),
        poly: k.poly().clone(),
        degree: d,
        totally_complex: true,
        galois: verdict.label().into(),
        automorphisms: k.galois_table().map_or(0, |t| t.len()),
        real_subfield_degree: conjugates[0].real_subfield.degree,
        conjugates,
        applicable_theorems: applicable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rel(v: &IndependenceVerdict) -> Vec<i64> {
        v.relation.as_ref().unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn totally_complex_examples() {
        assert!(is_totally_complex(&p(&[1, -3, 5, -5, 5, -3, 1])).unwrap());
        assert!(!is_totally_complex(&p(&[-2, 0, 1])).unwrap());
        assert!(is_totally_complex(&p(&[25, 0, 2, 0, 1])).unwrap());
        assert!(!is_totally_complex(&p(&[-1, 1])).unwrap());
        assert!(is_totally_complex(&p(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn galois_small_cases() {
        assert_eq!(is_galois(&p(&[1, 0, 1])).unwrap().as_bool(), Some(true));
        // x^3 - 2 is not normal
        assert_eq!(is_galois(&p(&[-2, 0, 0, 1])).unwrap().as_bool(), Some(false));
        // cyclic cubic x^3 - 3x + 1
        match is_galois(&p(&[1, -3, 0, 1])).unwrap() {
            GaloisVerdict::Galois(t) => assert_eq!(t.len(), 3),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn sqrt2_plus_i_sqrt3() {
        let m = p(&[25, 0, 2, 0, 1]);
        let xi = AlgebraicNumber::root_near(&m, 1.414, 1.732).unwrap();
        let v = independence_triple(&xi).unwrap();
        assert_eq!(rel(&v), vec![-5, 0, 1]);
        assert_eq!(classify_wstar(&xi, 2).unwrap(), WStar::half(2));
        let (k, _) = galois_closure_check("q4", m).unwrap();
        assert_eq!(real_subfield_degree(&k, 0).unwrap().degree, 2);
        for j in 0..4 {
            let v = independence_in_field(&k, &k.xi(), j).unwrap();
            assert_eq!(rel(&v), vec![-5, 0, 1]);
        }
    }

    #[test]
    fn affine_dependence_detected() {
        // ξ with ξ+ξ̄ = ξ·ξ̄: root of x^2 - tx + t for t a root of t^2 - 5t + 5 (irrational)
        // minpoly: resultant over t gives x^4 - 5x^3 + 10x^2 - 10x + 5 (roots ξ with β₁ = β₂)
        let m = p(&[5, -10, 10, -5, 1]);
        for xi in AlgebraicNumber::roots_of(&m).unwrap() {
            let v = independence_triple(&xi).unwrap();
            assert_eq!(rel(&v), vec![0, 1, -1], "{}", v.certificate);
        }
    }

    #[test]
    fn odd_n_rule_is_unconditional() {
        for d in 5..12 {
            assert_eq!(
                wstar_rule(d, 3, || panic!("unused"), || panic!("unused")).unwrap(),
                WStar::half(2)
            );
        }
        assert_eq!(wstar_rule(10, 6, || Ok(false), || Ok(true)).unwrap(), WStar::Undetermined);
        assert_eq!(wstar_rule(10, 6, || Ok(true), || Ok(true)).unwrap(), WStar::OutOfScope);
        assert_eq!(wstar_rule(8, 6, || Ok(false), || Ok(true)).unwrap(), WStar::OutOfScope);
        assert!(wstar_rule(6, 5, || Ok(false), || Ok(true)).is_err());
    }

    #[test]
    fn relation_normalization() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let r = normalize_relation(&[q(1, 2), q(-1, 2), q(0, 1)]);
        assert_eq!(r, vec![BigInt::from(-1), BigInt::from(1), BigInt::from(0)]);
    }
}
