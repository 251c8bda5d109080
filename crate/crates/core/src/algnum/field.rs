use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::number::{initial_radius, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::numeric::ball::eval_rat_poly;
use crate::numeric::lattice::integer_relations;
use crate::numeric::roots::{certified_roots, conjugate_pairing};
use crate::numeric::CBall;
use crate::poly::{compose_mod, factor_over_q, interpolate_resultant, resultant_rat, IntPoly, RatPoly};

/// `K = Q(ξ)` for a monic irreducible `f`, with its embeddings `σ_1 … σ_d`
/// (`σ_1(ξ)` is the distinguished root) and, when certified, the automorphism
/// table `g_i` with `g_i(ξ) = σ_i(ξ)`.
#[derive(Debug, Clone)]
pub struct NumberField {
    pub label: String,
    poly: Arc<IntPoly>,
    embeddings: Vec<AlgebraicNumber>,
    galois: Option<Vec<RatPoly>>,
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    label: String,
    poly: IntPoly,
    #[serde(default)]
    galois: Option<Vec<RatPoly>>,
}

impl Serialize for NumberField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldJson {
            label: self.label.clone(),
            poly: (*self.poly).clone(),
            galois: self.galois.clone(),
        }
        .serialize(s)
    }
}

impl NumberField {
    pub fn new(label: impl Into<String>, poly: IntPoly) -> Result<NumberField> {
        if poly.deg() == 0 || !poly.is_monic() {
            return Err(Error::domain(format!("defining polynomial {poly} must be monic and nonconstant")));
        }
        let fac = factor_over_q(&poly)?;
        if !fac.is_irreducible() {
            return Err(Error::domain(format!("defining polynomial {poly} is reducible")));
        }
        let disks = certified_roots(&poly, &initial_radius())?;
        let order: Vec<usize> = if disks.iter().all(|d| !d.real) {
            let mut disks = disks.clone();
            let mut pairs = conjugate_pairing(&disks);
            // refine once if pairing was ambiguous
            if pairs.is_err() {
                disks = crate::numeric::roots::refine_all(&disks, &crate::numeric::Dyadic::pow2(-200))?;
                pairs = conjugate_pairing(&disks);
            }
            pairs?.into_iter().flat_map(|(a, b)| [a, b]).collect()
        } else {
            // real embeddings first (ascending), then the rest in disk order
            let mut real: Vec<usize> = (0..disks.len()).filter(|&i| disks[i].real).collect();
            real.extend((0..disks.len()).filter(|&i| !disks[i].real));
            real
        };
        let embeddings = order
            .into_iter()
            .map(|i| AlgebraicNumber::from_parts(poly.clone(), disks[i].clone()))
            .collect();
        Ok(NumberField {
            label: label.into(),
            poly: Arc::new(poly),
            embeddings,
            galois: None,
        })
    }

    pub fn from_json(text: &str) -> Result<NumberField> {
        let j: FieldJson = serde_json::from_str(text)?;
        let k = NumberField::new(j.label, j.poly)?;
        match j.galois {
            Some(t) => k.with_galois_table(t),
            None => Ok(k),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("field serializes")
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn poly_arc(&self) -> Arc<IntPoly> {
        self.poly.clone()
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// `σ_i(ξ)` (0-based).
    pub fn embedding(&self, i: usize) -> &AlgebraicNumber {
        &self.embeddings[i]
    }

    pub fn embeddings(&self) -> &[AlgebraicNumber] {
        &self.embeddings
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.embeddings[0]
    }

    pub fn is_totally_complex(&self) -> bool {
        self.embeddings.iter().all(|e| !e.is_real())
    }

    /// Index of the embedding `conj ∘ σ_i`.
    pub fn conj_index(&self, i: usize) -> usize {
        if self.is_totally_complex() {
            return i ^ 1;
        }
        if self.embeddings[i].is_real() {
            return i;
        }
        let c = self.embeddings[i].disk().ball().conj();
        (0..self.degree())
            .find(|&j| j != i && !self.embeddings[j].is_real() && self.embeddings[j].disk().ball().overlaps(&c))
            .expect("nonreal embedding has a conjugate")
    }

    /// The same field presented with `σ_i(ξ)` as distinguished root: embedding `i`
    /// (and its conjugate) move to the front, the rest keep their order.
    pub fn with_generator(&self, i: usize) -> Result<NumberField> {
        let c = self.conj_index(i);
        let mut order = vec![i];
        if c != i {
            order.push(c);
        }
        order.extend((0..self.degree()).filter(|&j| j != i && j != c));
        let k = NumberField {
            label: self.label.clone(),
            poly: self.poly.clone(),
            embeddings: order.iter().map(|&j| self.embeddings[j].clone()).collect(),
            galois: None,
        };
        match &self.galois {
            Some(t) => k.with_galois_table(t.clone()),
            None => Ok(k),
        }
    }

    pub fn galois_table(&self) -> Option<&[RatPoly]> {
        self.galois.as_deref()
    }

    /// Attaches an automorphism table after exact verification; entries are
    /// reordered to follow the embedding order.
    pub fn with_galois_table(mut self, table: Vec<RatPoly>) -> Result<NumberField> {
        let d = self.degree();
        if table.len() != d {
            return Err(Error::Certification(format!("automorphism table has {} entries, need {d}", table.len())));
        }
        let mut slots: Vec<Option<RatPoly>> = vec![None; d];
        for g in table {
            let g = g.rem(&self.poly.to_rat());
            if !compose_mod(&self.poly.to_rat(), &g, &self.poly)?.is_zero() {
                return Err(Error::Certification(format!("f(g(X)) is not 0 mod f for g = {g}")));
            }
            let i = self.locate_image(&g)?;
            if slots[i].is_some() {
                return Err(Error::Certification("automorphism table has repeated images".into()));
            }
            slots[i] = Some(g);
        }
        self.galois = Some(slots.into_iter().map(|g| g.unwrap()).collect());
        Ok(self)
    }

    /// Index of the embedding `σ_i` with `g(ξ) = σ_i(ξ)`, for `g` already known
    /// to map `ξ` to a root of `f`.
    pub fn locate_image(&self, g: &RatPoly) -> Result<usize> {
        let mut bits = 64;
        while bits <= 4096 {
            let v = eval_rat_poly(g, &self.generator().ball(bits + 16)?, bits + 32);
            let hits: Vec<usize> = (0..self.degree())
                .filter(|&i| self.embeddings[i].disk().ball().overlaps(&v))
                .collect();
            // v holds a root of f and each root lies in exactly one disk
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
            if hits.is_empty() {
                return Err(Error::Certification("image lies in no root disk".into()));
            }
            bits *= 2;
        }
        Err(Error::PrecisionCap {
            cap_bits: 4096,
            context: "locating an automorphism image".into(),
        })
    }

    pub fn element(&self, coords: Vec<BigRational>) -> FieldElement {
        FieldElement::new(self.poly.clone(), RatPoly::new(coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> FieldElement {
        FieldElement::new(self.poly.clone(), RatPoly::from_i64s(coords))
    }

    pub fn element_from_poly(&self, p: RatPoly) -> FieldElement {
        FieldElement::new(self.poly.clone(), p)
    }

    pub fn xi(&self) -> FieldElement {
        self.element_from_poly(RatPoly::x())
    }

    /// `σ_i(u)` as an enclosure of radius about `2^-bits`.
    pub fn embed(&self, u: &FieldElement, i: usize, bits: u32) -> Result<CBall> {
        let z = self.embeddings[i].ball(bits + 16 + 4 * self.degree() as u32)?;
        Ok(eval_rat_poly(&u.poly, &z, bits + 32))
    }

    /// `σ_i(u)` exactly, as an element of `K` (requires the automorphism table).
    pub fn apply_embedding(&self, u: &FieldElement, i: usize) -> Option<FieldElement> {
        let g = &self.galois.as_ref()?[i];
        Some(u.apply(g))
    }

    /// Certified numeric embedding matrix `V_{ij} = σ_i(ξ)^j`, `0 <= j <= n`.
    pub fn embedding_matrix(&self, n: usize, bits: u32) -> Result<Vec<Vec<CBall>>> {
        if n + 2 > self.degree() && self.degree() > 1 {
            return Err(Error::domain(format!("embedding matrix needs n <= d - 2 (n = {n}, d = {})", self.degree())));
        }
        let prec = bits + 32;
        (0..self.degree())
            .map(|i| {
                let z = self.embeddings[i].ball(bits + 16 + 4 * n as u32)?;
                let mut row = Vec::with_capacity(n + 1);
                let mut acc = CBall::one();
                for _ in 0..=n {
                    row.push(acc.clone());
                    acc = acc.mul(&z, prec);
                }
                Ok(row)
            })
            .collect()
    }

    /// Exact embedding matrix with entries `g_i^j mod f` (Galois fields only).
    pub fn exact_embedding_matrix(&self, n: usize) -> Option<Vec<Vec<FieldElement>>> {
        let table = self.galois.as_ref()?;
        Some(
            table
                .iter()
                .map(|g| {
                    let gi = self.element_from_poly(g.clone());
                    let mut row = Vec::with_capacity(n + 1);
                    let mut acc = gi.one_like();
                    for _ in 0..=n {
                        row.push(acc.clone());
                        acc = acc.mul(&gi);
                    }
                    row
                })
                .collect(),
        )
    }
}

/// Element of `Q[X]/(f)` in the power basis `1, ξ, …, ξ^{d-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldElement {
    modulus: Arc<IntPoly>,
    poly: RatPoly,
}

impl FieldElement {
    pub fn new(modulus: Arc<IntPoly>, p: RatPoly) -> FieldElement {
        let poly = p.rem(&modulus.to_rat());
        FieldElement { modulus, poly }
    }

    pub fn as_poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn coords(&self) -> Vec<BigRational> {
        (0..self.modulus.deg()).map(|k| self.poly.coeff(k)).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.poly.deg() == 0
    }

    pub fn constant(&self, c: BigRational) -> FieldElement {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: RatPoly::constant(c),
        }
    }

    /// `u(g(X)) mod f`: the image of `u` under the automorphism `ξ ↦ g(ξ)`.
    pub fn apply(&self, g: &RatPoly) -> FieldElement {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: compose_mod(&self.poly, g, &self.modulus).expect("nonconstant modulus"),
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut acc = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &b);
            }
            b = Scalar::mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn try_inv(&self) -> Result<FieldElement> {
        Scalar::inv(self).ok_or_else(|| Error::domain("inverse of zero in a number field"))
    }

    /// `Norm_{K/Q}(u) = Res(f, u) / lc(f)^{deg u}` (f is monic here).
    pub fn norm(&self) -> BigRational {
        if self.poly.is_zero() {
            return BigRational::zero();
        }
        if self.poly.deg() == 0 {
            return num_traits::pow(self.poly.coeff(0), self.modulus.deg());
        }
        resultant_rat(&self.modulus.to_rat(), &self.poly).expect("nonzero inputs")
    }

    /// Characteristic polynomial `Π (X - σ_i(u))` of multiplication by `u`.
    pub fn charpoly(&self) -> RatPoly {
        let d = self.modulus.deg();
        let u = self.poly.clone();
        interpolate_resultant(&self.modulus, d, |x| {
            let xr = RatPoly::constant(BigRational::from_integer(x.clone()));
            &xr - &u
        })
        .expect("monic modulus")
    }
}

impl Scalar for FieldElement {
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: &self.poly + &o.poly,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: &self.poly - &o.poly,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElement::new(self.modulus.clone(), &self.poly * &o.poly)
    }
    fn inv(&self) -> Option<Self> {
        if self.poly.is_zero() {
            return None;
        }
        let (g, s, _) = self.poly.xgcd(&self.modulus.to_rat());
        if g.deg() != 0 {
            return None;
        }
        Some(FieldElement::new(self.modulus.clone(), s))
    }
    fn zero_like(&self) -> Self {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: RatPoly::zero(),
        }
    }
    fn one_like(&self) -> Self {
        FieldElement {
            modulus: self.modulus.clone(),
            poly: RatPoly::one(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExprBudget {
    pub max_bits: u32,
}

impl Default for ExprBudget {
    fn default() -> Self {
        ExprBudget { max_bits: 2048 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expressed {
    /// `g` with `g(ξ) = target`, certified: `m(g(X)) ≡ 0 mod f` for the target's
    /// minimal polynomial `m`, and `g(σ_1 ξ)` lies in the target's isolating disk.
    Found(RatPoly),
    /// Certified absence: the target's degree does not divide `[K:Q]`.
    NotInField,
    NotFoundWithinBudget,
}

/// Searches for `g ∈ Q[X]`, `deg g < d`, with `g(ξ) = target` by lattice
/// reduction on `[target, 1, ξ, …, ξ^{d-1}]`.
pub fn express_in_field(target: &AlgebraicNumber, k: &NumberField, budget: ExprBudget) -> Result<Expressed> {
    let d = k.degree();
    if d % target.degree() != 0 {
        return Ok(Expressed::NotInField);
    }
    if target.degree() == 1 {
        let m = target.minpoly();
        let q = BigRational::new(-m.coeff(0), m.coeff(1));
        return Ok(Expressed::Found(RatPoly::constant(q)));
    }
    let m = target.minpoly().to_rat();
    let mut bits = 48 * (d as u32 + 1);
    let mut tried: Vec<RatPoly> = Vec::new();
    while bits <= budget.max_bits {
        let prec = bits + 64;
        let xi = k.generator().ball(prec)?;
        let mut vals = vec![target.ball(prec)?];
        let mut acc = CBall::one();
        for _ in 0..d {
            vals.push(acc.clone());
            acc = acc.mul(&xi, prec + 32);
        }
        for rel in integer_relations(&vals, bits).into_iter().take(3) {
            if rel[0].is_zero() {
                continue;
            }
            let a0 = BigRational::from_integer(rel[0].clone());
            let g = RatPoly::new(rel[1..].iter().map(|c| -BigRational::from_integer(c.clone()) / &a0).collect());
            if tried.contains(&g) {
                continue;
            }
            tried.push(g.clone());
            if !compose_mod(&m, &g, k.poly())?.is_zero() {
                continue;
            }
            if image_is_target(&g, k, target)? {
                return Ok(Expressed::Found(g));
            }
        }
        bits *= 2;
    }
    Ok(Expressed::NotFoundWithinBudget)
}

/// For `g` with `m(g(ξ)) = 0`, decides whether `g(σ_1 ξ)` is the root held by `target`.
fn image_is_target(g: &RatPoly, k: &NumberField, target: &AlgebraicNumber) -> Result<bool> {
    // snapshot: refining the generator may also refine `target`
    let disk = target.disk().ball();
    let mut bits = 64;
    while bits <= 8192 {
        let v = eval_rat_poly(g, &k.generator().ball(bits + 16)?, bits + 32);
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
        context: "separating an expressed value from other conjugates".into(),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn f() -> IntPoly {
        IntPoly::from_i64s(&[1, -3, 5, -5, 5, -3, 1])
    }

    #[test]
    fn sextic_xi_powers_reduce() {
        let k = NumberField::new("paper-f", f()).unwrap();
        let xi = k.xi();
        let x6 = Scalar::mul(&xi, &xi.pow(5));
        assert_eq!(x6.coords(), [-1, 3, -5, 5, -5, 3].map(int).to_vec());
    }

    #[test]
    fn inverse_and_norm() {
        let k = NumberField::new("paper-f", f()).unwrap();
        let u = k.element_from_ints(&[2, 1, 0, 3]);
        let v = u.try_inv().unwrap();
        assert_eq!(Scalar::mul(&u, &v), u.one_like());
        assert_eq!(k.xi().norm(), int(1));
        assert!(FieldElement::try_inv(&u.zero_like()).is_err());
    }

    #[test]
    fn express_power_of_generator() {
        let k = NumberField::new("paper-f", f()).unwrap();
        let xi2 = k.xi().pow(2);
        let cp = xi2.charpoly().to_int_primitive().0;
        let target = super::super::number::identify_root(&cp, |b| k.embed(&xi2, 0, b)).unwrap();
        match express_in_field(&target, &k, ExprBudget::default()).unwrap() {
            Expressed::Found(g) => assert_eq!(g, RatPoly::from_i64s(&[0, 0, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_roundtrip() {
        let k = NumberField::new("x2p1", IntPoly::from_i64s(&[1, 0, 1])).unwrap();
        let k = k.with_galois_table(vec![RatPoly::x(), RatPoly::from_i64s(&[0, -1])]).unwrap();
        let s = k.to_json();
        assert_eq!(s, r#"{"label":"x2p1","poly":[1,0,1],"galois":[[0,1],[0,-1]]}"#);
        let back = NumberField::from_json(&s).unwrap();
        assert_eq!(back.galois_table().unwrap().len(), 2);
    }

    #[test]
    fn embedding_matrix_shape() {
        let k = NumberField::new("paper-f", f()).unwrap();
        let v = k.embedding_matrix(2, 64).unwrap();
        assert_eq!((v.len(), v[0].len()), (6, 3));
        assert!(v.iter().all(|r| r[0] == CBall::one()));
    }
}
