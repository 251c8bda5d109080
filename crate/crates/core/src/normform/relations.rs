//! Linear relations between the conjugates `σ_i(x_0 + x_1 ξ + … + x_n ξ^n)`.
//!
//! For a Galois field the rows of `V_{ij} = σ_i(ξ)^j` live in `K`, so the left
//! kernel of `V` is computed exactly. Each kernel row `a` gives
//! `Σ_i a_i σ_i(x) = 0` for every integer vector `x`.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::norm::NormFormSolution;
use crate::algnum::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::linalg::{det, rref, right_kernel, Scalar};
use crate::poly::Combinations;
use crate::serde_util::rat_to_value;

#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub field: String,
    pub n: usize,
    pub d: usize,
    /// `(d−n−1) × d`, reduced row echelon form.
    pub entries: Vec<Vec<FieldElement>>,
    pub pivots: Vec<usize>,
    /// `σ_1` of every entry (centers of certified enclosures).
    pub mirror: Vec<Vec<[f64; 2]>>,
}

impl Serialize for RelationMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<Vec<serde_json::Value>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.coords().iter().map(rat_to_value).collect()).collect())
            .collect();
        let mut st = s.serialize_struct("RelationMatrix", 6)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("pivots", &self.pivots)?;
        st.serialize_field("mirror", &self.mirror)?;
        st.end()
    }
}

fn vandermonde(k: &NumberField, n: usize) -> Result<Vec<Vec<FieldElement>>> {
    k.exact_embedding_matrix(n)
        .ok_or_else(|| Error::domain(format!("{}: relation matrices need an automorphism table (Galois field)", k.label)))
}

fn times_v_is_zero(a: &[Vec<FieldElement>], v: &[Vec<FieldElement>]) -> bool {
    let cols = v.first().map_or(0, |r| r.len());
    a.iter().all(|row| {
        (0..cols).all(|j| {
            let mut acc = row[0].zero_like();
            for (i, ai) in row.iter().enumerate() {
                acc = acc.add(&ai.mul(&v[i][j]));
            }
            acc.is_zero()
        })
    })
}

/// Exact left kernel of `V`, row-reduced; `A·V = 0` is re-checked.
pub fn relation_matrix(k: &NumberField, n: usize) -> Result<RelationMatrix> {
    let d = k.degree();
    if n + 2 > d {
        return Err(Error::domain(format!("need n <= d - 2 (n = {n}, d = {d})")));
    }
    let v = vandermonde(k, n)?;
    let vt: Vec<Vec<FieldElement>> = (0..=n).map(|j| (0..d).map(|i| v[i][j].clone()).collect()).collect();
    let zero = v[0][0].zero_like();
    let mut a = right_kernel(&vt, d, &zero);
    if a.len() != d - n - 1 {
        return Err(Error::Certification(format!(
            "kernel of V has dimension {}, expected {}",
            a.len(),
            d - n - 1
        )));
    }
    let pivots = rref(&mut a);
    if !times_v_is_zero(&a, &v) {
        return Err(Error::Certification("A·V is not zero".into()));
    }
    let mirror = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let (re, im) = k.embed(e, 0, 64)?.to_f64s();
                    Ok([re, im])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationMatrix {
        field: k.label.clone(),
        n,
        d,
        entries: a,
        pivots,
        mirror,
    })
}

impl RelationMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// `A·V = 0` against a freshly built `V`.
    pub fn annihilates(&self, k: &NumberField) -> Result<bool> {
        Ok(times_v_is_zero(&self.entries, &vandermonde(k, self.n)?))
    }

    /// Row-reducing again; the reduced form is canonical so this is the identity.
    pub fn reduce(&self) -> RelationMatrix {
        let mut m = self.clone();
        m.pivots = rref(&mut m.entries);
        m
    }

    /// Left `r × r` block diagonal with nonzero diagonal, `r = d − n − 1`.
    pub fn left_block_diagonal(&self) -> bool {
        let r = self.rows();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j].is_zero() != (i == j)))
    }

    pub fn support(&self, row: usize) -> Vec<usize> {
        (0..self.d).filter(|&i| !self.entries[row][i].is_zero()).collect()
    }

    pub fn full_rank_condition(&self) -> FullRank {
        full_rank_columns(&self.entries)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FullRank {
    pub holds: bool,
    /// First column subset (lexicographic) whose square block is singular.
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: usize,
}

/// Every choice of `rows` columns gives an invertible square block.
pub fn full_rank_columns<T: Scalar>(a: &[Vec<T>]) -> FullRank {
    let r = a.len();
    let c = a.first().map_or(0, |row| row.len());
    let mut checked = 0;
    if r == 0 || r > c {
        return FullRank {
            holds: r == 0,
            witness: (r > c).then(Vec::new),
            subsets_checked: 0,
        };
    }
    for cols in Combinations::new(c, r) {
        checked += 1;
        let block: Vec<Vec<T>> = a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        if det(&block).is_none_or(|x| x.is_zero()) {
            return FullRank {
                holds: false,
                witness: Some(cols),
                subsets_checked: checked,
            };
        }
    }
    FullRank {
        holds: true,
        witness: None,
        subsets_checked: checked,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingSubsum {
    pub subset: Vec<usize>,
    /// The subset is the whole support of the row.
    pub full_support: bool,
    /// The subset is `{i, ī}` for one conjugate pair.
    pub conjugate_pair: bool,
    /// The subset is a union of conjugate pairs (and real embeddings).
    pub conjugation_closed: bool,
}

/// `σ_i(x_0 + x_1 ξ + …)` as elements of `K`.
pub fn conjugate_values(k: &NumberField, x: &[i64]) -> Result<Vec<FieldElement>> {
    let u = k.element_from_ints(x);
    (0..k.degree())
        .map(|i| {
            k.apply_embedding(&u, i)
                .ok_or_else(|| Error::domain(format!("{}: no automorphism table", k.label)))
        })
        .collect()
}

/// All nonempty subsets `S` of the row's support with `Σ_{i∈S} A_{row,i} σ_i(x) = 0`.
pub fn vanishing_subsum_detect(
    k: &NumberField,
    a: &RelationMatrix,
    row: usize,
    x: &NormFormSolution,
) -> Result<Vec<VanishingSubsum>> {
    if row >= a.rows() {
        return Err(Error::domain(format!("row {row} out of range")));
    }
    if x.coords.len() > a.n + 1 {
        return Err(Error::domain(format!(
            "solution has {} coordinates, relation matrix covers n = {}",
            x.coords.len(),
            a.n
        )));
    }
    let sig = conjugate_values(k, &x.coords)?;
    let support = a.support(row);
    let terms: Vec<FieldElement> = support.iter().map(|&i| a.entries[row][i].mul(&sig[i])).collect();
    let s = support.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << s) {
        let mut acc = terms[0].zero_like();
        let mut subset = Vec::new();
        for (b, t) in terms.iter().enumerate() {
            if mask >> b & 1 == 1 {
                acc = acc.add(t);
                subset.push(support[b]);
            }
        }
        if acc.is_zero() {
            let closed = subset.iter().all(|&i| subset.contains(&k.conj_index(i)));
            let pair = subset.len() == 2 && k.conj_index(subset[0]) == subset[1];
            out.push(VanishingSubsum {
                full_support: subset.len() == s,
                conjugate_pair: pair,
                conjugation_closed: closed,
                subset,
            });
        }
    }
    Ok(out)
}

/// Embedding indices sorted by decreasing `|σ_i(x)|`; conjugates share a value
/// and keep the field's pairing order.
pub fn embedding_order(k: &NumberField, x: &[i64]) -> (Vec<usize>, Vec<f64>) {
    let d = k.degree();
    let mut moduli = vec![0.0; d];
    for i in 0..d {
        let j = k.conj_index(i);
        if j < i {
            moduli[i] = moduli[j];
            continue;
        }
        let z = k.embedding(i).approx();
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for &c in x.iter().rev() {
            acc = acc * z + c as f64;
        }
        moduli[i] = acc.norm();
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| moduli[b].partial_cmp(&moduli[a]).unwrap().then(a.cmp(&b)));
    (order, moduli)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionAnalysis {
    pub solution: NormFormSolution,
    /// Solution-dependent order `|σ_{o_1}(x)| >= |σ_{o_2}(x)| >= …`.
    pub order: Vec<usize>,
    pub moduli: Vec<f64>,
    /// Vanishing subsums per row.
    pub subsums: Vec<Vec<VanishingSubsum>>,
}

impl SolutionAnalysis {
    pub fn full_support_flagged(&self) -> bool {
        self.subsums.iter().all(|r| r.iter().any(|s| s.full_support))
    }

    /// Rows where some proper conjugate-pair subsum vanishes.
    pub fn pair_rows(&self) -> Vec<usize> {
        (0..self.subsums.len())
            .filter(|&r| self.subsums[r].iter().any(|s| s.conjugate_pair && !s.full_support))
            .collect()
    }
}

pub fn analyze_solution(k: &NumberField, a: &RelationMatrix, x: &NormFormSolution) -> Result<SolutionAnalysis> {
    let (order, moduli) = embedding_order(k, &x.coords);
    let subsums = (0..a.rows())
        .map(|r| vanishing_subsum_detect(k, a, r, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SolutionAnalysis {
        solution: x.clone(),
        order,
        moduli,
        subsums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::galois_closure_check;
    use crate::poly::IntPoly;
    use num_rational::BigRational;

    fn galois(label: &str, c: &[i64]) -> NumberField {
        let (k, v) = galois_closure_check(label, IntPoly::from_i64s(c)).unwrap();
        assert!(v.as_bool() == Some(true));
        k
    }

    #[test]
    fn quartic_single_relation() {
        let k = galois("surd(2,3)", &[25, 0, 2, 0, 1]);
        let a = relation_matrix(&k, 2).unwrap();
        assert_eq!(a.rows(), 1);
        assert!(a.annihilates(&k).unwrap());
        // rank one: the condition is "no zero column"
        assert!(a.full_rank_condition().holds);
        assert_eq!(a.support(0).len(), 4);
    }

    #[test]
    fn repeated_column_has_witness() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let m = vec![vec![q(1), q(2), q(1)], vec![q(0), q(3), q(0)]];
        let r = full_rank_columns(&m);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0, 2]));
    }

    #[test]
    fn unit_vector_subsums_are_coefficient_subsums() {
        let k = galois("surd(2,3)", &[25, 0, 2, 0, 1]);
        let a = relation_matrix(&k, 2).unwrap();
        let e0 = NormFormSolution::new(&k, vec![1, 0, 0]);
        let got = vanishing_subsum_detect(&k, &a, 0, &e0).unwrap();
        let supp = a.support(0);
        for mask in 1u64..(1 << supp.len()) {
            let sub: Vec<usize> = (0..supp.len()).filter(|b| mask >> b & 1 == 1).map(|b| supp[b]).collect();
            let mut acc = a.entries[0][0].zero_like();
            for &i in &sub {
                acc = acc.add(&a.entries[0][i]);
            }
            assert_eq!(acc.is_zero(), got.iter().any(|s| s.subset == sub));
        }
        assert!(got.iter().any(|s| s.full_support));
    }
}
