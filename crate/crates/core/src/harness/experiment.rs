//! Random-element experiment: how often does a random generator of a totally
//! complex Galois field satisfy the all-conjugates independence criterion?

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{Catalog, FieldCatalogEntry};
use crate::algnum::{FieldElement, NumberField};
use crate::criteria::{galois_closure_check, independence_in_field, GaloisVerdict};
use crate::error::Result;
use crate::poly::factor_over_q;
use crate::serde_util;

/// Named generator behind every sample stream.
pub const RNG_NAME: &str = "ChaCha8";

#[derive(Clone, Debug, Serialize)]
pub struct FailedSample {
    pub coords: Vec<i64>,
    /// 1-based embedding index of the first dependent conjugate.
    pub conjugate: usize,
    /// `(a, b, c)` with `a + b β₁ + c β₂ = 0`.
    #[serde(serialize_with = "serde_util::serialize_ints")]
    pub relation: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateSample {
    pub coords: Vec<i64>,
    /// Degree of the minimal polynomial (a proper divisor of `d`).
    pub minpoly_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldResult {
    pub label: String,
    pub degree: usize,
    pub samples: usize,
    pub satisfied: usize,
    pub failed: usize,
    pub degenerate: usize,
    pub failures: Vec<FailedSample>,
    pub degenerate_samples: Vec<DegenerateSample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub label: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub samples: usize,
    pub satisfied: usize,
    pub failed: usize,
    pub degenerate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub rng: String,
    pub seed: u64,
    pub r: i64,
    pub per_field: usize,
    pub fields: Vec<FieldResult>,
    pub skipped: Vec<Skipped>,
    pub totals: Totals,
    /// `satisfied / (samples − degenerate)`, `None` without generating samples.
    pub satisfaction_rate: Option<f64>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,degree,samples,satisfied,failed,degenerate\n");
        for f in &self.fields {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f.label, f.degree, f.samples, f.satisfied, f.failed, f.degenerate
            ));
        }
        s
    }
}

/// 64-bit FNV-1a.
fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Per-field stream, independent of the order fields are processed in.
pub fn field_rng(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(label))
}

enum Outcome {
    Done(FieldResult),
    Skip(Skipped),
}

/// `None` when `u` generates `K`, else the degree of its minimal polynomial.
pub fn degenerate_degree(u: &FieldElement) -> Result<Option<usize>> {
    let cp = u.charpoly();
    let d = cp.deg();
    if cp.gcd(&cp.derivative()).deg() == 0 {
        return Ok(None);
    }
    let (ip, _) = cp.to_int_primitive();
    let fac = factor_over_q(&ip)?;
    Ok(Some(d / fac.factors.iter().map(|(_, e)| *e).max().unwrap_or(1)))
}

fn run_field(entry: &FieldCatalogEntry, per_field: usize, r: i64, seed: u64) -> Result<Outcome> {
    let skip = |reason: String| {
        Ok(Outcome::Skip(Skipped {
            label: entry.label.clone(),
            reason,
        }))
    };
    let k = NumberField::new(entry.label.clone(), entry.poly.clone())?;
    if !k.is_totally_complex() {
        return skip("not totally complex".into());
    }
    let (k, verdict) = galois_closure_check(&entry.label, entry.poly.clone())?;
    if !matches!(verdict, GaloisVerdict::Galois(_)) {
        return skip(format!("Galois test: {}", verdict.label()));
    }
    let d = k.degree();
    let mut rng = field_rng(seed, &entry.label);
    let mut res = FieldResult {
        label: entry.label.clone(),
        degree: d,
        samples: per_field,
        satisfied: 0,
        failed: 0,
        degenerate: 0,
        failures: Vec::new(),
        degenerate_samples: Vec::new(),
    };
    for _ in 0..per_field {
        let coords: Vec<i64> = (0..d).map(|_| rng.random_range(-r..=r)).collect();
        let u = k.element_from_ints(&coords);
        if let Some(md) = degenerate_degree(&u)? {
            res.degenerate += 1;
            res.degenerate_samples.push(DegenerateSample {
                coords,
                minpoly_degree: md,
            });
            continue;
        }
        let mut failure = None;
        for j in (0..d).step_by(2) {
            let v = independence_in_field(&k, &u, j)?;
            if v.is_dependent() {
                failure = Some(FailedSample {
                    coords: coords.clone(),
                    conjugate: j + 1,
                    relation: v.relation.unwrap_or_default(),
                });
                break;
            }
        }
        match failure {
            Some(f) => {
                res.failed += 1;
                res.failures.push(f);
            }
            None => res.satisfied += 1,
        }
    }
    Ok(Outcome::Done(res))
}

/// Samples `per_field` elements `Σ c_i γ^i`, `c_i` uniform on `[−r, r]`, in
/// every totally complex Galois field of the catalog.
pub fn sample_experiment(catalog: &Catalog, per_field: usize, r: i64, seed: u64) -> Result<ExperimentReport> {
    let outcomes: Vec<Result<Outcome>> = catalog
        .entries
        .par_iter()
        .map(|e| run_field(e, per_field, r.abs(), seed))
        .collect();
    let mut fields = Vec::new();
    let mut skipped = Vec::new();
    let mut t = Totals::default();
    for o in outcomes {
        match o? {
            Outcome::Done(f) => {
                t.samples += f.samples;
                t.satisfied += f.satisfied;
                t.failed += f.failed;
                t.degenerate += f.degenerate;
                fields.push(f);
            }
            Outcome::Skip(s) => {
                log::warn!("skipping {}: {}", s.label, s.reason);
                skipped.push(s);
            }
        }
    }
    let gen = t.samples - t.degenerate;
    Ok(ExperimentReport {
        rng: RNG_NAME.into(),
        seed,
        r: r.abs(),
        per_field,
        fields,
        skipped,
        satisfaction_rate: (gen > 0).then(|| t.satisfied as f64 / gen as f64),
        totals: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog::{parse_catalog, Provenance};
    use crate::poly::IntPoly;

    fn quartic() -> Catalog {
        Catalog {
            entries: vec![FieldCatalogEntry {
                label: "surd(2,3)".into(),
                poly: IntPoly::from_i64s(&[25, 0, 2, 0, 1]),
                provenance: Provenance::BuiltinSurd,
            }],
            warnings: vec![],
        }
    }

    #[test]
    fn zero_range_is_all_degenerate() {
        let rep = sample_experiment(&quartic(), 5, 0, 7).unwrap();
        assert_eq!(rep.totals.degenerate, 5);
        assert!(rep.fields[0].degenerate_samples.iter().all(|s| s.minpoly_degree == 1));
        assert_eq!(rep.satisfaction_rate, None);
    }

    #[test]
    fn counts_add_up_and_rerun_matches() {
        let a = sample_experiment(&quartic(), 20, 3, 11).unwrap();
        let f = &a.fields[0];
        assert_eq!(f.satisfied + f.failed + f.degenerate, f.samples);
        assert_eq!(f.failures.len(), f.failed);
        let b = sample_experiment(&quartic(), 20, 3, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn non_galois_skipped() {
        let c = parse_catalog(r#"[{"label": "paper-g", "poly": [1,-1,0,2,0,-1,1]}]"#, "g.json").unwrap();
        let rep = sample_experiment(&c, 3, 10, 1).unwrap();
        assert!(rep.fields.is_empty());
        assert_eq!(rep.skipped.len(), 1);
    }
}
