//! Field catalogs: JSON files of `{"label", "poly"}` entries and the builtin
//! surd-sum catalog.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::approx::{surd_family, surd_label};
use crate::error::{Error, Result};
use crate::poly::{is_irreducible, IntPoly};
use crate::serde_util::value_to_int;

pub const PAPER_F: [i64; 7] = [1, -3, 5, -5, 5, -3, 1];
pub const PAPER_G: [i64; 7] = [1, -1, 0, 2, 0, -1, 1];

/// Fields generated per power-of-two degree by [`builtin_catalog`].
pub const BUILTIN_PER_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "builtin-surd")]
    BuiltinSurd,
    #[serde(rename = "user-file")]
    UserFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldCatalogEntry {
    pub label: String,
    pub poly: IntPoly,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Catalog {
    pub entries: Vec<FieldCatalogEntry>,
    pub warnings: Vec<String>,
}

impl Catalog {
    pub fn get(&self, label: &str) -> Option<&FieldCatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn of_degree(&self, d: usize) -> Catalog {
        Catalog {
            entries: self.entries.iter().filter(|e| e.poly.deg() == d).cloned().collect(),
            warnings: self.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let v: Vec<Value> = self
            .entries
            .iter()
            .map(|e| serde_json::json!({"label": e.label, "poly": e.poly}))
            .collect();
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

/// 1-based line of every object opening at depth 1 of a top-level array.
fn object_lines(text: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut depth, mut line) = (0usize, 1usize);
    let (mut in_str, mut esc) = (false, false);
    for ch in text.chars() {
        if ch == '\n' {
            line += 1;
        }
        if in_str {
            match (esc, ch) {
                (true, _) => esc = false,
                (false, '\\') => esc = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '[' | '{' => {
                if ch == '{' && depth == 1 {
                    out.push(line);
                }
                depth += 1;
            }
            ']' | '}' => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    out
}

/// Parses and validates a catalog; `path` is only used in messages.
pub fn parse_catalog(text: &str, path: &str) -> Result<Catalog> {
    let perr = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        msg: format!("line {line}: {msg}"),
    };
    let root: Value = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    let Value::Array(items) = root else {
        return Err(perr(1, "expected a JSON array of {\"label\", \"poly\"} objects".into()));
    };
    let lines = object_lines(text);
    let mut cat = Catalog::default();
    if items.is_empty() {
        cat.warnings.push(format!("{path}: catalog is empty"));
        return Ok(cat);
    }
    let mut labels = BTreeSet::new();
    let mut polys = BTreeSet::new();
    for (i, item) in items.iter().enumerate() {
        let line = lines.get(i).copied().unwrap_or(1);
        let obj = item
            .as_object()
            .ok_or_else(|| perr(line, format!("entry {i} is not an object")))?;
        let label = obj
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| perr(line, format!("entry {i} has no string \"label\"")))?
            .to_string();
        let coeffs = obj
            .get("poly")
            .and_then(Value::as_array)
            .ok_or_else(|| perr(line, format!("{label}: missing \"poly\" array")))?
            .iter()
            .map(value_to_int)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| perr(line, format!("{label}: {m}")))?;
        let poly = IntPoly::new(coeffs);
        if poly.degree().is_none_or(|d| d == 0) {
            return Err(perr(line, format!("{label}: polynomial must have degree >= 1")));
        }
        if !poly.is_monic() {
            return Err(perr(line, format!("{label}: {poly} is not monic")));
        }
        if !is_irreducible(&poly)? {
            return Err(perr(line, format!("{label}: {poly} is reducible over Q")));
        }
        if !labels.insert(label.clone()) {
            return Err(perr(line, format!("duplicate label {label:?}")));
        }
        if !polys.insert(poly.coeffs().to_vec()) {
            return Err(perr(line, format!("{label}: duplicate polynomial {poly}")));
        }
        cat.entries.push(FieldCatalogEntry {
            label,
            poly,
            provenance: Provenance::UserFile,
        });
    }
    Ok(cat)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p)?;
    parse_catalog(&text, &p.display().to_string())
}

fn squarefree_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| crate::approx::surd::is_squarefree(n))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pairwise coprime squarefree `k`-sets (entries > 1), lexicographic.
fn coprime_sets(k: usize, limit: usize) -> Vec<Vec<u64>> {
    fn go(k: usize, cur: &mut Vec<u64>, pool: &[u64], out: &mut Vec<Vec<u64>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let from = cur.last().map_or(0, |&l| pool.iter().position(|&p| p == l).unwrap() + 1);
        for &p in &pool[from..] {
            if cur.iter().all(|&c| gcd(c, p) == 1) {
                cur.push(p);
                go(k, cur, pool, out, limit);
                cur.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
    let pool: Vec<u64> = squarefree_from(2).take(40).collect();
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &pool, &mut out, limit);
    out
}

/// Surd tuples for degree `2^k`: each coprime set, with the negated entry
/// (the last one) running through the set from the largest down.
pub fn surd_tuples(k: usize, count: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for set in coprime_sets(k, count) {
        for neg in set.iter().rev() {
            let mut t: Vec<u64> = set.iter().copied().filter(|x| x != neg).collect();
            t.push(*neg);
            out.push(t);
            if out.len() == count {
                return out;
            }
        }
    }
    out
}

/// Deterministic catalog: [`BUILTIN_PER_DEGREE`] surd fields for every
/// power-of-two degree `>= 4` requested, then `paper-f` and `paper-g`.
pub fn builtin_catalog(degrees: &[usize]) -> Result<Catalog> {
    let mut cat = Catalog::default();
    for &d in degrees {
        if d == 6 {
            continue;
        }
        if d < 4 || !d.is_power_of_two() {
            return Err(Error::domain(format!("builtin catalog has degrees 6 and powers of two >= 4, not {d}")));
        }
        let k = d.trailing_zeros() as usize;
        for t in surd_tuples(k, BUILTIN_PER_DEGREE) {
            let xi = surd_family(&t)?;
            cat.entries.push(FieldCatalogEntry {
                label: surd_label(&t),
                poly: xi.minpoly().clone(),
                provenance: Provenance::BuiltinSurd,
            });
        }
    }
    for (label, c) in [("paper-f", &PAPER_F), ("paper-g", &PAPER_G)] {
        cat.entries.push(FieldCatalogEntry {
            label: label.into(),
            poly: IntPoly::from_i64s(c),
            provenance: Provenance::BuiltinSurd,
        });
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_eight_tuples() {
        let t = surd_tuples(3, 4);
        assert_eq!(t, vec![vec![2, 3, 5], vec![2, 5, 3], vec![3, 5, 2], vec![2, 3, 7]]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "[\n  {\"label\": \"a\", \"poly\": [1, 0, 1]},\n  {\"label\": \"b\", \"poly\": [-1, 0, 1]}\n]";
        let e = parse_catalog(text, "c.json").unwrap_err().to_string();
        assert!(e.contains("c.json") && e.contains("line 3") && e.contains("reducible"), "{e}");
        let dup = "[{\"label\": \"a\", \"poly\": [1, 0, 1]},\n{\"label\": \"a\", \"poly\": [2, 0, 1]}]";
        let e = parse_catalog(dup, "d.json").unwrap_err().to_string();
        assert!(e.contains("line 2") && e.contains("duplicate label"), "{e}");
        let e = parse_catalog("[{\"label\": \"a\", \"poly\": [1, 2]}", "t.json").unwrap_err().to_string();
        assert!(e.contains("t.json"), "{e}");
        let e = parse_catalog("[{\"label\": \"m\", \"poly\": [1, 0, 2]}]", "m.json").unwrap_err().to_string();
        assert!(e.contains("not monic"), "{e}");
    }

    #[test]
    fn empty_catalog_warns() {
        let c = parse_catalog("[]", "e.json").unwrap();
        assert!(c.entries.is_empty());
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn paper_fields_parse() {
        let c = parse_catalog(
            r#"[{"label": "paper-f", "poly": [1,-3,5,-5,5,-3,1]}, {"label": "paper-g", "poly": [1,-1,0,2,0,-1,1]}]"#,
            "fg.json",
        )
        .unwrap();
        assert_eq!(c.entries.len(), 2);
        assert!(c.entries.iter().all(|e| e.provenance == Provenance::UserFile));
    }
}
