//! Python bindings. Structured results come back as JSON strings, the same
//! documents the CLI writes.

use pyo3::prelude::*;

fn err(e: algapprox::Error) -> PyErr {
    pyo3::exceptions::PyValueError::new_err(e.to_string())
}

fn field(label: &str, poly: Vec<i64>) -> PyResult<algapprox::algnum::NumberField> {
    algapprox::algnum::NumberField::new(label, algapprox::IntPoly::from_i64s(&poly)).map_err(err)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    algapprox::harness::to_json(v)
}

#[pymodule]
mod algapprox_py {
    use super::*;
    use algapprox::{approx, criteria, harness, normform, IntPoly};
    use num_bigint::BigInt;

    /// Norm of `x_0 + x_1 ξ + … + x_n ξ^n` in `Q[X]/(poly)` (poly monic, constant term first).
    #[pyfunction]
    fn norm_of_vector(poly: Vec<i64>, x: Vec<i64>) -> PyResult<BigInt> {
        Ok(normform::norm_of_vector(&field("", poly)?, &x))
    }

    #[pyfunction]
    fn is_totally_complex(poly: Vec<i64>) -> PyResult<bool> {
        criteria::is_totally_complex(&IntPoly::from_i64s(&poly)).map_err(err)
    }

    /// `True`, `False`, or `None` when the search budget ran out.
    #[pyfunction]
    fn is_galois(poly: Vec<i64>) -> PyResult<Option<bool>> {
        Ok(criteria::is_galois(&IntPoly::from_i64s(&poly)).map_err(err)?.as_bool())
    }

    #[pyfunction]
    #[pyo3(signature = (poly, ns = vec![3, 4], label = "field"))]
    fn classify(poly: Vec<i64>, ns: Vec<usize>, label: &str) -> PyResult<String> {
        let k = field(label, poly)?;
        let mut rep = criteria::classify_field(&k, &ns).map_err(err)?;
        if k.poly() == &IntPoly::from_i64s(&harness::catalog::PAPER_F) {
            harness::golden::assign_labels(&mut rep, &harness::golden::F_LABELS);
        }
        Ok(json(&rep))
    }

    #[pyfunction]
    #[pyo3(signature = (r = 2, s = 3, count = 6))]
    fn pell(r: u64, s: u64, count: usize) -> PyResult<String> {
        let recs = approx::pell_solve(r, count)
            .map_err(err)?
            .iter()
            .map(|sol| approx::pell_approximant(r, s, sol))
            .collect::<algapprox::Result<Vec<_>>>()
            .map_err(err)?;
        Ok(json(&recs))
    }

    #[pyfunction]
    #[pyo3(signature = (poly, n = 2, hmax = 20, embedding = 0))]
    fn estimate_exponents(poly: Vec<i64>, n: usize, hmax: u32, embedding: usize) -> PyResult<String> {
        let k = field("field", poly)?;
        if embedding >= k.degree() {
            return Err(pyo3::exceptions::PyIndexError::new_err("embedding out of range"));
        }
        let t = approx::estimate_exponents(k.embedding(embedding), n, hmax, None, None).map_err(err)?;
        Ok(json(&t))
    }

    #[pyfunction]
    #[pyo3(signature = (poly, n, m, xmax))]
    fn enumerate_solutions(poly: Vec<i64>, n: usize, m: i64, xmax: i64) -> PyResult<String> {
        let k = field("field", poly)?;
        let e = normform::enumerate_solutions(&k, n, &BigInt::from(m), normform::SignMode::Both, xmax, None)
            .map_err(err)?;
        Ok(json(&e))
    }

    #[pyfunction]
    #[pyo3(signature = (poly, n, xmax, fit_from = normform::DEFAULT_FIT_FROM))]
    fn min_norm_profile(poly: Vec<i64>, n: usize, xmax: i64, fit_from: i64) -> PyResult<String> {
        let k = field("field", poly)?;
        Ok(json(&normform::min_norm_profile(&k, n, xmax, fit_from, None).map_err(err)?))
    }

    #[pyfunction]
    #[pyo3(signature = (degrees = vec![8], per_field = 100, r = 10, seed = 20260101))]
    fn sample_experiment(degrees: Vec<usize>, per_field: usize, r: i64, seed: u64) -> PyResult<String> {
        let cat = harness::builtin_catalog(&degrees).map_err(err)?;
        Ok(harness::sample_experiment(&cat, per_field, r, seed).map_err(err)?.to_json())
    }

    #[pyfunction]
    fn golden_suite() -> String {
        json(&harness::golden_suite())
    }
}
