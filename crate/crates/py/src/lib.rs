//! Python bindings: manifold specs go in as JSON strings, results come back as dicts.

use pyo3::exceptions::{PyArithmeticError, PyMemoryError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use qtau::cyclo::{integrality_witness, CycNum};
use qtau::lie::RootSystem;
use qtau::manifold::{self, Flavor, ManifoldSpec};
use qtau::perturbative::{congruence_report, series_for_spec};
use qtau::weyl_sums::gauss_full;
use qtau::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::BadInput(m) => PyValueError::new_err(m),
        Error::Resource(m) => PyMemoryError::new_err(m),
        Error::Unsupported(m) => PyNotImplementedError::new_err(m),
        other => PyArithmeticError::new_err(other.to_string()),
    }
}

fn algebra(label: &str) -> PyResult<RootSystem> {
    RootSystem::from_label(label).map_err(err)
}

fn spec(json: &str) -> PyResult<ManifoldSpec> {
    ManifoldSpec::from_json(json).map_err(err)
}

fn value_dict<'py>(py: Python<'py>, x: &CycNum) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let (re, im) = x.to_complex();
    d.set_item("m", x.field.m)?;
    d.set_item("a", x.field.a)?;
    d.set_item("coeffs", x.to_string_coeffs())?;
    d.set_item("approx", (re, im))?;
    d.set_item("integral", integrality_witness(x).integral)?;
    Ok(d)
}

/// tau of a manifold spec (JSON) in the given flavor.
#[pyfunction]
#[pyo3(signature = (algebra_label, r, spec_json, flavor = "projective", zeta_exponent = 1))]
pub fn tau<'py>(
    py: Python<'py>,
    algebra_label: &str,
    r: i64,
    spec_json: &str,
    flavor: &str,
    zeta_exponent: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let rs = algebra(algebra_label)?;
    let flavor: Flavor = flavor.parse().map_err(err)?;
    let res = manifold::tau(&spec(spec_json)?, &rs, r, zeta_exponent, flavor).map_err(err)?;
    let d = value_dict(py, &res.value)?;
    d.set_item("flavor", flavor.to_string())?;
    d.set_item("defined", res.defined)?;
    d.set_item("admissible", res.admissible)?;
    Ok(d)
}

/// Perturbative coefficients as (numerator, denominator) string pairs, plus residue tables.
#[pyfunction]
#[pyo3(signature = (algebra_label, spec_json, order = 4, primes = vec![]))]
pub fn series<'py>(
    py: Python<'py>,
    algebra_label: &str,
    spec_json: &str,
    order: usize,
    primes: Vec<i64>,
) -> PyResult<Bound<'py, PyDict>> {
    let rs = algebra(algebra_label)?;
    let m = spec(spec_json)?;
    let s = series_for_spec(&rs, &m, order).map_err(err)?;
    let coeffs: Vec<(String, String)> = s.coeffs().iter().map(|c| (c.numer().to_string(), c.denom().to_string())).collect();
    let d = PyDict::new(py);
    d.set_item("coeffs", coeffs)?;
    let table = PyDict::new(py);
    for p in primes {
        let rep = congruence_report(&s, &m, &rs, p, order).map_err(err)?;
        let row = PyDict::new(py);
        row.set_item("residues", rep.residues)?;
        row.set_item("expected", rep.expected)?;
        row.set_item("pass", rep.pass)?;
        table.set_item(p, row)?;
    }
    d.set_item("residues", table)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (algebra_label, r, spec_json, zeta_exponent = 1))]
pub fn splitting_check(algebra_label: &str, r: i64, spec_json: &str, zeta_exponent: u64) -> PyResult<bool> {
    manifold::splitting_check(&spec(spec_json)?, &algebra(algebra_label)?, r, zeta_exponent).map_err(err)
}

#[pyfunction]
pub fn s_matrix_check(algebra_label: &str, r: i64) -> PyResult<bool> {
    manifold::s_matrix_check(&algebra(algebra_label)?, r).map_err(err)
}

/// Whether the Gauss sum over P_r and the weight lattice vanishes.
#[pyfunction]
pub fn gauss_vanishes(algebra_label: &str, r: i64) -> PyResult<bool> {
    let rs = algebra(algebra_label)?;
    let field = manifold::full_field(&rs, r, 1).map_err(err)?;
    Ok(gauss_full(&rs, r, &field).map_err(err)?.value.is_zero())
}

#[pymodule]
fn qtau_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_check, m)?)?;
    m.add_function(wrap_pyfunction!(s_matrix_check, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_vanishes, m)?)?;
    Ok(())
}
