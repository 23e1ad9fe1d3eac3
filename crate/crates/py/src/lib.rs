//! Python bindings: `import pydickson`.

use dickson_do::classify;
use dickson_do::dickson::{dickson_symbolic, frak_d, parse_parameter};
use dickson_do::planarity;
use dickson_do::weil;
use dickson_do::{FieldSpec, ParametricPoly, SparsePoly};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: dickson_do::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Symbolic `D_{k,m}(X^d, a)`, constant-free when `d > 1`.
#[pyfunction]
#[pyo3(signature = (k, m, d=1))]
fn dickson(k: u64, m: u64, d: u64) -> PyResult<String> {
    if d > 1 {
        Ok(frak_d(k, m, d).map_err(err)?.to_string())
    } else {
        Ok(dickson_symbolic(k, m).to_string())
    }
}

/// Reduced terms `(exponent, a_power, coeff)` of the constant-free polynomial mod `p`.
#[pyfunction]
fn reduced_terms(k: u64, m: u64, d: u64, p: u64) -> PyResult<Vec<(u64, u64, u64)>> {
    let poly = frak_d(k, m, d).map_err(err)?;
    Ok(poly
        .reduce_mod(p)
        .into_iter()
        .map(|t| (t.exponent, t.a_power, t.coeff))
        .collect())
}

#[pyfunction]
fn is_do(k: u64, m: u64, d: u64, p: u64) -> PyResult<bool> {
    Ok(classify::is_do(k, m, d, p).map_err(err)?.is_do)
}

#[pyfunction]
fn theorem_predicate(k: u64, m: u64, d: u64, p: u64) -> PyResult<bool> {
    classify::theorem_predicate(k, m, d, p).map_err(err)
}

/// Planarity of a polynomial such as `"x^10 + a*x^2"` over `field` (`"3^4"`).
#[pyfunction]
#[pyo3(signature = (field, poly, a=None))]
fn is_planar(field: &str, poly: &str, a: Option<&str>) -> PyResult<bool> {
    let f = FieldSpec::from_description(field).map_err(err)?;
    let a = a.map(|s| parse_parameter(&f, s)).transpose().map_err(err)?;
    let p = SparsePoly::parse(poly, &f, a).map_err(err)?;
    Ok(planarity::is_planar(&p).map_err(err)?.planar)
}

/// Discrete logs of the parameters `a` making the family planar.
#[pyfunction]
fn planar_dlogs(field: &str, poly: &str) -> PyResult<Vec<u64>> {
    let f = FieldSpec::from_description(field).map_err(err)?;
    let fam = ParametricPoly::parse(poly, &f).map_err(err)?;
    Ok(planarity::planar_set_sweep(&fam).map_err(err)?.dlogs)
}

#[pyfunction]
fn min_e(p: u64, deg: u64, boundary: u64) -> PyResult<u32> {
    Ok(weil::min_e_exceeding(p, deg, boundary).map_err(err)?.min_e)
}

/// Interval endpoints as exact strings.
#[pyfunction]
fn weil_interval(q: u64, deg: u64) -> (String, String) {
    let w = weil::weil_interval(q, deg);
    (w.lower.to_string(), w.upper.to_string())
}

#[pymodule]
fn pydickson(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(dickson, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_terms, m)?)?;
    m.add_function(wrap_pyfunction!(is_do, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_predicate, m)?)?;
    m.add_function(wrap_pyfunction!(is_planar, m)?)?;
    m.add_function(wrap_pyfunction!(planar_dlogs, m)?)?;
    m.add_function(wrap_pyfunction!(min_e, m)?)?;
    m.add_function(wrap_pyfunction!(weil_interval, m)?)?;
    Ok(())
}
