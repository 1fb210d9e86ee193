//! Python bindings for the two-qutrit correlated-damping simulator.
//!
//! Density matrices cross the language boundary as row-major nested lists of
//! Python complex numbers (9x9 for two-qutrit states, basis |ij> at index
//! 3*i + j). Every library error surfaces as a `ValueError` carrying the
//! original message, including the zero-probability post-selection failure.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qutrit_cad::channels::{cad_apply, ChannelParams};
use qutrit_cad::protection::{
    eam_qmr_pipeline, optimal_qmr_eam, optimal_qmr_wm, wm_qmr_pipeline, ProtectionParams,
};
use qutrit_cad::states::{make_state, negativity, validate_density};
use qutrit_cad::{ComplexMatrix, StateAmplitudes, StateClass};

fn verr(err: qutrit_cad::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_class(name: &str) -> PyResult<StateClass> {
    match name {
        "class1" => Ok(StateClass::Class1),
        "class2" => Ok(StateClass::Class2),
        other => Err(PyValueError::new_err(format!(
            "unknown state class `{other}`; expected `class1` or `class2`"
        ))),
    }
}

fn to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let dim = rows.len();
    if dim == 0 || rows.iter().any(|row| row.len() != dim) {
        return Err(PyValueError::new_err(format!(
            "matrix must be square and non-empty, got {dim} rows"
        )));
    }
    Ok(ComplexMatrix::from_fn(dim, |i, j| rows[i][j]))
}

fn from_matrix(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Pure two-qutrit state for the given family ("class1" or "class2") and
/// amplitudes, as a 9x9 density matrix.
#[pyfunction]
#[pyo3(name = "make_state")]
fn py_make_state(
    class: &str,
    alpha: f64,
    beta: Complex64,
    gamma: Complex64,
) -> PyResult<Vec<Vec<Complex64>>> {
    let amps = StateAmplitudes::new(alpha, beta, gamma).map_err(verr)?;
    Ok(from_matrix(&make_state(parse_class(class)?, &amps)))
}

/// Maximally entangled member of the given family (all amplitudes 1/sqrt(3)).
#[pyfunction]
#[pyo3(name = "balanced_state")]
fn py_balanced_state(class: &str) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(from_matrix(&make_state(
        parse_class(class)?,
        &StateAmplitudes::balanced(),
    )))
}

/// Negativity of a two-qutrit density matrix (partial transpose over the
/// second qutrit), clamped to [0, 1].
#[pyfunction]
#[pyo3(name = "negativity")]
fn py_negativity(rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    negativity(&to_matrix(rho)?).map_err(verr)
}

/// Density-matrix health report as a dict with keys `is_valid`, `hermitian`,
/// `unit_trace`, `positive`, `hermiticity_defect`, `trace_deviation`,
/// `min_eigenvalue`.
#[pyfunction]
#[pyo3(name = "validate_density")]
fn py_validate_density<'py>(
    py: Python<'py>,
    rho: Vec<Vec<Complex64>>,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    use pyo3::types::PyDict;
    let report = validate_density(&to_matrix(rho)?);
    let dict = PyDict::new(py);
    dict.set_item("is_valid", report.is_valid())?;
    dict.set_item("hermitian", report.hermitian)?;
    dict.set_item("unit_trace", report.unit_trace)?;
    dict.set_item("positive", report.positive)?;
    dict.set_item("hermiticity_defect", report.hermiticity_defect)?;
    dict.set_item("trace_deviation", report.trace_deviation)?;
    dict.set_item("min_eigenvalue", report.min_eigenvalue)?;
    Ok(dict)
}

/// Send a two-qutrit state through the correlated amplitude damping channel
/// with single-qutrit damping strengths (d1, d2) and correlation mu.
#[pyfunction]
#[pyo3(name = "cad_apply")]
fn py_cad_apply(
    rho: Vec<Vec<Complex64>>,
    d1: f64,
    d2: f64,
    mu: f64,
) -> PyResult<Vec<Vec<Complex64>>> {
    let ch = ChannelParams::new(d1, d2, mu).map_err(verr)?;
    Ok(from_matrix(&cad_apply(&to_matrix(rho)?, &ch).map_err(verr)?))
}

/// Weak measurement (strengths p, q) + channel + reversal (strengths p_r,
/// q_r) pipeline. Returns `(state, probability)` for the post-selected
/// branch; raises `ValueError` when the branch probability vanishes.
#[pyfunction]
#[pyo3(name = "wm_qmr")]
#[allow(clippy::too_many_arguments)]
fn py_wm_qmr(
    rho: Vec<Vec<Complex64>>,
    p: f64,
    q: f64,
    p_r: f64,
    q_r: f64,
    d1: f64,
    d2: f64,
    mu: f64,
) -> PyResult<(Vec<Vec<Complex64>>, f64)> {
    let prot = ProtectionParams::new(p, q, p_r, q_r).map_err(verr)?;
    let ch = ChannelParams::new(d1, d2, mu).map_err(verr)?;
    let outcome = wm_qmr_pipeline(&to_matrix(rho)?, &prot, &ch).map_err(verr)?;
    Ok((from_matrix(&outcome.state), outcome.probability))
}

/// Environment-assisted measurement (no-click post-selection) + reversal
/// pipeline. Returns `(state, probability)`.
#[pyfunction]
#[pyo3(name = "eam_qmr")]
fn py_eam_qmr(
    rho: Vec<Vec<Complex64>>,
    p_r: f64,
    q_r: f64,
    d1: f64,
    d2: f64,
    mu: f64,
) -> PyResult<(Vec<Vec<Complex64>>, f64)> {
    let prot = ProtectionParams::new(0.0, 0.0, p_r, q_r).map_err(verr)?;
    let ch = ChannelParams::new(d1, d2, mu).map_err(verr)?;
    let outcome = eam_qmr_pipeline(&to_matrix(rho)?, &prot, &ch).map_err(verr)?;
    Ok((from_matrix(&outcome.state), outcome.probability))
}

/// State-independent reversal strengths undoing weak measurement plus
/// damping: `(1 - (1-q)(1-d2), 1 - (1-p)(1-d1))`.
#[pyfunction]
#[pyo3(name = "optimal_qmr_wm")]
fn py_optimal_qmr_wm(p: f64, q: f64, d1: f64, d2: f64) -> PyResult<(f64, f64)> {
    optimal_qmr_wm(p, q, d1, d2).map_err(verr)
}

/// Reversal strengths for the environment-assisted protocol: `(d1, d2)`.
#[pyfunction]
#[pyo3(name = "optimal_qmr_eam")]
fn py_optimal_qmr_eam(d1: f64, d2: f64) -> PyResult<(f64, f64)> {
    optimal_qmr_eam(d1, d2).map_err(verr)
}

#[pymodule]
fn qutrit_cad_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(py_make_state, m)?)?;
    m.add_function(wrap_pyfunction!(py_balanced_state, m)?)?;
    m.add_function(wrap_pyfunction!(py_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(py_validate_density, m)?)?;
    m.add_function(wrap_pyfunction!(py_cad_apply, m)?)?;
    m.add_function(wrap_pyfunction!(py_wm_qmr, m)?)?;
    m.add_function(wrap_pyfunction!(py_eam_qmr, m)?)?;
    m.add_function(wrap_pyfunction!(py_optimal_qmr_wm, m)?)?;
    m.add_function(wrap_pyfunction!(py_optimal_qmr_eam, m)?)?;
    Ok(())
}
