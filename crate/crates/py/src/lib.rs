//! Python bindings for `grover_gme`.

use std::str::FromStr;

use grover_gme::oracle::{self, DenseState, MarkedBits};
use grover_gme::{CurveMode, GmeError, Preset};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: GmeError) -> PyErr {
    match e {
        GmeError::Resource(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Marked basis states described by their Hamming weights.
#[pyclass(name = "MarkedSet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMarkedSet {
    inner: grover_gme::MarkedSet,
}

#[pymethods]
impl PyMarkedSet {
    /// One entry per marked state.
    #[new]
    fn new(n: u32, weights: Vec<u32>) -> PyResult<Self> {
        Ok(Self { inner: grover_gme::MarkedSet::new(n, &weights).map_err(py_err)? })
    }

    /// `product`, `ghz`, `w` or `dicke:<w>`.
    #[staticmethod]
    fn preset(name: &str, n: u32) -> PyResult<Self> {
        let preset = Preset::from_str(name).map_err(py_err)?;
        Ok(Self { inner: preset.marked(n).map_err(py_err)? })
    }

    /// `(weight, count)` pairs.
    #[staticmethod]
    fn from_counts(n: u32, counts: Vec<(u32, u128)>) -> PyResult<Self> {
        Ok(Self { inner: grover_gme::MarkedSet::from_multiplicities(n, counts).map_err(py_err)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn count(&self) -> u128 {
        self.inner.count()
    }

    #[getter]
    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    #[getter]
    fn weights(&self) -> Vec<(u32, u128)> {
        self.inner.weights().collect()
    }

    fn __repr__(&self) -> String {
        format!("MarkedSet({})", self.inner)
    }
}

#[pyclass(name = "ExactGme", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyExactGme {
    gme: f64,
    alpha_star: f64,
    beta_star: f64,
    max_overlap: f64,
}

#[pyclass(name = "Turning", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyTurning {
    theta: f64,
    ratio: f64,
    b_max: f64,
    alpha_star: f64,
    peak_gme: f64,
    final_gme: f64,
}

impl From<grover_gme::Turning> for PyTurning {
    fn from(t: grover_gme::Turning) -> Self {
        Self {
            theta: t.theta,
            ratio: t.ratio(),
            b_max: t.b_max.value,
            alpha_star: t.b_max.alpha_star,
            peak_gme: t.peak_gme(),
            final_gme: t.final_gme(),
        }
    }
}

/// GME along `k = 0..=k_opt`, stored column by column.
#[pyclass(name = "GmeCurve", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyGmeCurve {
    mode: String,
    k_opt: u128,
    theta: f64,
    b_max: f64,
    turning_theta: f64,
    turning_k: f64,
    turning_ratio: f64,
    peak_gme: f64,
    peak_k: u64,
    k: Vec<u64>,
    ratio: Vec<f64>,
    theta_k: Vec<f64>,
    gme_exact: Vec<Option<f64>>,
    gme_asymptotic: Vec<Option<f64>>,
    alpha_star: Vec<Option<f64>>,
}

/// `(θ, k_opt)` of the search.
#[pyfunction]
fn make_schedule(marked: &PyMarkedSet) -> PyResult<(f64, u128)> {
    let s = grover_gme::make_schedule(&marked.inner).map_err(py_err)?;
    Ok((s.theta, s.k_opt))
}

#[pyfunction]
fn overlap(marked: &PyMarkedSet, theta_k: f64, alpha: f64) -> PyResult<f64> {
    grover_gme::overlap(&marked.inner, theta_k, alpha).map_err(py_err)
}

#[pyfunction]
fn gme_exact(marked: &PyMarkedSet, theta_k: f64) -> PyResult<PyExactGme> {
    let e = grover_gme::gme_exact(&marked.inner, theta_k).map_err(py_err)?;
    Ok(PyExactGme {
        gme: e.gme,
        alpha_star: e.alpha_star,
        beta_star: e.beta_star,
        max_overlap: e.max_overlap,
    })
}

/// `(B_max, α*)`.
#[pyfunction]
fn b_max(marked: &PyMarkedSet) -> (f64, f64) {
    let b = grover_gme::b_max(&marked.inner);
    (b.value, b.alpha_star)
}

#[pyfunction]
fn turning_point(marked: &PyMarkedSet) -> PyResult<PyTurning> {
    Ok(grover_gme::turning_point(&marked.inner).map_err(py_err)?.into())
}

#[pyfunction]
fn gme_asymptotic(marked: &PyMarkedSet, theta_k: f64) -> PyResult<f64> {
    grover_gme::gme_asymptotic(&marked.inner, theta_k).map_err(py_err)
}

/// `mode` is `exact`, `asymptotic` or `both`. Releases the interpreter while
/// the curve is computed.
#[pyfunction]
#[pyo3(signature = (marked, mode = "both"))]
fn gme_curve(py: Python<'_>, marked: &PyMarkedSet, mode: &str) -> PyResult<PyGmeCurve> {
    let mode = CurveMode::from_str(mode).map_err(py_err)?;
    let set = marked.inner.clone();
    let c = py.detach(move || grover_gme::gme_curve(&set, mode)).map_err(py_err)?;
    let column = |f: fn(&grover_gme::GmePoint) -> Option<f64>| c.points.iter().map(f).collect();
    Ok(PyGmeCurve {
        mode: c.mode.to_string(),
        k_opt: c.schedule.k_opt,
        theta: c.schedule.theta,
        b_max: c.b_max,
        turning_theta: c.turning_theta,
        turning_k: c.turning_k,
        turning_ratio: c.turning_ratio(),
        peak_gme: c.peak_gme,
        peak_k: c.peak_k,
        k: c.points.iter().map(|p| p.k).collect(),
        ratio: c.points.iter().map(|p| p.ratio).collect(),
        theta_k: c.points.iter().map(|p| p.theta_k).collect(),
        gme_exact: column(|p| p.gme_exact),
        gme_asymptotic: column(|p| p.gme_asymptotic),
        alpha_star: column(|p| p.alpha_star),
    })
}

/// `(α, A, B, g)` rows.
#[pyfunction]
fn ab_profile(marked: &PyMarkedSet, alphas: Vec<f64>) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let rows = grover_gme::ab_profile(&marked.inner, &alphas).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.alpha, r.a, r.b, r.g)).collect())
}

/// `(rows, scale_invariant)` with rows of
/// `(n, b_max, alpha_star, turning_theta, turning_ratio, peak_gme, final_gme)`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn scale_invariance_sweep(
    preset: &str,
    ns: Vec<u32>,
) -> PyResult<(Vec<(u32, f64, f64, f64, f64, f64, f64)>, bool)> {
    let family = Preset::from_str(preset).map_err(py_err)?;
    let report = grover_gme::scale_invariance_sweep(|n| family.marked(n), &ns).map_err(py_err)?;
    let rows = report
        .rows
        .iter()
        .map(|r| (r.n, r.b_max, r.alpha_star, r.turning_theta, r.turning_ratio, r.peak_gme, r.final_gme))
        .collect();
    Ok((rows, report.scale_invariant))
}

fn dense(amplitudes: Vec<f64>) -> PyResult<DenseState> {
    let len = amplitudes.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(PyValueError::new_err(format!("{len} amplitudes is not 2^n for n >= 1")));
    }
    DenseState::from_amplitudes(len.trailing_zeros(), amplitudes).map_err(py_err)
}

/// Statevectors `G^k |ψ0>` for `k = 0..=steps`; bitstrings are written most
/// significant qubit first and index `x` holds basis state `x`.
#[pyfunction]
fn grover_trajectory(n: u32, marked_bits: Vec<String>, steps: usize) -> PyResult<Vec<Vec<f64>>> {
    let bits = MarkedBits::parse(n, &marked_bits).map_err(py_err)?;
    let states = oracle::grover_trajectory(&bits, steps).map_err(py_err)?;
    Ok(states.into_iter().map(|s| s.amplitudes().to_vec()).collect())
}

/// Brute-force nearest product state: `(gme, [(α_s, β_s), ...])`.
#[pyfunction]
#[pyo3(signature = (amplitudes, restrict_symmetric = false))]
fn oracle_gme(
    py: Python<'_>,
    amplitudes: Vec<f64>,
    restrict_symmetric: bool,
) -> PyResult<(f64, Vec<(f64, f64)>)> {
    let state = dense(amplitudes)?;
    let found = py.detach(move || oracle::oracle_gme(&state, restrict_symmetric)).map_err(py_err)?;
    Ok((found.gme, found.ansatz.angles))
}

#[pyfunction]
fn check_permutation_symmetry(amplitudes: Vec<f64>) -> PyResult<bool> {
    Ok(oracle::check_permutation_symmetry(&dense(amplitudes)?))
}

#[pymodule]
fn grover_gme_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMarkedSet>()?;
    m.add_class::<PyExactGme>()?;
    m.add_class::<PyTurning>()?;
    m.add_class::<PyGmeCurve>()?;
    m.add_function(wrap_pyfunction!(make_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(gme_exact, m)?)?;
    m.add_function(wrap_pyfunction!(b_max, m)?)?;
    m.add_function(wrap_pyfunction!(turning_point, m)?)?;
    m.add_function(wrap_pyfunction!(gme_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(gme_curve, m)?)?;
    m.add_function(wrap_pyfunction!(ab_profile, m)?)?;
    m.add_function(wrap_pyfunction!(scale_invariance_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(grover_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_gme, m)?)?;
    m.add_function(wrap_pyfunction!(check_permutation_symmetry, m)?)?;
    Ok(())
}
