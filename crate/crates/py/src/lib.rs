//! Python bindings: `import pyseqgamma`.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use seqgamma::gamma_core::{self, GammaParams};
use seqgamma::monte_carlo::{self, SimulationPlan};
use seqgamma::pipeline::{self, AnalysisOptions, Dataset, TRANSFORMED_SHAPE};
use seqgamma::second_order::{self, ExpansionKind, ExpansionSpec};
use seqgamma::{Status, StoppingConfig, TargetFunction, TargetKind};

fn py_err(e: seqgamma::Error) -> PyErr {
    match e {
        seqgamma::Error::Io { .. } => PyIOError::new_err(e.to_string()),
        seqgamma::Error::Usage(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn kind_from(name: &str, c: Option<f64>) -> PyResult<TargetKind> {
    match (name.to_ascii_lowercase().as_str(), c) {
        ("mean", None) => Ok(TargetKind::Mean),
        ("variance", None) => Ok(TargetKind::Variance),
        ("rate", None) => Ok(TargetKind::Rate),
        ("survival", Some(c)) => Ok(TargetKind::Survival { c }),
        ("survival", None) => Err(PyValueError::new_err("the survival target needs c")),
        ("mean" | "variance" | "rate", Some(_)) => Err(PyValueError::new_err(
            "c applies only to the survival target",
        )),
        (other, _) => Err(PyValueError::new_err(format!("unknown target {other:?}"))),
    }
}

#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    gamma_core::log_gamma(x).map_err(py_err)
}

#[pyfunction]
fn reg_upper_gamma(a: f64, x: f64) -> PyResult<f64> {
    gamma_core::reg_upper_gamma(a, x).map_err(py_err)
}

#[pyfunction]
fn reg_lower_gamma(a: f64, x: f64) -> PyResult<f64> {
    gamma_core::reg_lower_gamma(a, x).map_err(py_err)
}

#[pyfunction]
fn gamma_pdf(x: f64, shape: f64, scale: f64) -> PyResult<f64> {
    gamma_core::gamma_pdf(x, shape, scale).map_err(py_err)
}

#[pyfunction]
fn expected_positive_part(shape: f64, threshold: f64) -> PyResult<f64> {
    second_order::expected_positive_part(shape, threshold).map_err(py_err)
}

/// Second-order constant `lim E[N - n*]` for the mean or variance rule.
#[pyfunction]
#[pyo3(signature = (kind, alpha, epsilon = second_order::DEFAULT_TRUNCATION_EPSILON))]
fn second_order_constant(kind: &str, alpha: f64, epsilon: f64) -> PyResult<f64> {
    let expansion = ExpansionKind::for_target(kind_from(kind, None)?).ok_or_else(|| {
        PyValueError::new_err("second-order expansion unavailable for this target")
    })?;
    second_order::second_order_constant(&ExpansionSpec::new(expansion, alpha).with_epsilon(epsilon))
        .map_err(py_err)
}

#[pyfunction]
fn normal_gamma_transform(xs: Vec<f64>) -> PyResult<Vec<f64>> {
    pipeline::normal_gamma_transform(&xs).map_err(py_err)
}

#[pyclass(name = "Target", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyTarget {
    inner: TargetFunction,
}

#[pymethods]
impl PyTarget {
    #[new]
    #[pyo3(signature = (kind, alpha, c = None))]
    fn new(kind: &str, alpha: f64, c: Option<f64>) -> PyResult<Self> {
        let inner = TargetFunction::new(kind_from(kind, c)?, alpha).map_err(py_err)?;
        Ok(PyTarget { inner })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn c(&self) -> Option<f64> {
        match self.inner.kind() {
            TargetKind::Survival { c } => Some(c),
            _ => None,
        }
    }

    fn value(&self, beta: f64) -> PyResult<f64> {
        self.inner.value(beta).map_err(py_err)
    }

    fn derivative(&self, beta: f64) -> PyResult<f64> {
        self.inner.derivative(beta).map_err(py_err)
    }

    #[pyo3(signature = (p = seqgamma::target::DEFAULT_MOMENT_ORDER))]
    fn min_pilot_size(&self, p: f64) -> PyResult<u64> {
        self.inner.min_pilot_size(p).map_err(py_err)
    }

    fn optimal_sample_size(&self, beta: f64, b: f64) -> PyResult<f64> {
        self.inner.optimal_sample_size(beta, b).map_err(py_err)
    }

    fn stopping_boundary(&self, beta_hat: f64, b: f64) -> PyResult<f64> {
        self.inner.stopping_boundary(beta_hat, b).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Target({}, alpha={})",
            self.inner.kind(),
            self.inner.alpha()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (target, p = seqgamma::target::DEFAULT_MOMENT_ORDER))]
fn min_pilot_size(target: &PyTarget, p: f64) -> PyResult<u64> {
    target.min_pilot_size(p)
}

#[pyfunction]
fn optimal_sample_size(target: &PyTarget, beta: f64, b: f64) -> PyResult<f64> {
    target.optimal_sample_size(beta, b)
}

#[pyfunction]
fn stopping_boundary(target: &PyTarget, beta_hat: f64, b: f64) -> PyResult<f64> {
    target.stopping_boundary(beta_hat, b)
}

fn config(target: &PyTarget, m: u64, b: f64, cap: Option<u64>) -> StoppingConfig {
    let cfg = StoppingConfig::new(m, b, target.inner.alpha());
    match cap {
        Some(cap) => cfg.with_cap(cap),
        None => cfg,
    }
}

/// Streaming estimator; feed observations with `observe` until it returns
/// `True`.
#[pyclass(name = "SequentialEstimator")]
struct PyEstimator {
    inner: seqgamma::SequentialEstimator,
}

#[pymethods]
impl PyEstimator {
    #[new]
    #[pyo3(signature = (target, m, b, cap = None))]
    fn new(target: &PyTarget, m: u64, b: f64, cap: Option<u64>) -> PyResult<Self> {
        let inner = seqgamma::SequentialEstimator::new(target.inner, config(target, m, b, cap))
            .map_err(py_err)?;
        Ok(PyEstimator { inner })
    }

    /// Returns `True` once the rule has stopped.
    fn observe(&mut self, x: f64) -> PyResult<bool> {
        Ok(self.inner.observe(x).map_err(py_err)? == Status::Stopped)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.state().n()
    }

    #[getter]
    fn stopped(&self) -> bool {
        self.inner.state().is_stopped()
    }

    #[getter]
    fn boundary(&self) -> Option<f64> {
        self.inner.current_boundary()
    }

    fn result<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(r) = self.inner.result() else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        d.set_item("terminal_n", r.terminal_n)?;
        d.set_item("beta_hat", r.beta_hat)?;
        d.set_item("estimate", r.g_estimate)?;
        d.set_item("boundary_at_stop", r.boundary_at_stop)?;
        d.set_item("stopped_by_cap", r.stopped_by_cap)?;
        Ok(Some(d))
    }
}

/// One simulation-table row; the GIL is released while replications run.
#[pyfunction]
#[pyo3(signature = (target, beta, m, b, reps = 10_000, seed = 42, cap = None))]
#[allow(clippy::too_many_arguments)]
fn run_simulation<'py>(
    py: Python<'py>,
    target: &PyTarget,
    beta: f64,
    m: u64,
    b: f64,
    reps: u64,
    seed: u64,
    cap: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let plan = SimulationPlan {
        target: target.inner,
        true_params: GammaParams::new(target.inner.alpha(), beta).map_err(py_err)?,
        config: config(target, m, b, cap),
        replications: reps,
        seed,
    };
    let s = py
        .detach(|| monte_carlo::run_simulation(&plan))
        .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("b", s.b)?;
    d.set_item("n_star", s.n_star)?;
    d.set_item("n_bar", s.n_bar)?;
    d.set_item("s_n", s.s_n)?;
    d.set_item("ratio_first_order", s.ratio_first_order)?;
    d.set_item("diff_second_order", s.diff_second_order)?;
    d.set_item("g_bar", s.g_bar)?;
    d.set_item("var_g", s.var_g)?;
    d.set_item("var_ratio", s.var_ratio)?;
    d.set_item("replications", s.replications)?;
    d.set_item("cap_hits", s.cap_hits)?;
    d.set_item("degenerate", s.degenerate)?;
    Ok(d)
}

/// Runs one rule over the normal-gamma transform of `values` (shape 1/2).
#[pyfunction]
#[pyo3(signature = (values, kind, m, b, c = None, drop_zeros = false))]
fn analyze<'py>(
    py: Python<'py>,
    values: Vec<f64>,
    kind: &str,
    m: u64,
    b: f64,
    c: Option<f64>,
    drop_zeros: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let dataset = Dataset::new(values, "python").map_err(py_err)?;
    let report = pipeline::analyze(
        &dataset,
        kind_from(kind, c)?,
        m,
        b,
        AnalysisOptions { drop_zeros },
    )
    .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("target", report.target.kind().name())?;
    d.set_item("alpha", TRANSFORMED_SHAPE)?;
    d.set_item("m", report.m)?;
    d.set_item("b", report.b)?;
    d.set_item("terminal_n", report.terminal_n)?;
    d.set_item("estimate", report.estimate)?;
    d.set_item("exhausted", report.exhausted)?;
    d.set_item("available", report.available)?;
    d.set_item("dropped_zeros", report.dropped_zeros)?;
    Ok(d)
}

#[pymodule]
fn pyseqgamma(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTarget>()?;
    m.add_class::<PyEstimator>()?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(reg_upper_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(reg_lower_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_pdf, m)?)?;
    m.add_function(wrap_pyfunction!(expected_positive_part, m)?)?;
    m.add_function(wrap_pyfunction!(second_order_constant, m)?)?;
    m.add_function(wrap_pyfunction!(normal_gamma_transform, m)?)?;
    m.add_function(wrap_pyfunction!(min_pilot_size, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_sample_size, m)?)?;
    m.add_function(wrap_pyfunction!(stopping_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(run_simulation, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    Ok(())
}
