//! Python bindings for the guesswork solver.
//!
//! ```python
//! import guesswork_py as gw
//! e = gw.Ensemble.polyhedron("octahedron")
//! s = e.solve()
//! s.g_min, s.status, s.ordering
//! ```

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use guesswork::io::{EnsembleFile, SolutionReport};
use guesswork::{closed_form, score, solver, BlochVector, Error, HermitianOperator, Method, SolveConfig};

create_exception!(guesswork_py, CapExceededError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    if e.is_capability() {
        CapExceededError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn rows(op: &HermitianOperator) -> Vec<Vec<Complex64>> {
    let d = op.dim();
    (0..d).map(|i| (0..d).map(|j| op.entry(i, j)).collect()).collect()
}

/// A labeled quantum ensemble `m -> M(m) = p(m) rho_m` with total trace 1.
#[pyclass(name = "Ensemble", frozen)]
struct PyEnsemble {
    inner: guesswork::Ensemble,
}

#[pymethods]
impl PyEnsemble {
    /// Regular `count`-gon of pure qubit states with uniform priors.
    #[staticmethod]
    fn polygon(count: usize) -> PyResult<Self> {
        Ok(Self {
            inner: guesswork::Ensemble::polygon(count).map_err(to_py)?,
        })
    }

    /// Regular polyhedron by name: tetrahedron, octahedron, cube,
    /// icosahedron or dodecahedron.
    #[staticmethod]
    fn polyhedron(name: &str) -> PyResult<Self> {
        let shape = name.parse().map_err(to_py)?;
        Ok(Self {
            inner: guesswork::Ensemble::polyhedron(shape),
        })
    }

    /// Uniform-prior qubit ensemble from Bloch vectors, labeled m0, m1, ...
    #[staticmethod]
    fn uniform_qubit(vectors: Vec<[f64; 3]>) -> PyResult<Self> {
        let vectors = vectors
            .into_iter()
            .map(|[x, y, z]| BlochVector::new(x, y, z))
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        Ok(Self {
            inner: guesswork::Ensemble::uniform_qubit(&vectors).map_err(to_py)?,
        })
    }

    /// Ensemble from an ensemble-file JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file = EnsembleFile::parse(text).map_err(to_py)?;
        Ok(Self {
            inner: file.to_ensemble().map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(Self {
            inner: guesswork::io::load_ensemble(&path).map_err(to_py)?,
        })
    }

    /// Matrix-form ensemble-file JSON document.
    fn to_json(&self) -> String {
        EnsembleFile::from_ensemble(&self.inner).to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// `M(label)` as a nested list of complex numbers.
    fn operator(&self, label: &str) -> PyResult<Vec<Vec<Complex64>>> {
        let m = self
            .inner
            .index_of(label)
            .ok_or_else(|| PyValueError::new_err(format!("unknown label {label:?}")))?;
        Ok(rows(self.inner.operator(m)))
    }

    /// Score operator of the ordering given as labels, rank 1 first.
    fn score_operator(&self, ordering: Vec<String>) -> PyResult<Vec<Vec<Complex64>>> {
        let n = self.inner.ordering_from_labels(&ordering).map_err(to_py)?;
        Ok(rows(&score::score_operator(&self.inner, &n).map_err(to_py)?))
    }

    /// Whether `|E(n*)|` dominates every score operator.
    #[pyo3(signature = (ordering, tolerance = score::DEFAULT_CONDITION_TOL, cap = score::DEFAULT_CAP))]
    fn check_condition(&self, py: Python<'_>, ordering: Vec<String>, tolerance: f64, cap: usize) -> PyResult<bool> {
        let n = self.inner.ordering_from_labels(&ordering).map_err(to_py)?;
        py.detach(|| score::check_condition(&self.inner, &n, tolerance, cap))
            .map_err(to_py)
    }

    /// `(|M| + 1)/2 - ||E(n*)||_1 / 2`; the minimum guesswork when the
    /// condition holds at `ordering`.
    fn certified_value(&self, ordering: Vec<String>) -> PyResult<f64> {
        let n = self.inner.ordering_from_labels(&ordering).map_err(to_py)?;
        score::certified_value(&self.inner, &n).map_err(to_py)
    }

    #[pyo3(signature = (method = "auto", cap = score::DEFAULT_CAP, starts = None, tolerance = score::DEFAULT_CONDITION_TOL, long_running = false))]
    fn solve(
        &self,
        py: Python<'_>,
        method: &str,
        cap: usize,
        starts: Option<usize>,
        tolerance: f64,
        long_running: bool,
    ) -> PyResult<PySolution> {
        let method: Method = method.parse().map_err(PyValueError::new_err)?;
        let config = SolveConfig {
            cap,
            starts,
            tolerance,
            long_running,
            ..SolveConfig::default()
        };
        let solution = py
            .detach(|| solver::solve(&self.inner, method, &config))
            .map_err(to_py)?;
        Ok(PySolution {
            report: SolutionReport::new(&self.inner, &solution),
        })
    }

    fn __repr__(&self) -> String {
        format!("Ensemble(dim={}, labels={:?})", self.inner.dim(), self.inner.labels())
    }
}

/// Result of `Ensemble.solve`.
#[pyclass(name = "Solution", frozen)]
struct PySolution {
    report: SolutionReport,
}

#[pymethods]
impl PySolution {
    #[getter]
    fn g_min(&self) -> f64 {
        self.report.g_min
    }

    /// "Certified" or "BoundsOnly".
    #[getter]
    fn status(&self) -> &str {
        &self.report.status
    }

    #[getter]
    fn ordering(&self) -> Vec<String> {
        self.report.ordering.clone()
    }

    #[getter]
    fn trace_norm(&self) -> f64 {
        self.report.trace_norm
    }

    #[getter]
    fn lower_bound(&self) -> f64 {
        self.report.lower_bound
    }

    #[getter]
    fn upper_bound(&self) -> f64 {
        self.report.upper_bound
    }

    #[getter]
    fn q_marginal(&self) -> Vec<f64> {
        self.report.q_marginal.clone()
    }

    #[getter]
    fn decreasing(&self) -> bool {
        self.report.decreasing
    }

    #[getter]
    fn method(&self) -> &str {
        &self.report.method
    }

    #[getter]
    fn orderings_evaluated(&self) -> u64 {
        self.report.orderings_evaluated
    }

    #[getter]
    fn elapsed_ms(&self) -> u64 {
        self.report.elapsed_ms
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.report).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "Solution(g_min={}, status={}, method={})",
            self.report.g_min, self.report.status, self.report.method
        )
    }
}

/// Optimal score-operator trace norm of the regular `count`-gon.
#[pyfunction]
fn polygon_trace_norm(count: usize) -> PyResult<f64> {
    closed_form::polygon_trace_norm(count).map_err(to_py)
}

/// Minimum guesswork of the regular `count`-gon.
#[pyfunction]
fn polygon_value(count: usize) -> PyResult<f64> {
    closed_form::polygon_value(count).map_err(to_py)
}

/// Reference minimum guesswork of the regular polyhedron with `count`
/// vertices.
#[pyfunction]
fn polyhedron_reference(count: usize) -> PyResult<f64> {
    closed_form::polyhedron_reference(count).map_err(to_py)
}

#[pymodule]
fn guesswork_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEnsemble>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(polygon_trace_norm, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_value, m)?)?;
    m.add_function(wrap_pyfunction!(polyhedron_reference, m)?)?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    Ok(())
}
