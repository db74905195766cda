//! Python bindings: instances, generators, the shrinking pipeline and the
//! enumeration oracle.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cutpersist::criteria::PersistencyCertificate;
use cutpersist::generate::{generate, Family};
use cutpersist::io::{parse_str, read_instance, to_text, ParseOptions};
use cutpersist::pipeline::{self, PipelineConfig, ShrinkState, Stage};
use cutpersist::report::Report;
use cutpersist::{EdgeLabeling, Error, ProblemInstance, ProblemKind};

fn py_err(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// A weighted graph with its problem kind ("multicut" or "maxcut"), in
/// minimization form.
#[pyclass(name = "Instance", module = "cutpersist", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: ProblemInstance,
}

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (kind, node_count, edges, objective_constant=0.0))]
    fn new(kind: &str, node_count: usize, edges: Vec<(usize, usize, f64)>, objective_constant: f64) -> PyResult<Self> {
        let kind: ProblemKind = kind.parse().map_err(py_err)?;
        let inner = ProblemInstance::new(kind, node_count, edges)
            .map_err(py_err)?
            .with_objective_constant(objective_constant);
        Ok(PyInstance { inner })
    }

    /// Parses the text format (`p <kind> <n> <m>` followed by `u v w` lines).
    #[staticmethod]
    #[pyo3(signature = (text, negate=false))]
    fn parse(text: &str, negate: bool) -> PyResult<Self> {
        let inner = parse_str(text, ParseOptions { negate }).map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (path, negate=false))]
    fn read(path: &str, negate: bool) -> PyResult<Self> {
        let inner = read_instance(path, ParseOptions { negate }).map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    fn to_text(&self) -> String {
        to_text(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn objective_constant(&self) -> f64 {
        self.inner.objective_constant()
    }

    /// Canonical edge list `(u, v, weight)` with `u < v`.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.weight)).collect()
    }

    fn is_feasible(&self, labels: Vec<bool>) -> PyResult<bool> {
        self.inner.is_feasible(&EdgeLabeling::from_vec(labels)).map_err(py_err)
    }

    /// `<theta, x>` plus the objective constant.
    fn objective(&self, labels: Vec<bool>) -> PyResult<f64> {
        self.inner.objective(&EdgeLabeling::from_vec(labels)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(kind='{}', nodes={}, edges={})",
            self.inner.kind(),
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

fn cert_dict<'py>(py: Python<'py>, c: &PersistencyCertificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("edge", c.edge)?;
    d.set_item("beta", c.beta)?;
    d.set_item("criterion", c.criterion.name())?;
    d.set_item("round", c.round)?;
    let witness = serde_json::to_string(&c.witness).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    d.set_item("witness", witness)?;
    Ok(d)
}

/// Outcome of [`shrink`]: the reduced instance and how to map its
/// solutions back.
#[pyclass(name = "ShrinkResult", module = "cutpersist", frozen)]
struct PyShrinkResult {
    state: ShrinkState,
    report: Report,
}

#[pymethods]
impl PyShrinkResult {
    #[getter]
    fn current(&self) -> PyInstance {
        PyInstance {
            inner: self.state.current.clone(),
        }
    }

    /// Added to the objective of the shrunk instance to obtain the original
    /// objective of the lifted labeling.
    #[getter]
    fn constant(&self) -> f64 {
        self.state.constant
    }

    #[getter]
    fn node_map(&self) -> Vec<usize> {
        self.state.node_map.clone()
    }

    #[getter]
    fn edge_fraction(&self) -> f64 {
        self.report.run.edge_fraction
    }

    #[getter]
    fn node_fraction(&self) -> f64 {
        self.report.run.node_fraction
    }

    #[getter]
    fn rounds(&self) -> usize {
        self.report.run.rounds.len()
    }

    fn certificates<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.state.certificates.iter().map(|c| cert_dict(py, c)).collect()
    }

    /// Maps a feasible labeling of the shrunk instance to the original one.
    fn lift(&self, labels: Vec<bool>) -> PyResult<Vec<bool>> {
        let x = self.state.lift(&EdgeLabeling::from_vec(labels)).map_err(py_err)?;
        Ok(x.as_slice().to_vec())
    }

    /// The JSON report (schema 1), accepted by `verify`.
    fn report_json(&self) -> PyResult<String> {
        self.report.to_json().map_err(py_err)
    }

    fn report_csv(&self) -> String {
        self.report.to_csv()
    }
}

fn config(criteria: Option<Vec<String>>, max_rounds: usize, seed: u64, exact_triangles: bool) -> PyResult<PipelineConfig> {
    let stages = match criteria {
        Some(names) => names
            .iter()
            .map(|s| s.parse::<Stage>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?,
        None => Stage::LADDER.to_vec(),
    };
    Ok(PipelineConfig {
        max_rounds,
        seed,
        exact_triangles,
        ..PipelineConfig::default()
    }
    .with_stages(stages))
}

/// Shrinks an instance with the selected criterion groups (default: all of
/// gplus, edge, triangle, subgraph, icp).
#[pyfunction]
#[pyo3(signature = (instance, criteria=None, max_rounds=10, seed=0, exact_triangles=false))]
fn shrink(
    py: Python<'_>,
    instance: &PyInstance,
    criteria: Option<Vec<String>>,
    max_rounds: usize,
    seed: u64,
    exact_triangles: bool,
) -> PyResult<PyShrinkResult> {
    let cfg = config(criteria, max_rounds, seed, exact_triangles)?;
    let inst = instance.inner.clone();
    let (state, run) = py.detach(|| pipeline::run(&inst, &cfg)).map_err(py_err)?;
    let report = Report::new(&state, run, &cfg);
    Ok(PyShrinkResult { state, report })
}

/// Remaining `(stage, nodes, edges)` along the criterion ladder.
#[pyfunction]
#[pyo3(signature = (instance, max_rounds=10))]
fn ablate(py: Python<'_>, instance: &PyInstance, max_rounds: usize) -> PyResult<Vec<(String, usize, usize)>> {
    let cfg = PipelineConfig {
        max_rounds,
        ..PipelineConfig::default()
    };
    let inst = instance.inner.clone();
    let points = py.detach(|| pipeline::ablate(&inst, &cfg)).map_err(py_err)?;
    Ok(points.into_iter().map(|p| (p.stage, p.nodes, p.edges)).collect())
}

/// Replays a JSON report on the original instance; returns the number of
/// certificates checked and the failure messages.
#[pyfunction]
fn verify(instance: &PyInstance, report_json: &str) -> PyResult<(usize, Vec<String>)> {
    let report = Report::from_json(report_json).map_err(py_err)?;
    let outcome = pipeline::verify_steps(&instance.inner, &report.steps).map_err(py_err)?;
    Ok((outcome.checked, outcome.failures))
}

/// Exact optimum by enumeration (multicut up to 10 nodes, max-cut up to 20).
/// Returns the value and one optimal labeling.
#[pyfunction]
fn solve(instance: &PyInstance) -> PyResult<(f64, Vec<bool>)> {
    let (value, x) = cutpersist::oracle::solve(&instance.inner).map_err(py_err)?;
    Ok((value, x.as_slice().to_vec()))
}

/// Whether a certificate dict (as returned by `ShrinkResult.certificates`)
/// holds in some optimum of a small instance.
#[pyfunction]
fn verify_certificate(instance: &PyInstance, edge: usize, beta: u8) -> PyResult<bool> {
    let optima = cutpersist::oracle::enumerate_optima(&instance.inner).map_err(py_err)?;
    if edge >= instance.inner.edge_count() {
        return Err(PyValueError::new_err(format!("edge {edge} out of range")));
    }
    Ok(optima.labelings.iter().any(|x| u8::from(x.get(edge)) == beta))
}

#[pyfunction]
#[pyo3(signature = (n, rho=0.5, positive=false, seed=0))]
fn ising_chain(n: usize, rho: f64, positive: bool, seed: u64) -> PyResult<PyInstance> {
    let inner = generate(&Family::IsingChain { n, rho, positive }, seed).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (rows, cols, seed=0))]
fn torus2d(rows: usize, cols: usize, seed: u64) -> PyResult<PyInstance> {
    let inner = generate(&Family::Torus2d { rows, cols }, seed).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (a, b, c, seed=0))]
fn torus3d(a: usize, b: usize, c: usize, seed: u64) -> PyResult<PyInstance> {
    let inner = generate(&Family::Torus3d { a, b, c }, seed).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (blocks, size, seed=0))]
fn gplus_blocks(blocks: usize, size: usize, seed: u64) -> PyResult<PyInstance> {
    let inner = generate(&Family::GplusBlocks { blocks, size }, seed).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pymodule]
#[pyo3(name = "cutpersist")]
fn cutpersist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyShrinkResult>()?;
    m.add_function(wrap_pyfunction!(shrink, m)?)?;
    m.add_function(wrap_pyfunction!(ablate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(ising_chain, m)?)?;
    m.add_function(wrap_pyfunction!(torus2d, m)?)?;
    m.add_function(wrap_pyfunction!(torus3d, m)?)?;
    m.add_function(wrap_pyfunction!(gplus_blocks, m)?)?;
    Ok(())
}
