//! Python bindings. Structured results are returned as plain Python objects
//! (dicts, lists, numbers) built from the core crate's serialized reports.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use hyperglauber::analytics::{self, RootMethod};
use hyperglauber::chains::{self, ChainParams};
use hyperglauber::coupling::{self, GamblerParams, WPolicy};
use hyperglauber::exact::{self, TvConfig};
use hyperglauber::hypergraph::{self as hg, Graph};
use hyperglauber::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Numerical(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn chain_params(kind: &str, lambda: f64, q: Option<u32>) -> PyResult<ChainParams> {
    match kind {
        "indset" => ChainParams::independent_set(lambda).map_err(err),
        "colouring" => {
            let q = q.ok_or_else(|| PyValueError::new_err("q is required for colourings"))?;
            ChainParams::colouring(q).map_err(err)
        }
        other => Err(PyValueError::new_err(format!(
            "kind must be 'indset' or 'colouring', got {other:?}"
        ))),
    }
}

fn w_policy(policy: &str, w: Option<usize>) -> PyResult<WPolicy> {
    Ok(match policy {
        "random-max-degree" => WPolicy::RandomMaxDegree,
        "uniform" => WPolicy::Uniform,
        "adversarial" => WPolicy::Adversarial,
        "fixed" => WPolicy::Fixed(w.ok_or_else(|| PyValueError::new_err("w is required"))?),
        other => return Err(PyValueError::new_err(format!("unknown policy {other:?}"))),
    })
}

/// A hypergraph on vertices `0..n`.
#[pyclass(name = "Hypergraph", frozen)]
struct PyHypergraph {
    inner: hg::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(Self {
            inner: hg::Hypergraph::new(n, edges).map_err(err)?,
        })
    }

    /// Parses the text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: hg::parse_hypergraph(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn frozen(q: usize, m: usize) -> PyResult<Self> {
        Ok(Self {
            inner: hg::gen_frozen(q, m).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, m, max_degree, edges, seed=0))]
    fn random_uniform(n: usize, m: usize, max_degree: usize, edges: usize, seed: u64) -> PyResult<Self> {
        let (inner, _) = hg::gen_random_uniform(n, m, max_degree, edges, seed).map_err(err)?;
        Ok(Self { inner })
    }

    /// Blow-up of the graph on `n` vertices with the given edges.
    #[staticmethod]
    fn blowup(n: usize, graph_edges: Vec<(usize, usize)>, m: usize) -> PyResult<Self> {
        let g = Graph::from_edges(n, &graph_edges).map_err(err)?;
        let (inner, _) = hg::gen_blowup(&g, m).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn to_text(&self) -> String {
        hg::serialize_hypergraph(&self.inner)
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.validate())
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Runs the chain from its default start state for `t` steps.
#[pyfunction]
#[pyo3(signature = (h, kind, t, lambda_=1.0, q=None, seed=0))]
fn run_chain<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    kind: &str,
    t: u64,
    lambda_: f64,
    q: Option<u32>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let params = chain_params(kind, lambda_, q)?;
    let x0 = chains::initial_state(&h.inner, &params).map_err(err)?;
    let traj = py
        .detach(|| chains::run_chain(&h.inner, &params, x0, t, None, seed))
        .map_err(err)?;
    to_py(py, &traj)
}

#[pyfunction]
#[pyo3(signature = (h, kind, lambda_=1.0, q=None, policy="random-max-degree", w=None, replicates=1000, seed=0, t_max=None))]
#[allow(clippy::too_many_arguments)]
fn stopping_experiment<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    kind: &str,
    lambda_: f64,
    q: Option<u32>,
    policy: &str,
    w: Option<usize>,
    replicates: u64,
    seed: u64,
    t_max: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let params = chain_params(kind, lambda_, q)?;
    let policy = w_policy(policy, w)?;
    let run = py
        .detach(|| coupling::stopping_experiment(&h.inner, &params, policy, replicates, seed, t_max))
        .map_err(err)?;
    to_py(py, &run)
}

#[pyfunction]
#[pyo3(signature = (h, kind, lambda_=1.0, q=None, samples=100_000, burn_in=1000, stride=3, seed=0))]
#[allow(clippy::too_many_arguments)]
fn stationary_tv<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    kind: &str,
    lambda_: f64,
    q: Option<u32>,
    samples: u64,
    burn_in: u64,
    stride: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let params = chain_params(kind, lambda_, q)?;
    let cfg = TvConfig {
        burn_in,
        samples,
        stride,
        seed,
    };
    let report = py
        .detach(|| exact::stationary_tv(&h.inner, &params, cfg))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn count_independent_sets<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &exact::count_independent_sets(&h.inner).map_err(err)?)
}

#[pyfunction]
fn count_colourings(h: &PyHypergraph, q: u32) -> PyResult<u64> {
    exact::count_colourings(&h.inner, q).map_err(err)
}

#[pyfunction]
fn blowup_identity_check<'py>(
    py: Python<'py>,
    n: usize,
    graph_edges: Vec<(usize, usize)>,
    m: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let g = Graph::from_edges(n, &graph_edges).map_err(err)?;
    to_py(py, &exact::blowup_identity_check(&g, m).map_err(err)?)
}

/// `[p_1, ..., p_{m-1}]` from the direct linear solve.
#[pyfunction]
#[pyo3(signature = (m, lambda_))]
fn edge_process(m: usize, lambda_: f64) -> PyResult<Vec<f64>> {
    Ok(analytics::edge_process_solve(m, lambda_).map_err(err)?.p)
}

#[pyfunction]
#[pyo3(signature = (m, lambda_, delta))]
fn indset_alpha_bound<'py>(py: Python<'py>, m: usize, lambda_: f64, delta: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &analytics::indset_alpha_bound(m, lambda_, delta).map_err(err)?)
}

#[pyfunction]
fn stopping_time_bound(p: f64, alpha: f64, d1: f64, d2: f64, eps: f64) -> PyResult<f64> {
    analytics::stopping_time_bound(p, alpha, d1, d2, eps).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (method="integral"))]
fn beta_star<'py>(py: Python<'py>, method: &str) -> PyResult<Bound<'py, PyAny>> {
    let method = match method {
        "integral" => RootMethod::Integral,
        "series" => RootMethod::Series,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    to_py(py, &analytics::beta_star(method).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (a, b, upper=20.0))]
fn success_integral(a: f64, b: f64, upper: f64) -> PyResult<f64> {
    analytics::success_integral(a, b, upper).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, alpha, d2, t_max, replicates=10_000, seed=0))]
fn gambler_game<'py>(
    py: Python<'py>,
    p: f64,
    alpha: f64,
    d2: u64,
    t_max: u64,
    replicates: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let gp = GamblerParams::new(p, alpha, d2, t_max, replicates).map_err(err)?;
    let trace = py.detach(|| coupling::gambler_game(&gp, seed)).map_err(err)?;
    to_py(py, &trace)
}

#[pymodule]
fn hyperglauber_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(run_chain, m)?)?;
    m.add_function(wrap_pyfunction!(stopping_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(stationary_tv, m)?)?;
    m.add_function(wrap_pyfunction!(count_independent_sets, m)?)?;
    m.add_function(wrap_pyfunction!(count_colourings, m)?)?;
    m.add_function(wrap_pyfunction!(blowup_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(edge_process, m)?)?;
    m.add_function(wrap_pyfunction!(indset_alpha_bound, m)?)?;
    m.add_function(wrap_pyfunction!(stopping_time_bound, m)?)?;
    m.add_function(wrap_pyfunction!(beta_star, m)?)?;
    m.add_function(wrap_pyfunction!(success_integral, m)?)?;
    m.add_function(wrap_pyfunction!(gambler_game, m)?)?;
    Ok(())
}
