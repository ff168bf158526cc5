//! Python bindings. Results come back as plain dicts and lists built from the same
//! JSON the command-line tool prints.

use cycle_goodness::graph::{Graph, TwoColoring};
use cycle_goodness::profile::Profile;
use cycle_goodness::ramsey::{self, OracleMode, RamseyInstance};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn coloring(order: usize, red_edges: Vec<(usize, usize)>) -> PyResult<TwoColoring> {
    Ok(TwoColoring::from_red(Graph::from_edges(order, &red_edges).map_err(err)?))
}

/// Runs the command-line tool on `args` (without the program name); returns
/// `(exit_code, output)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    cycle_goodness::cli::run_args(std::iter::once("cycle-goodness".to_string()).chain(args))
}

/// Red edges of the clique coloring on `(g_order − 1)(k − 1) + m_1 − 1` vertices.
#[pyfunction]
#[pyo3(signature = (n, sizes, g_order=None))]
fn lower_bound_coloring(n: usize, sizes: Vec<usize>, g_order: Option<usize>) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let inst = RamseyInstance::new(n, &sizes).map_err(err)?;
    let c = ramsey::lower_bound_coloring(&inst, g_order.unwrap_or(n)).map_err(err)?;
    Ok((c.order(), c.red().edges()))
}

#[pyfunction]
#[pyo3(signature = (order, red_edges, n, sizes, nodes=None))]
fn verify_refutation<'py>(
    py: Python<'py>,
    order: usize,
    red_edges: Vec<(usize, usize)>,
    n: usize,
    sizes: Vec<usize>,
    nodes: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = RamseyInstance::new(n, &sizes).map_err(err)?;
    let v = ramsey::verify_refutation(&coloring(order, red_edges)?, &inst, nodes).map_err(err)?;
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (n, sizes, n_max, mode="pruned", threads=1))]
fn oracle<'py>(
    py: Python<'py>,
    n: usize,
    sizes: Vec<usize>,
    n_max: usize,
    mode: &str,
    threads: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = RamseyInstance::new(n, &sizes).map_err(err)?;
    let mode = match mode {
        "full" => OracleMode::Full,
        "pruned" => OracleMode::Pruned,
        other => return Err(err(format!("unknown mode {other:?}"))),
    };
    let out = py.detach(|| ramsey::exact_ramsey_oracle(&inst, n_max, mode, threads)).map_err(err)?;
    to_py(py, &out)
}

/// Main engine; returns `{"verdict": {...}, "trace": [...]}`.
#[pyfunction]
#[pyo3(signature = (order, red_edges, n, sizes, profile="desk", seed=0))]
fn prove<'py>(
    py: Python<'py>,
    order: usize,
    red_edges: Vec<(usize, usize)>,
    n: usize,
    sizes: Vec<usize>,
    profile: &str,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let inst = RamseyInstance::new(n, &sizes).map_err(err)?;
    let profile = Profile::load(profile).map_err(err)?;
    let c = coloring(order, red_edges)?;
    let report = py.detach(|| ramsey::prove_main(&c, &inst, &profile, seed)).map_err(err)?;
    if !ramsey::verify_verdict(&c, &inst, &report.verdict) {
        return Err(err("engine returned a witness that does not verify"));
    }
    to_py(py, &report)
}

#[pymodule]
fn cycle_goodness_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(verify_refutation, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    Ok(())
}
