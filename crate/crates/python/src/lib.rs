//! Python bindings for gridspectra.

use std::collections::BTreeMap;

use gridspectra::cli::{self, CliError, Flags};
use gridspectra::complex::DEFAULT_MAX_STATES;
use gridspectra::grid::{Axis, GridDiagram, GridState, Sign, StabKind};
use gridspectra::maps::{parse_script, Move};
use gridspectra::spectral::{compute_verdicts, EngineOptions, PageCount, SpectralVerdict};
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::Resource(_) => PyMemoryError::new_err(e.to_string()),
        CliError::Parse { .. } | CliError::Inapplicable { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_sign(s: &str) -> PyResult<Sign> {
    s.parse().map_err(value_err)
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn flags(sign: Option<&str>, max_states: u64, reduce: bool) -> PyResult<Flags> {
    Ok(Flags { json: true, sign: sign.map(parse_sign).transpose()?, max_states, no_reduce: !reduce })
}

/// A grid diagram: column `c` has its X in row `xs[c]` and its O in row `os[c]`.
#[pyclass(name = "Grid", module = "pygridspectra", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGrid(GridDiagram);

#[pymethods]
impl PyGrid {
    #[new]
    fn new(xs: Vec<usize>, os: Vec<usize>) -> PyResult<Self> {
        GridDiagram::new(xs, os).map(PyGrid).map_err(value_err)
    }

    /// Parse the text grid format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        GridDiagram::parse(text).map(PyGrid).map_err(value_err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let text =
            std::fs::read_to_string(&path).map_err(|e| PyValueError::new_err(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn xs(&self) -> Vec<usize> {
        self.0.xs().to_vec()
    }

    #[getter]
    fn os(&self) -> Vec<usize> {
        self.0.os().to_vec()
    }

    #[getter]
    fn components(&self) -> usize {
        self.0.num_components()
    }

    #[getter]
    fn tb(&self) -> i32 {
        self.0.tb_rot().0
    }

    #[getter]
    fn rot(&self) -> i32 {
        self.0.tb_rot().1
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    /// Rows of the canonical generator `x+` or `x-`.
    fn canonical(&self, sign: &str) -> PyResult<Vec<u8>> {
        Ok(self.0.canonical(parse_sign(sign)?).rows().to_vec())
    }

    /// `(maslov, alex2)` of the state with the given rows.
    fn bigrading(&self, rows: Vec<u8>) -> PyResult<(i32, i32)> {
        if rows.len() != self.0.m() {
            return Err(PyValueError::new_err("state size differs from the grid"));
        }
        let b = self.0.bigrading(&GridState::new(rows).map_err(value_err)?);
        Ok((b.maslov, b.alex2))
    }

    /// `axis` is `"col"` or `"row"`.
    fn commute(&self, axis: &str, index: usize) -> PyResult<Self> {
        let axis = match axis {
            "col" | "column" => Axis::Column,
            "row" => Axis::Row,
            _ => return Err(PyValueError::new_err(format!("unknown axis `{axis}`"))),
        };
        self.0.commute(axis, index).map(PyGrid).map_err(value_err)
    }

    /// `kind` is `"X:SE"` or `"X:NW"`.
    fn stabilize(&self, col: usize, kind: &str) -> PyResult<Self> {
        let kind: StabKind = kind.parse().map_err(value_err)?;
        self.0.stabilize(col, kind).map(PyGrid).map_err(value_err)
    }

    /// Apply one move written in the script syntax, e.g. `"pinchX 0"`.
    fn apply(&self, mv: &str) -> PyResult<Self> {
        let mv: Move = mv.parse().map_err(value_err)?;
        mv.apply(&self.0).map(PyGrid).map_err(value_err)
    }

    fn translate(&self, dc: usize, dr: usize) -> Self {
        PyGrid(self.0.translate(dc, dr))
    }

    fn transpose(&self) -> Self {
        PyGrid(self.0.transpose())
    }

    fn __repr__(&self) -> String {
        format!("Grid(xs={:?}, os={:?})", self.0.xs(), self.0.os())
    }
}

/// `n`, the λ pages and the first vanishing page of one canonical generator.
#[pyclass(name = "Verdict", module = "pygridspectra", frozen)]
struct PyVerdict(SpectralVerdict);

#[pymethods]
impl PyVerdict {
    #[getter]
    fn sign(&self) -> &'static str {
        self.0.sign.symbol()
    }

    /// `None` means infinite.
    #[getter]
    fn n(&self) -> Option<usize> {
        match self.0.n {
            PageCount::Finite(k) => Some(k),
            PageCount::Infinite => None,
        }
    }

    #[getter]
    fn first_vanishing_page(&self) -> Option<usize> {
        self.0.first_vanishing_page
    }

    #[getter]
    fn width(&self) -> usize {
        self.0.width
    }

    #[getter]
    fn base_bigrading(&self) -> (i32, i32) {
        (self.0.base_bigrading.maslov, self.0.base_bigrading.alex2)
    }

    /// `(r, lambda_vanishes, d_r_vanishes)` for every computed page.
    #[getter]
    fn pages(&self) -> Vec<(usize, bool, bool)> {
        self.0.pages.iter().map(|p| (p.r, p.lambda_vanishes, p.d_r_vanishes)).collect()
    }

    /// Whether `λ_i` vanishes, or `None` when it is undefined.
    fn lambda_vanishes(&self, i: usize) -> Option<bool> {
        self.0.lambda(i)
    }

    fn __repr__(&self) -> String {
        format!(
            "Verdict(sign='{}', n={}, first_vanishing_page={:?})",
            self.sign(),
            self.0.n,
            self.0.first_vanishing_page
        )
    }
}

/// Verdicts for `x+` and `x-`.
#[pyfunction]
#[pyo3(signature = (grid, max_states = DEFAULT_MAX_STATES))]
fn verdicts(py: Python<'_>, grid: &PyGrid, max_states: u64) -> PyResult<(PyVerdict, PyVerdict)> {
    let opts = EngineOptions { max_states, ..Default::default() };
    let g = grid.0.clone();
    let (p, q) = py.detach(|| compute_verdicts(&g, opts)).map_err(|e| cli_err(e.into()))?;
    Ok((PyVerdict(p), PyVerdict(q)))
}

/// The `invariants` report as a dict.
#[pyfunction]
#[pyo3(signature = (grid, sign = None, max_states = DEFAULT_MAX_STATES, reduce = true))]
fn invariants<'py>(
    py: Python<'py>,
    grid: &PyGrid,
    sign: Option<&str>,
    max_states: u64,
    reduce: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let f = flags(sign, max_states, reduce)?;
    let r = py.detach(|| cli::invariants(&grid.0, &f)).map_err(cli_err)?;
    to_py(py, &r)
}

/// Graded dimensions as `{(maslov, alex2): dim}`.
#[pyfunction]
#[pyo3(signature = (grid, max_states = DEFAULT_MAX_STATES, reduce = true))]
fn homology(py: Python<'_>, grid: &PyGrid, max_states: u64, reduce: bool) -> PyResult<BTreeMap<(i32, i32), usize>> {
    let f = flags(None, max_states, reduce)?;
    let r = py.detach(|| cli::homology(&grid.0, &f)).map_err(cli_err)?;
    Ok(r.entries.iter().map(|e| ((e.maslov, e.alex2), e.dim)).collect())
}

/// The `obstruct` report for a cobordism from `minus` up to `plus`.
#[pyfunction]
#[pyo3(signature = (minus, plus, max_states = DEFAULT_MAX_STATES))]
fn obstruct<'py>(py: Python<'py>, minus: &PyGrid, plus: &PyGrid, max_states: u64) -> PyResult<Bound<'py, PyAny>> {
    let f = flags(None, max_states, true)?;
    let r = py.detach(|| cli::obstruct(&minus.0, &plus.0, &f)).map_err(cli_err)?;
    to_py(py, &r)
}

/// The `verify` report for a move script starting at `grid`.
#[pyfunction]
#[pyo3(signature = (grid, script, sign = None))]
fn verify<'py>(py: Python<'py>, grid: &PyGrid, script: &str, sign: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let moves = parse_script(script).map_err(value_err)?;
    if moves.is_empty() {
        return Err(PyValueError::new_err("empty move script"));
    }
    let f = flags(sign, DEFAULT_MAX_STATES, true)?;
    let r = py.detach(|| cli::verify(&grid.0, &moves, &f)).map_err(cli_err)?;
    to_py(py, &r)
}

#[pymodule]
pub fn pygridspectra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(verdicts, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(homology, m)?)?;
    m.add_function(wrap_pyfunction!(obstruct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
