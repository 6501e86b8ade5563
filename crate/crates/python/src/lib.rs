//! Python bindings for the `descartes` crate.
//!
//! Structured results come back as plain Python objects (dicts and lists)
//! built from the same JSON the CLI prints.

use descartes::combinatorics;
use descartes::multisym;
use descartes::quartic::{self, QuarticPoint};
use descartes::rational::parse_rational;
use descartes::realize::{self, RealizationTarget, SearchBudget, SearchOutcome, Witness};
use descartes::scp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn bad(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(bad)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A sign pattern such as `"++-+"`, leading coefficient first.
#[pyclass(name = "SignPattern", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PySignPattern(combinatorics::SignPattern);

#[pymethods]
impl PySignPattern {
    #[new]
    fn new(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(bad)
    }

    #[staticmethod]
    fn from_blocks(blocks: Vec<usize>) -> PyResult<Self> {
        combinatorics::SignPattern::from_blocks(&blocks).map(Self).map_err(bad)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn sign_changes(&self) -> usize {
        self.0.sign_changes()
    }

    fn compatible_pairs(&self) -> Vec<(usize, usize)> {
        self.0.compatible_pairs().into_iter().map(|p| (p.pos, p.neg)).collect()
    }

    fn change_preservation(&self) -> String {
        self.0.to_change_preservation().to_string()
    }

    fn im(&self) -> Self {
        Self(self.0.im())
    }

    fn ir(&self) -> Self {
        Self(self.0.ir())
    }

    fn canonical_order(&self) -> String {
        realize::canonical_order(&self.0).to_string()
    }

    fn is_canonical(&self) -> bool {
        realize::is_canonical_pattern(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignPattern('{}')", self.0)
    }
}

/// A sign pattern with a compatible pair of root counts.
#[pyclass(name = "CompatibleCouple", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyCouple(combinatorics::CompatibleCouple);

#[pymethods]
impl PyCouple {
    #[new]
    fn new(pattern: &str, pos: usize, neg: usize) -> PyResult<Self> {
        let p: combinatorics::SignPattern = pattern.parse().map_err(bad)?;
        combinatorics::CompatibleCouple::new(p, combinatorics::CompatiblePair::new(pos, neg))
            .map(Self)
            .map_err(bad)
    }

    #[getter]
    fn pattern(&self) -> PySignPattern {
        PySignPattern(self.0.pattern().clone())
    }

    #[getter]
    fn pair(&self) -> (usize, usize) {
        let p = self.0.pair();
        (p.pos, p.neg)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn im(&self) -> Self {
        Self(self.0.im())
    }

    fn ir(&self) -> Self {
        Self(self.0.ir())
    }

    fn orbit(&self) -> Vec<Self> {
        self.0.orbit().members().iter().cloned().map(Self).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        let p = self.0.pair();
        format!("CompatibleCouple('{}', {}, {})", self.0.pattern(), p.pos, p.neg)
    }
}

/// A sequence of compatible pairs, one per derivative level.
#[pyclass(name = "Scp", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyScp(scp::Scp);

#[pymethods]
impl PyScp {
    #[new]
    fn new(pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        scp::Scp::from_tuples(&pairs).map(Self).map_err(bad)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.pairs().iter().map(|p| (p.pos, p.neg)).collect()
    }

    fn sign_pattern(&self) -> PySignPattern {
        PySignPattern(self.0.sign_pattern())
    }

    fn couple(&self) -> PyCouple {
        PyCouple(self.0.couple())
    }

    fn truncate(&self) -> PyResult<Self> {
        self.0.truncate().map(Self).map_err(bad)
    }

    fn im(&self) -> Self {
        Self(self.0.im())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scp({:?})", self.pairs())
    }
}

/// `{(m, n): count}` of SCPs of degree `d`; counts are Python ints.
#[pyfunction]
fn count_scps(py: Python<'_>, d: usize) -> PyResult<Bound<'_, PyAny>> {
    let t = scp::count_scps(d);
    let out = pyo3::types::PyDict::new(py);
    for (k, v) in &t.entries {
        let n = py.import("builtins")?.getattr("int")?.call1((v.to_string(),))?;
        out.set_item((k.pos, k.neg), n)?;
    }
    Ok(out.into_any())
}

#[pyfunction]
fn enumerate_couples(d: usize) -> Vec<PyCouple> {
    combinatorics::enumerate_couples(d).into_iter().map(PyCouple).collect()
}

#[pyfunction]
fn enumerate_orbits(d: usize) -> Vec<Vec<PyCouple>> {
    combinatorics::enumerate_orbits(d)
        .iter()
        .map(|o| o.members().iter().cloned().map(PyCouple).collect())
        .collect()
}

#[pyfunction]
fn enumerate_scps(d: usize) -> Vec<PyScp> {
    scp::enumerate_scps(d).into_iter().map(PyScp).collect()
}

fn search<'py>(py: Python<'py>, t: &RealizationTarget, seed: u64, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let mut b = SearchBudget::default_for(t, seed);
    if let Some(n) = budget {
        if n == 0 {
            return Err(bad("budget must be at least 1"));
        }
        b.max_iterations = n;
    }
    let outcome: SearchOutcome = py.detach(|| realize::realize(t, &b)).map_err(bad)?;
    to_py(py, &outcome)
}

/// Runs the witness search on a target given as JSON (the CLI's format,
/// tagged with `"kind"`). Returns the outcome as a dict.
#[pyfunction]
#[pyo3(signature = (target, seed = 0, budget = None))]
fn realize_json<'py>(py: Python<'py>, target: &str, seed: u64, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let t: RealizationTarget = serde_json::from_str(target).map_err(bad)?;
    search(py, &t, seed, budget)
}

#[pyfunction]
#[pyo3(signature = (scp, seed = 0, budget = None))]
fn realize_scp<'py>(py: Python<'py>, scp: &PyScp, seed: u64, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let t = RealizationTarget::Scp { scp: scp.0.clone() };
    search(py, &t, seed, budget)
}

#[pyfunction]
#[pyo3(signature = (couple, seed = 0, budget = None))]
fn realize_couple<'py>(py: Python<'py>, couple: &PyCouple, seed: u64, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let t = RealizationTarget::Couple(couple.0.clone());
    search(py, &t, seed, budget)
}

/// Re-verifies a witness given as JSON; raises `ValueError` if it does not check.
#[pyfunction]
fn verify_witness(witness: &str) -> PyResult<bool> {
    let w: Witness = serde_json::from_str(witness).map_err(bad)?;
    w.verify().map(|_| true).map_err(bad)
}

#[pyfunction]
fn catalog(py: Python<'_>, d: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &realize::catalog(d).map_err(bad)?)
}

/// Region label of the monic quartic `x^4 + b3 x^3 + b2 x^2 + b1 x + b0`.
/// Coefficients are strings such as `"-3/2"` or ints.
#[pyfunction]
fn classify_quartic(b3: &str, b2: &str, b1: &str, b0: &str) -> PyResult<String> {
    let r = |s: &str| parse_rational(s).map_err(bad);
    let q = QuarticPoint::new(r(b3)?, r(b2)?, r(b1)?, r(b0)?);
    Ok(quartic::classify(&q).name().to_string())
}

#[pyfunction]
fn verify_identities(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &multisym::verify_identities())
}

#[pymodule]
fn descartes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignPattern>()?;
    m.add_class::<PyCouple>()?;
    m.add_class::<PyScp>()?;
    m.add_function(wrap_pyfunction!(count_scps, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_couples, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_scps, m)?)?;
    m.add_function(wrap_pyfunction!(realize_json, m)?)?;
    m.add_function(wrap_pyfunction!(realize_scp, m)?)?;
    m.add_function(wrap_pyfunction!(realize_couple, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(classify_quartic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    Ok(())
}
