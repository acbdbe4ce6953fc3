//! Python bindings: `Loop`, `PermGroup`, `CheckReport` and a few free
//! functions on permutations given as image lists.

use moufang_core::loops::{generate, Cml};
use moufang_core::mult_group::{inner_mapping_group, multiplication_group};
use moufang_core::perm::{self, center, centralizer_in, is_p_group, nilpotency_class_group};
use moufang_core::report::{CheckConfig, DEFAULT_BUDGET, DEFAULT_SAMPLES, DEFAULT_SEED};
use moufang_core::structure::{
    centralizer, loop_center, min_generators, nilpotency_class_loop, special_rank,
    upper_central_series_loop,
};
use moufang_core::text::{format_table, parse_table};
use moufang_core::verify::{analyze, run_suite, SuiteOptions};
use moufang_core::{
    build, ConstructionSpec, Error, FiniteLoop, Mode, Permutation, PermutationGroup, Status,
    Subloop, Witness,
};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(moufang, BudgetExceeded, PyRuntimeError);

const LIMIT: usize = 1_000_000;

fn to_py(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_to_py(py: Python<'_>, s: String) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

#[pyclass(name = "CheckReport", module = "moufang", frozen)]
struct PyCheckReport(moufang_core::CheckReport);

#[pymethods]
impl PyCheckReport {
    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    /// "pass", "fail" or "skipped".
    #[getter]
    fn status(&self) -> &str {
        match self.0.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }

    #[getter]
    fn skip_reason(&self) -> Option<&str> {
        match &self.0.status {
            Status::Skipped(r) => Some(r),
            _ => None,
        }
    }

    /// `None` for exhaustive checks, else `(seed, count)`.
    #[getter]
    fn sampled(&self) -> Option<(u64, u64)> {
        match self.0.mode {
            Mode::Exhaustive => None,
            Mode::Sampled { seed, count } => Some((seed, count)),
        }
    }

    #[getter]
    fn checked(&self) -> u64 {
        self.0.checked
    }

    #[getter]
    fn counterexample(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        Ok(match &self.0.counterexample {
            None => None,
            Some(Witness::Elements(v)) => Some(v.clone().into_pyobject(py)?.into_any().unbind()),
            Some(Witness::Permutations(v)) => {
                Some(v.clone().into_pyobject(py)?.into_any().unbind())
            }
        })
    }

    #[getter]
    fn note(&self) -> Option<&str> {
        self.0.note.as_deref()
    }

    #[getter]
    fn timing_ms(&self) -> u64 {
        self.0.timing_ms
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("reports serialize")
    }

    fn __repr__(&self) -> String {
        format!("CheckReport({:?}, {})", self.0.name, self.status())
    }
}

/// A finite loop given by its Cayley table.
#[pyclass(name = "Loop", module = "moufang", frozen)]
struct PyLoop(FiniteLoop);

impl PyLoop {
    fn cml(&self) -> PyResult<Cml> {
        Cml::certify(self.0.clone()).map_err(to_py)
    }

    fn element(&self, x: usize) -> PyResult<usize> {
        self.0.check_element(x).map_err(to_py)
    }

    fn subloop(&self, gens: Option<Vec<usize>>) -> PyResult<Subloop> {
        match gens {
            None => Ok(Subloop::whole(&self.0)),
            Some(g) => {
                for &x in &g {
                    self.element(x)?;
                }
                Ok(generate(&self.0, &g))
            }
        }
    }
}

#[pymethods]
impl PyLoop {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteLoop::from_rows(&rows).map(PyLoop).map_err(to_py)
    }

    /// Parse the plain-text table format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_table(text).map(PyLoop).map_err(to_py)
    }

    /// Build `cyclic(n)`, `ea3(k)`, `cml81` or `product(a, b)`.
    #[staticmethod]
    fn construct(spec: &str) -> PyResult<Self> {
        let spec: ConstructionSpec = spec.parse().map_err(to_py)?;
        build(&spec).map(PyLoop).map_err(to_py)
    }

    fn to_text(&self) -> String {
        format_table(&self.0)
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.0.identity()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.mul(self.element(a)?, self.element(b)?))
    }

    fn left_div(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.left_div(self.element(a)?, self.element(b)?))
    }

    fn inverse(&self, a: usize) -> PyResult<usize> {
        Ok(self.0.inverse(self.element(a)?))
    }

    fn associator(&self, a: usize, b: usize, c: usize) -> PyResult<usize> {
        Ok(self
            .0
            .associator(self.element(a)?, self.element(b)?, self.element(c)?))
    }

    fn element_order(&self, a: usize) -> PyResult<usize> {
        Ok(self.0.element_order(self.element(a)?))
    }

    fn exponent(&self) -> u64 {
        self.0.exponent()
    }

    fn is_commutative(&self) -> PyCheckReport {
        PyCheckReport(self.0.is_commutative())
    }

    fn is_associative(&self) -> PyCheckReport {
        PyCheckReport(self.0.is_associative())
    }

    fn is_cml(&self) -> PyCheckReport {
        PyCheckReport(self.0.is_cml())
    }

    /// Members of the subloop generated by `gens`.
    fn generate(&self, gens: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.subloop(Some(gens))?.members().to_vec())
    }

    fn center(&self) -> PyResult<Vec<usize>> {
        Ok(loop_center(&self.cml()?).members().to_vec())
    }

    /// `Z_H(M)` with `H` generated by `subloop` (the whole loop by default).
    #[pyo3(signature = (m, subloop=None))]
    fn centralizer(&self, m: Vec<usize>, subloop: Option<Vec<usize>>) -> PyResult<Vec<usize>> {
        let l = self.cml()?;
        let h = self.subloop(subloop)?;
        Ok(centralizer(&l, &h, &m).map_err(to_py)?.members().to_vec())
    }

    fn upper_central_series(&self) -> PyResult<Vec<Vec<usize>>> {
        let s = upper_central_series_loop(&self.cml()?);
        Ok(s.chain.iter().map(|z| z.members().to_vec()).collect())
    }

    fn nilpotency_class(&self) -> PyResult<usize> {
        nilpotency_class_loop(&self.cml()?).map_err(to_py)
    }

    /// `(L/H, projection)` for the subloop generated by `gens`.
    fn quotient(&self, gens: Vec<usize>) -> PyResult<(PyLoop, Vec<usize>)> {
        let h = self.subloop(Some(gens))?;
        let (q, proj) = self.0.quotient(&h).map_err(to_py)?;
        Ok((PyLoop(q), proj.map().to_vec()))
    }

    /// A minimal generating set of the subloop generated by `subloop`.
    #[pyo3(signature = (subloop=None))]
    fn min_generators(&self, subloop: Option<Vec<usize>>) -> PyResult<Vec<usize>> {
        let h = self.subloop(subloop)?;
        Ok(min_generators(&self.0, &h).generators)
    }

    fn special_rank(&self) -> PyResult<usize> {
        Ok(special_rank(&self.0).map_err(to_py)?.special_rank)
    }

    fn multiplication_group(&self) -> PyPermGroup {
        PyPermGroup(multiplication_group(&self.0))
    }

    fn inner_mapping_group(&self) -> PyPermGroup {
        PyPermGroup(inner_mapping_group(&self.0))
    }

    /// Structural summary as a dict.
    #[pyo3(signature = (rank=false))]
    fn analyze(&self, py: Python<'_>, rank: bool) -> PyResult<Py<PyAny>> {
        let a = analyze(&self.0, rank).map_err(to_py)?;
        json_to_py(py, serde_json::to_string(&a).expect("reports serialize"))
    }

    /// The full check suite, sorted by check name.
    #[pyo3(signature = (rank=false, seed=DEFAULT_SEED, budget=DEFAULT_BUDGET, samples=DEFAULT_SAMPLES))]
    fn verify(
        &self,
        py: Python<'_>,
        rank: bool,
        seed: u64,
        budget: u64,
        samples: u64,
    ) -> Vec<PyCheckReport> {
        let cfg = CheckConfig {
            seed,
            budget,
            samples,
            ..CheckConfig::default()
        };
        let opts = SuiteOptions {
            cfg,
            rank,
            ..SuiteOptions::default()
        };
        py.detach(|| run_suite(&self.0, &opts))
            .into_iter()
            .map(PyCheckReport)
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!(
            "Loop(order={}, identity={})",
            self.0.order(),
            self.0.identity()
        )
    }
}

fn perm(images: Vec<usize>) -> PyResult<Permutation> {
    Permutation::from_images(images).map_err(to_py)
}

/// A permutation group on `0..degree`; permutations are image lists and
/// products apply the left factor first.
#[pyclass(name = "PermGroup", module = "moufang", frozen)]
struct PyPermGroup(PermutationGroup);

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(perm)
            .collect::<PyResult<Vec<_>>>()?;
        PermutationGroup::new(degree, gens)
            .map(PyPermGroup)
            .map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        self.0
            .generators()
            .iter()
            .map(Permutation::images)
            .collect()
    }

    fn order(&self) -> BigUint {
        self.0.order()
    }

    fn base(&self) -> Vec<usize> {
        self.0.bsgs().base()
    }

    fn contains(&self, images: Vec<usize>) -> PyResult<bool> {
        let p = perm(images)?;
        Ok(p.degree() == self.0.degree() && self.0.contains(&p))
    }

    fn __contains__(&self, images: Vec<usize>) -> PyResult<bool> {
        self.contains(images)
    }

    fn orbit(&self, point: usize) -> PyResult<Vec<usize>> {
        if point >= self.0.degree() {
            return Err(PyValueError::new_err(format!(
                "point {point} outside degree {}",
                self.0.degree()
            )));
        }
        Ok(self.0.orbit(point))
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    #[pyo3(signature = (limit=LIMIT))]
    fn elements(&self, limit: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .0
            .elements(limit)
            .map_err(to_py)?
            .iter()
            .map(Permutation::images)
            .collect())
    }

    fn center(&self) -> PyResult<PyPermGroup> {
        center(&self.0, LIMIT).map(PyPermGroup).map_err(to_py)
    }

    fn centralizer(&self, perms: Vec<Vec<usize>>) -> PyResult<PyPermGroup> {
        let s = perms.into_iter().map(perm).collect::<PyResult<Vec<_>>>()?;
        centralizer_in(&self.0, &s, LIMIT)
            .map(PyPermGroup)
            .map_err(to_py)
    }

    /// `None` when the group is not nilpotent.
    fn nilpotency_class(&self) -> PyResult<Option<usize>> {
        match nilpotency_class_group(&self.0, LIMIT) {
            Ok(c) => Ok(Some(c)),
            Err(Error::NotNilpotent) => Ok(None),
            Err(e) => Err(to_py(e)),
        }
    }

    fn is_p_group(&self, p: u64) -> bool {
        is_p_group(&self.0, p)
    }

    fn __repr__(&self) -> String {
        format!(
            "PermGroup(degree={}, order={})",
            self.0.degree(),
            self.0.order()
        )
    }
}

/// `a` first, then `b`.
#[pyfunction]
fn compose(a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(perm::compose(&perm(a)?, &perm(b)?).map_err(to_py)?.images())
}

/// `a⁻¹b⁻¹ab`.
#[pyfunction]
fn commutator(a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(perm::commutator(&perm(a)?, &perm(b)?)
        .map_err(to_py)?
        .images())
}

/// `b⁻¹ab`.
#[pyfunction]
fn conjugate(a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(perm::conjugate(&perm(a)?, &perm(b)?)
        .map_err(to_py)?
        .images())
}

#[pymodule]
fn moufang(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLoop>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyCheckReport>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(commutator, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    Ok(())
}
