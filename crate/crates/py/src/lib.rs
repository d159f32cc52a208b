//! Python bindings for `collatz-core`. Integers cross the boundary as Python
//! `int` of any size; every core error surfaces as `collatz.CollatzError`.

use collatz_core as core;
use collatz_core::sweep::default_workers;
use collatz_core::{Nat, TrajectoryStatus};
use num_bigint::{BigInt, Sign};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(collatz, CollatzError, PyValueError);

const DEFAULT_MAX_STEPS: u64 = 100_000;

fn err(e: core::Error) -> PyErr {
    CollatzError::new_err(e.to_string())
}

fn nat(n: BigInt) -> PyResult<Nat> {
    match n.into_parts() {
        (Sign::Minus, magnitude) => Err(CollatzError::new_err(format!(
            "expected a non-negative integer, got -{magnitude}"
        ))),
        (_, magnitude) => Ok(magnitude),
    }
}

fn workers(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(default_workers).max(1)
}

/// Nondecreasing exponent sequence with a positive integer value.
#[pyclass(
    name = "RSequence",
    frozen,
    eq,
    hash,
    skip_from_py_object,
    module = "collatz"
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRSequence(core::RSequence);

#[pymethods]
impl PyRSequence {
    #[new]
    fn new(exponents: Vec<u64>) -> PyResult<Self> {
        core::validate(&exponents).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[getter]
    fn exponents(&self) -> Vec<u64> {
        self.0.exponents().to_vec()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn value(&self) -> Nat {
        self.0.value()
    }

    fn double(&self) -> Self {
        Self(core::double_transform(&self.0))
    }

    fn odd_inverse(&self) -> PyResult<Self> {
        core::odd_inverse_transform(&self.0).map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RSequence({:?})", self.0.exponents())
    }
}

#[pyclass(name = "Trajectory", frozen, module = "collatz")]
struct PyTrajectory(core::Trajectory);

#[pymethods]
impl PyTrajectory {
    #[getter]
    fn start(&self) -> Nat {
        self.0.start.clone()
    }

    #[getter]
    fn values(&self) -> Vec<Nat> {
        self.0.values.clone()
    }

    #[getter]
    fn reached_one(&self) -> bool {
        self.0.status == TrajectoryStatus::ReachedOne
    }

    #[getter]
    fn steps(&self) -> u64 {
        self.0.steps()
    }

    fn __len__(&self) -> usize {
        self.0.values.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Trajectory(start={}, steps={}, reached_one={})",
            self.0.start,
            self.0.steps(),
            self.reached_one()
        )
    }
}

#[pyclass(name = "EncodeResult", frozen, module = "collatz")]
struct PyEncodeResult(core::EncodeResult);

#[pymethods]
impl PyEncodeResult {
    #[getter]
    fn sequence(&self) -> PyRSequence {
        PyRSequence(self.0.sequence.clone())
    }

    #[getter]
    fn power_of_two_input(&self) -> bool {
        self.0.power_of_two_input
    }

    fn __repr__(&self) -> String {
        format!(
            "EncodeResult(sequence=({}), power_of_two_input={})",
            self.0.sequence, self.0.power_of_two_input
        )
    }
}

#[pyclass(name = "CoalescenceResult", frozen, module = "collatz")]
struct PyCoalescenceResult(core::CoalescenceResult);

#[pymethods]
impl PyCoalescenceResult {
    #[getter]
    fn met(&self) -> bool {
        self.0.met
    }

    #[getter]
    fn meet_value(&self) -> Option<Nat> {
        self.0.meet_value.clone()
    }

    #[getter]
    fn index_left(&self) -> u64 {
        self.0.index_left
    }

    #[getter]
    fn index_right(&self) -> u64 {
        self.0.index_right
    }

    #[getter]
    fn budget_hit(&self) -> bool {
        self.0.budget_hit
    }

    fn __bool__(&self) -> bool {
        self.0.met
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        match &r.meet_value {
            Some(v) => format!(
                "CoalescenceResult(met at {v}, indices ({}, {}))",
                r.index_left, r.index_right
            ),
            None => format!("CoalescenceResult(not met, budget_hit={})", r.budget_hit),
        }
    }
}

#[pyclass(name = "SweepReport", frozen, module = "collatz")]
struct PySweepReport(core::SweepReport);

#[pymethods]
impl PySweepReport {
    #[getter]
    fn range_start(&self) -> Nat {
        self.0.range_start.clone()
    }

    #[getter]
    fn range_end(&self) -> Nat {
        self.0.range_end.clone()
    }

    #[getter]
    fn checked(&self) -> u64 {
        self.0.checked
    }

    #[getter]
    fn succeeded(&self) -> u64 {
        self.0.succeeded
    }

    #[getter]
    fn failures(&self) -> Vec<Nat> {
        self.0.failures.clone()
    }

    #[getter]
    fn max_orbit_value(&self) -> Nat {
        self.0.max_orbit_value.clone()
    }

    #[getter]
    fn max_steps_seen(&self) -> u64 {
        self.0.max_steps_seen
    }

    /// Wall time in seconds.
    #[getter]
    fn elapsed(&self) -> Option<f64> {
        self.0.elapsed.map(|d| d.as_secs_f64())
    }

    #[getter]
    fn clean(&self) -> bool {
        self.0.is_clean()
    }

    /// The report as JSON, without the wall time.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.clone().without_timing()).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        format!(
            "SweepReport([{}, {}], checked={}, failures={})",
            r.range_start,
            r.range_end,
            r.checked,
            r.failures.len()
        )
    }
}

#[pyclass(name = "Lemma3Outcome", frozen, module = "collatz")]
struct PyLemma3Outcome(core::Lemma3Outcome);

#[pymethods]
impl PyLemma3Outcome {
    #[getter]
    fn n(&self) -> Nat {
        self.0.n.clone()
    }

    #[getter]
    fn epsilon(&self) -> u64 {
        self.0.epsilon
    }

    #[getter]
    fn odd_part(&self) -> Nat {
        self.0.odd_part.clone()
    }

    #[getter]
    fn target(&self) -> Nat {
        self.0.target.clone()
    }

    #[getter]
    fn k_found(&self) -> u64 {
        self.0.k_found
    }

    #[getter]
    fn k_predicted(&self) -> u64 {
        self.0.k_predicted
    }

    fn prediction_holds(&self) -> bool {
        self.0.prediction_holds()
    }

    fn __repr__(&self) -> String {
        let o = &self.0;
        format!(
            "Lemma3Outcome(n={}, epsilon={}, target={}, k_found={}, k_predicted={})",
            o.n, o.epsilon, o.target, o.k_found, o.k_predicted
        )
    }
}

#[pyfunction]
fn collatz_step(n: BigInt) -> PyResult<Nat> {
    core::collatz_step(&nat(n)?).map_err(err)
}

#[pyfunction]
fn collatz_iterate(n: BigInt, k: u64) -> PyResult<Nat> {
    core::collatz_iterate(&nat(n)?, k).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, max_steps = DEFAULT_MAX_STEPS))]
fn trajectory(n: BigInt, max_steps: u64) -> PyResult<PyTrajectory> {
    core::trajectory(&nat(n)?, max_steps)
        .map(PyTrajectory)
        .map_err(err)
}

/// `None` when the budget runs out before reaching 1.
#[pyfunction]
#[pyo3(signature = (n, max_steps = DEFAULT_MAX_STEPS))]
fn total_stopping_steps(n: BigInt, max_steps: u64) -> PyResult<Option<u64>> {
    core::total_stopping_steps(&nat(n)?, max_steps).map_err(err)
}

/// `(epsilon, odd_part)` with `n = 2**epsilon * odd_part`.
#[pyfunction]
fn nu2(n: BigInt) -> PyResult<(u64, Nat)> {
    core::nu2(&nat(n)?)
        .map(|f| (f.epsilon, f.odd_part))
        .map_err(err)
}

#[pyfunction]
fn is_power_of_two(n: BigInt) -> PyResult<bool> {
    Ok(core::is_power_of_two(&nat(n)?))
}

#[pyfunction]
fn validate(exponents: Vec<u64>) -> PyResult<PyRSequence> {
    PyRSequence::new(exponents)
}

#[pyfunction]
fn decode(sequence: &PyRSequence) -> Nat {
    core::decode(&sequence.0)
}

#[pyfunction]
#[pyo3(signature = (n, max_steps = DEFAULT_MAX_STEPS))]
fn encode(n: BigInt, max_steps: u64) -> PyResult<PyEncodeResult> {
    core::encode(&nat(n)?, max_steps)
        .map(PyEncodeResult)
        .map_err(err)
}

#[pyfunction]
fn double_transform(sequence: &PyRSequence) -> PyRSequence {
    sequence.double()
}

#[pyfunction]
fn odd_inverse_transform(sequence: &PyRSequence) -> PyResult<PyRSequence> {
    sequence.odd_inverse()
}

#[pyfunction]
#[pyo3(signature = (n1, n2, max_steps = DEFAULT_MAX_STEPS))]
fn coalesce(n1: BigInt, n2: BigInt, max_steps: u64) -> PyResult<PyCoalescenceResult> {
    core::coalesce(&nat(n1)?, &nat(n2)?, max_steps)
        .map(PyCoalescenceResult)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, max_steps = DEFAULT_MAX_STEPS))]
fn hypothesis_check(n: BigInt, max_steps: u64) -> PyResult<PyCoalescenceResult> {
    core::hypothesis_check(&nat(n)?, max_steps)
        .map(PyCoalescenceResult)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (start, end, max_steps = DEFAULT_MAX_STEPS, jobs = None))]
fn hypothesis_sweep(
    py: Python<'_>,
    start: BigInt,
    end: BigInt,
    max_steps: u64,
    jobs: Option<usize>,
) -> PyResult<PySweepReport> {
    let (start, end) = (nat(start)?, nat(end)?);
    py.detach(|| core::hypothesis_sweep(&start, &end, max_steps, workers(jobs)))
        .map(PySweepReport)
        .map_err(err)
}

/// `(n, encoded, power_of_two, sequence_length)`
type RecordTuple = (Nat, bool, bool, u64);

/// Returns the report and one record tuple per value.
#[pyfunction]
#[pyo3(signature = (start, end, max_steps = DEFAULT_MAX_STEPS, jobs = None))]
fn theorem1_sweep(
    py: Python<'_>,
    start: BigInt,
    end: BigInt,
    max_steps: u64,
    jobs: Option<usize>,
) -> PyResult<(PySweepReport, Vec<RecordTuple>)> {
    let (start, end) = (nat(start)?, nat(end)?);
    let sweep = py
        .detach(|| core::theorem1_sweep(&start, &end, max_steps, workers(jobs)))
        .map_err(err)?;
    let records = sweep
        .records
        .into_iter()
        .map(|r| (r.n, r.encoded, r.power_of_two, r.sequence_length))
        .collect();
    Ok((PySweepReport(sweep.report), records))
}

#[pyfunction]
fn lemma2_check(a: u64) -> bool {
    core::lemma2_check(a)
}

#[pyfunction]
#[pyo3(signature = (n, k_max = None))]
fn lemma3_check(n: BigInt, k_max: Option<u64>) -> PyResult<PyLemma3Outcome> {
    let n = nat(n)?;
    let k_max = match k_max {
        Some(k) => k,
        None => core::lemma::default_k_max(core::nu2(&n).map_err(err)?.epsilon),
    };
    core::lemma3_check(&n, k_max)
        .map(PyLemma3Outcome)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, k_max = None))]
fn lemma4_check(a: u64, k_max: Option<u64>) -> PyResult<PyLemma3Outcome> {
    let k_max = k_max.unwrap_or_else(|| core::lemma::default_k_max(a));
    core::lemma4_check(a, k_max)
        .map(PyLemma3Outcome)
        .map_err(err)
}

/// Rows of `(a, lemma2, floor_form)` for `a` in `[1, a_max]`.
#[pyfunction]
fn case3_inequality_audit(a_max: u64) -> PyResult<Vec<(u64, bool, bool)>> {
    let rows = core::case3_inequality_audit(a_max).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.a, r.lemma2, r.floor_form))
        .collect())
}

#[pymodule]
fn collatz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CollatzError", m.py().get_type::<CollatzError>())?;
    m.add_class::<PyRSequence>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_class::<PyEncodeResult>()?;
    m.add_class::<PyCoalescenceResult>()?;
    m.add_class::<PySweepReport>()?;
    m.add_class::<PyLemma3Outcome>()?;
    m.add_function(wrap_pyfunction!(collatz_step, m)?)?;
    m.add_function(wrap_pyfunction!(collatz_iterate, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(total_stopping_steps, m)?)?;
    m.add_function(wrap_pyfunction!(nu2, m)?)?;
    m.add_function(wrap_pyfunction!(is_power_of_two, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(double_transform, m)?)?;
    m.add_function(wrap_pyfunction!(odd_inverse_transform, m)?)?;
    m.add_function(wrap_pyfunction!(coalesce, m)?)?;
    m.add_function(wrap_pyfunction!(hypothesis_check, m)?)?;
    m.add_function(wrap_pyfunction!(hypothesis_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma3_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma4_check, m)?)?;
    m.add_function(wrap_pyfunction!(case3_inequality_audit, m)?)?;
    Ok(())
}
