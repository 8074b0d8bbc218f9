//! Python bindings: finite fields and towers, restricted sums, curve point
//! counts, the comparison tables, tensor induction and graded traces.
//!
//! Structured results are returned as plain dicts and lists, with the same
//! keys the command-line tool emits.

use std::collections::BTreeMap;

use clap::Parser;
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use frobsum::curves::{self, CountContext, CurveKind};
use frobsum::field::{FiniteField, Polynomial, Tower as CoreTower};
use frobsum::graded::{self, GradedRep};
use frobsum::rep::serial::InductionInput;
use frobsum::rep::{self, FiniteGroup, Matrix, Rational, Scalar, Subgroup};
use frobsum::runner;
use frobsum::sums::{self, SumContext, SumMode};

fn err(e: frobsum::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => py.None().into_bound_py_any(py),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_bound_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_bound_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)
            }
        }
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_bound_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_bound_py_any(py)
        }
    }
}

fn ser_to_py<'py>(py: Python<'py>, v: impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn mode_of(mode: &str) -> PyResult<SumMode> {
    match mode {
        "trace" => Ok(SumMode::Trace),
        "norm" => Ok(SumMode::Norm),
        other => Err(PyValueError::new_err(format!("mode must be 'trace' or 'norm', not {other:?}"))),
    }
}

fn kind_of(kind: &str) -> PyResult<CurveKind> {
    match kind {
        "as" => Ok(CurveKind::ArtinSchreier),
        "se" => Ok(CurveKind::Superelliptic),
        other => Err(PyValueError::new_err(format!("kind must be 'as' or 'se', not {other:?}"))),
    }
}

/// GF(p^n) with elements written as base-p digit strings.
#[pyclass(name = "FiniteField", module = "frobsum", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyField {
    inner: FiniteField,
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, n, budget = None))]
    fn new(p: u64, n: usize, budget: Option<u64>) -> PyResult<Self> {
        let inner = match budget {
            Some(b) => FiniteField::with_budget(p, n, b),
            None => FiniteField::new(p, n),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn size(&self) -> u64 {
        self.inner.size()
    }

    /// Coefficients of the defining polynomial, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|x| x.to_string()).collect()
    }

    fn element(&self, index: u64) -> PyResult<String> {
        if index >= self.inner.size() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.from_index(index).to_string())
    }

    fn index(&self, a: &str) -> PyResult<u64> {
        Ok(self.inner.parse_element(a).map_err(err)?.index())
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.inner.parse_element(a).map_err(err)?, self.inner.parse_element(b).map_err(err)?);
        Ok((&a + &b).to_string())
    }

    fn sub(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.inner.parse_element(a).map_err(err)?, self.inner.parse_element(b).map_err(err)?);
        Ok((&a - &b).to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.inner.parse_element(a).map_err(err)?, self.inner.parse_element(b).map_err(err)?);
        Ok((&a * &b).to_string())
    }

    fn pow(&self, a: &str, e: u64) -> PyResult<String> {
        Ok(self.inner.parse_element(a).map_err(err)?.pow(e).to_string())
    }

    /// `None` for zero.
    fn inv(&self, a: &str) -> PyResult<Option<String>> {
        Ok(self.inner.parse_element(a).map_err(err)?.inv().map(|x| x.to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.size() as usize
    }

    fn __repr__(&self) -> String {
        format!("FiniteField(p={}, n={})", self.inner.p(), self.inner.degree())
    }
}

/// The extension `k_r / k` with `k = GF(p^n)`.
#[pyclass(name = "Tower", module = "frobsum", frozen)]
pub struct PyTower {
    inner: CoreTower,
}

#[pymethods]
impl PyTower {
    #[new]
    fn new(p: u64, n: usize, r: usize) -> PyResult<Self> {
        Ok(Self { inner: CoreTower::canonical(p, n, r).map_err(err)? })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    fn base(&self) -> PyField {
        PyField { inner: self.inner.base().clone() }
    }

    fn top(&self) -> PyField {
        PyField { inner: self.inner.top().clone() }
    }

    /// Relative trace of `y ∈ k_r`, as an element of `k`.
    fn trace(&self, y: &str) -> PyResult<String> {
        Ok(self.inner.trace(&self.inner.top().parse_element(y).map_err(err)?).to_string())
    }

    /// Relative norm of `y ∈ k_r`, as an element of `k`.
    fn norm(&self, y: &str) -> PyResult<String> {
        Ok(self.inner.norm(&self.inner.top().parse_element(y).map_err(err)?).to_string())
    }

    fn __repr__(&self) -> String {
        let b = self.inner.base();
        format!("Tower(p={}, n={}, r={})", b.p(), b.degree(), self.inner.r())
    }
}

/// `C_{d,r}` as an exact integer.
#[pyfunction]
fn c_constant(d: u64, r: u64) -> PyResult<BigUint> {
    curves::c_constant(d, r).map_err(err)
}

/// Rows `{table, d, r, c_value, power_value}` with exact integers.
#[pyfunction]
#[pyo3(signature = (d = 5, rs = vec![2, 3, 4, 5, 10, 20]))]
fn comparison_tables<'py>(py: Python<'py>, d: u64, rs: Vec<u64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    curves::comparison_tables(d, &rs)
        .map_err(err)?
        .into_iter()
        .map(|row| {
            let dict = PyDict::new(py);
            dict.set_item("table", row.table)?;
            dict.set_item("d", row.d)?;
            dict.set_item("r", row.r)?;
            dict.set_item("c_value", row.c_value)?;
            dict.set_item("power_value", row.power_value)?;
            Ok(dict)
        })
        .collect()
}

/// Restricted sums of `y ↦ #f⁻¹(y) − 1` over the fibers `Tr y = a` or
/// `N y = a`, for one `a` or every `a`.
#[pyfunction]
#[pyo3(signature = (p, n, r, f, mode = "trace", a = None))]
fn restricted_sums<'py>(
    py: Python<'py>,
    p: u64,
    n: usize,
    r: usize,
    f: &str,
    mode: &str,
    a: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = mode_of(mode)?;
    let tower = CoreTower::canonical(p, n, r).map_err(err)?;
    let f = Polynomial::parse(tower.top(), f).map_err(err)?;
    let t = sums::kernel_trace_function(&f, mode.domain()).map_err(err)?;
    let ctx = SumContext::new(&t, &tower).map_err(err)?;
    let reports = match a {
        Some(a) => vec![ctx.report(mode, &tower.base().parse_element(a).map_err(err)?).map_err(err)?],
        None => ctx.report_all(mode).map_err(err)?,
    };
    ser_to_py(py, &reports)
}

/// Point count of `y^q − y = f(x)` (`kind="as"`) or `y^{q−1} = f(x)`
/// (`kind="se"`) over `k_r`.
#[pyfunction]
fn count_points<'py>(py: Python<'py>, kind: &str, p: u64, n: usize, r: usize, f: &str) -> PyResult<Bound<'py, PyAny>> {
    let kind = kind_of(kind)?;
    let tower = CoreTower::canonical(p, n, r).map_err(err)?;
    let f = Polynomial::parse(tower.top(), f).map_err(err)?;
    let report = CountContext::new(&tower).count(kind, &f).map_err(err)?;
    ser_to_py(py, &report)
}

/// Fubini identity between fiber sums and pulled-back characters.
#[pyfunction]
#[pyo3(signature = (p, n, r, f, mode = "trace"))]
fn fubini_check<'py>(py: Python<'py>, p: u64, n: usize, r: usize, f: &str, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let mode = mode_of(mode)?;
    let tower = CoreTower::canonical(p, n, r).map_err(err)?;
    let f = Polynomial::parse(tower.top(), f).map_err(err)?;
    let t = sums::kernel_trace_function(&f, mode.domain()).map_err(err)?;
    ser_to_py(py, sums::fubini_check(&t, &tower, mode).map_err(err)?)
}

fn exact_rows(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_string_rows()
}

/// Tensor induction from a JSON description
/// (`{"group": {"cyclic": 6}, "subgroup": [...], "generators": [...]}`).
/// Returns the induced matrices, the character, and both sides of the
/// trace identity at every generator coset when the group is cyclic.
#[pyfunction]
fn tensor_induction<'py>(py: Python<'py>, input_json: &str) -> PyResult<Bound<'py, PyDict>> {
    let input: InductionInput<Rational> =
        serde_json::from_str(input_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (h, rho) = input.build().map_err(err)?;
    induction_result(py, &h, &rho)
}

fn induction_result<'py>(py: Python<'py>, h: &Subgroup, rho: &rep::MatrixRep<Rational>) -> PyResult<Bound<'py, PyDict>> {
    let ind = rep::tensor_induction(h, rho).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("dim", ind.dim())?;
    out.set_item("index", h.index())?;
    out.set_item("matrices", ind.images().iter().map(exact_rows).collect::<Vec<_>>())?;
    out.set_item("character", ind.character().iter().map(|(_, t)| t.to_exact_string()).collect::<Vec<_>>())?;
    if h.parent().is_cyclic() {
        let checks = rep::frobenius_trace_check_all(h, rho).map_err(err)?;
        let list = PyList::empty(py);
        for c in checks {
            let d = PyDict::new(py);
            d.set_item("element", c.element)?;
            d.set_item("lhs", c.lhs.to_exact_string())?;
            d.set_item("rhs", c.rhs.to_exact_string())?;
            d.set_item("holds", c.holds())?;
            list.append(d)?;
        }
        out.set_item("frobenius", list)?;
    }
    Ok(out)
}

/// Tensor induction from the index-`index` subgroup of `Z/n`, with the
/// subgroup generator `index` acting by the integer matrix `generator`.
#[pyfunction]
fn tensor_induce_cyclic<'py>(py: Python<'py>, n: usize, index: usize, generator: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyDict>> {
    let group = std::sync::Arc::new(FiniteGroup::cyclic(n).map_err(err)?);
    let h = Subgroup::of_index_in_cyclic(&group, index).map_err(err)?;
    let m = Matrix::from_rows(generator.iter().map(|row| row.iter().map(|&x| Rational::from_i64(x)).collect()).collect())
        .map_err(err)?;
    let gen = h.members().iter().copied().find(|&x| group.generated(&[x]).len() == h.members().len()).unwrap_or(0);
    let rho = rep::MatrixRep::from_generators(&group, h.members(), &[(gen, m)]).map_err(err)?;
    induction_result(py, &h, &rho)
}

/// Graded tensor induction of `{degree: matrix}` and its trace identities.
#[pyfunction]
fn graded_trace<'py>(py: Python<'py>, pieces: BTreeMap<i64, Vec<Vec<i64>>>, r: usize) -> PyResult<Bound<'py, PyAny>> {
    let pieces = pieces
        .into_iter()
        .map(|(d, rows)| {
            let m = Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| Rational::from_i64(x)).collect()).collect())?;
            Ok((d, m))
        })
        .collect::<frobsum::Result<BTreeMap<_, _>>>()
        .map_err(err)?;
    let p = GradedRep::new(pieces).map_err(err)?;
    let q = graded::graded_tensor_induce(&p, r).map_err(err)?;
    let report = graded::graded_trace(&p, &q);
    let mut v = serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    v["per_degree_ok"] = Value::Bool(report.per_degree_ok());
    v["alternating_ok"] = Value::Bool(report.alternating_ok());
    v["rth_power_ok"] = Value::Bool(graded::check_rth_power(&p, &q));
    to_py(py, &v)
}

/// Runs a command-line subcommand in process, e.g.
/// `run(["sum", "--p", "3", "--r", "2", "--f", "0,0,1", "--mode", "trace"])`.
/// Returns `(records, {"passed", "failed", "not_asserted"})`.
#[pyfunction]
fn run<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyDict>)> {
    let argv = std::iter::once("frobsum".to_string()).chain(args);
    let cli = runner::Cli::try_parse_from(argv).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let result = runner::dispatch(&cli).map_err(err)?;
    let summary = PyDict::new(py);
    summary.set_item("passed", result.passed)?;
    summary.set_item("failed", result.failed)?;
    summary.set_item("not_asserted", result.not_asserted)?;
    Ok((to_py(py, &Value::Array(result.records))?, summary))
}

#[pymodule]
#[pyo3(name = "frobsum")]
pub fn frobsum_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyTower>()?;
    m.add_function(wrap_pyfunction!(c_constant, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_tables, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_sums, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(fubini_check, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_induction, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_induce_cyclic, m)?)?;
    m.add_function(wrap_pyfunction!(graded_trace, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("TOLERANCE", sums::TOLERANCE)?;
    Ok(())
}
