//! Python bindings. Rationals are accepted as anything whose `str()` reads
//! as `a/b` or an integer, and returned as `fractions.Fraction`. Reports
//! come back as plain dicts in the JSON layout used by the CLI.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use seqgroup::lab::{Convention, DivisorLab, PrimeWindow};
use seqgroup::{group, laxton, modp, transforms};
use seqgroup::{ParamPair, Rational, RingElement};

fn err(e: seqgroup::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_string())
}

pub fn parse_rational(s: &str) -> PyResult<Rational> {
    s.parse().map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

fn context(t: Option<&Bound<'_, PyAny>>, big_t: Option<i64>, big_q: Option<i64>) -> PyResult<ParamPair> {
    match (t, big_t, big_q) {
        (Some(t), None, None) => Ok(ParamPair::one_param(rational(t)?)),
        (None, Some(a), Some(b)) => ParamPair::from_ints(a, b).map_err(err),
        _ => Err(PyValueError::new_err("give either t or both T and Q")),
    }
}

fn window(spec: &str) -> PyResult<PrimeWindow> {
    PrimeWindow::parse(spec).map_err(err)
}

fn convention(spec: &str) -> PyResult<Convention> {
    Convention::parse(spec).map_err(err)
}

/// A class of nonzero sequences up to scalars, held by its reduced integer pair.
#[pyclass(name = "GroupElement", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyGroupElement {
    inner: seqgroup::GroupElement,
}

#[pymethods]
impl PyGroupElement {
    #[new]
    #[pyo3(signature = (x0, x1, t=None, T=None, Q=None))]
    #[allow(non_snake_case)]
    fn new(
        x0: &Bound<'_, PyAny>,
        x1: &Bound<'_, PyAny>,
        t: Option<&Bound<'_, PyAny>>,
        T: Option<i64>,
        Q: Option<i64>,
    ) -> PyResult<Self> {
        let ctx = context(t, T, Q)?;
        let x = RingElement::new(ctx, rational(x0)?, rational(x1)?);
        let inner = seqgroup::GroupElement::from_ring(&x).map_err(err)?;
        Ok(PyGroupElement { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (name, t=None, T=None, Q=None))]
    #[allow(non_snake_case)]
    fn named(name: &str, t: Option<&Bound<'_, PyAny>>, T: Option<i64>, Q: Option<i64>) -> PyResult<Self> {
        let ctx = context(t, T, Q)?;
        let inner = match name {
            "I" => Ok(seqgroup::GroupElement::identity(&ctx)),
            "D" => Ok(seqgroup::GroupElement::companion(&ctx)),
            "C" => seqgroup::GroupElement::c(&ctx),
            "W" => seqgroup::GroupElement::w(&ctx),
            "V" => seqgroup::GroupElement::v(&ctx),
            _ => return Err(PyValueError::new_err(format!("unknown element {name:?}; use I, D, C, W or V"))),
        }
        .map_err(err)?;
        Ok(PyGroupElement { inner })
    }

    #[getter]
    fn a0(&self) -> BigInt {
        self.inner.a0().clone()
    }

    #[getter]
    fn a1(&self) -> BigInt {
        self.inner.a1().clone()
    }

    #[getter]
    fn trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.context().trace())
    }

    #[getter]
    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.context().norm())
    }

    fn det<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.det())
    }

    fn __mul__(&self, other: &PyGroupElement) -> PyResult<Self> {
        let inner = self.inner.mul(&other.inner).map_err(err)?;
        Ok(PyGroupElement { inner })
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> Self {
        PyGroupElement { inner: self.inner.pow(k) }
    }

    fn inv(&self) -> Self {
        PyGroupElement { inner: self.inner.inv() }
    }

    fn shift(&self, k: i64) -> Self {
        PyGroupElement { inner: self.inner.shift(k) }
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn sqrt(&self) -> Vec<PyGroupElement> {
        self.inner.sqrt().into_iter().map(|inner| PyGroupElement { inner }).collect()
    }

    /// Terms `x_start, ..., x_stop` of the reduced representative.
    fn terms<'py>(&self, py: Python<'py>, start: i64, stop: i64) -> PyResult<Bound<'py, PyList>> {
        let x = self.inner.to_ring();
        let items = (start..=stop).map(|n| fraction(py, &x.term(n))).collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn __repr__(&self) -> String {
        format!("GroupElement({}, {}, context={})", self.inner.a0(), self.inner.a1(), self.inner.context())
    }
}

/// Terms `x_start..=x_stop` of the sequence with initial terms `x0, x1`.
#[pyfunction]
#[pyo3(signature = (x0, x1, start, stop, t=None, T=None, Q=None))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn terms<'py>(
    py: Python<'py>,
    x0: &Bound<'py, PyAny>,
    x1: &Bound<'py, PyAny>,
    start: i64,
    stop: i64,
    t: Option<&Bound<'py, PyAny>>,
    T: Option<i64>,
    Q: Option<i64>,
) -> PyResult<Bound<'py, PyList>> {
    let x = RingElement::new(context(t, T, Q)?, rational(x0)?, rational(x1)?);
    let items = (start..=stop).map(|n| fraction(py, &x.term(n))).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let t = rational(t)?;
    let class = transforms::classify_cyclotomic(&t).map_err(err)?;
    let prim = group::primitivity(&t).map_err(err)?;
    let dec = group::decompose(&t).map_err(err)?;
    to_py(py, &serde_json::json!({"t": t, "class": class, "primitivity": prim, "decomposition": dec}))
}

#[pyfunction]
fn torsion_l<'py>(py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &group::torsion_l(&rational(t)?).map_err(err)?)
}

#[pyfunction]
fn laxton_torsion<'py>(py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &laxton::laxton_torsion(&rational(t)?).map_err(err)?)
}

/// `(k, λ)` with `x = λ·y·D^k`, or `None`.
#[pyfunction]
fn laxton_eq<'py>(py: Python<'py>, x: &PyGroupElement, y: &PyGroupElement) -> PyResult<Option<(i64, Bound<'py, PyAny>)>> {
    match laxton::laxton_eq(&x.inner, &y.inner).map_err(err)? {
        Some(w) => Ok(Some((w.k, fraction(py, &w.lambda)?))),
        None => Ok(None),
    }
}

#[pyfunction]
fn is_divisor(x: &PyGroupElement, p: u64) -> PyResult<bool> {
    modp::is_divisor(&x.inner, p).map_err(err)
}

#[pyfunction]
fn trichotomy_class(t: &Bound<'_, PyAny>, p: u64) -> PyResult<String> {
    let c = modp::trichotomy_class(&rational(t)?, p).map_err(err)?;
    Ok(format!("{c:?}"))
}

/// Admissible primes of the window dividing some term of `x`.
#[pyfunction]
#[pyo3(signature = (x, window="odd:1200", parallel=false))]
fn gamma(x: &PyGroupElement, window: &str, parallel: bool) -> PyResult<Vec<u64>> {
    let t = x.inner.context().trace().clone();
    if !x.inner.context().is_one_param() {
        return Err(err(seqgroup::Error::NotOneParameter));
    }
    let lab = DivisorLab::new(&t, self::window(window)?, parallel).map_err(err)?;
    lab.gamma(&x.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, window="below:5000", parallel=false))]
fn partition_six<'py>(py: Python<'py>, x: &PyGroupElement, window: &str, parallel: bool) -> PyResult<Bound<'py, PyAny>> {
    let t = x.inner.context().trace().clone();
    let lab = DivisorLab::new(&t, self::window(window)?, parallel).map_err(err)?;
    to_py(py, &lab.partition_six(&x.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (T, Q, x0, x1, window="odd:1200", convention="pi_t", parallel=false, full=false))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn independence_report<'py>(
    py: Python<'py>,
    T: i64,
    Q: i64,
    x0: i64,
    x1: i64,
    window: &str,
    convention: &str,
    parallel: bool,
    full: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = seqgroup::lab::independence_report(T, Q, x0, x1, self::window(window)?, self::convention(convention)?, parallel, full)
        .map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (window="odd:1200", convention="pi_t", parallel=false))]
fn table3<'py>(py: Python<'py>, window: &str, convention: &str, parallel: bool) -> PyResult<Bound<'py, PyAny>> {
    let reports = seqgroup::lab::table3(self::window(window)?, self::convention(convention)?, parallel, false).map_err(err)?;
    to_py(py, &reports)
}

#[pymodule]
fn seqgroup_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupElement>()?;
    m.add_function(wrap_pyfunction!(terms, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_l, m)?)?;
    m.add_function(wrap_pyfunction!(laxton_torsion, m)?)?;
    m.add_function(wrap_pyfunction!(laxton_eq, m)?)?;
    m.add_function(wrap_pyfunction!(is_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(trichotomy_class, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(partition_six, m)?)?;
    m.add_function(wrap_pyfunction!(independence_report, m)?)?;
    m.add_function(wrap_pyfunction!(table3, m)?)?;
    Ok(())
}
