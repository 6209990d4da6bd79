//! Python module `thh`.

use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use thh_core::adams::{self, KClass};
use thh_core::rezk::{self, UnitSeries};
use thh_core::thh::{self as pipeline, ExtensionSpec, Factor};
use thh_core::{expr, Error, PadicInt, TruncatedSeries};

create_exception!(thh, ThhError, PyValueError);
create_exception!(thh, NotInImageError, ThhError);
create_exception!(thh, PrecisionError, ThhError);
create_exception!(thh, IndeterminateError, ThhError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::NotInImage(_) => NotInImageError::new_err(msg),
        Error::PrecisionExhausted(_) | Error::PrecisionOutOfRange { .. } => PrecisionError::new_err(msg),
        Error::Indeterminate(_) => IndeterminateError::new_err(msg),
        Error::NonUnit(_) => PyZeroDivisionError::new_err(msg),
        _ => ThhError::new_err(msg),
    }
}

trait OrRaise<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for thh_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

/// An element of Z/p^N, remembered with its precision N.
#[pyclass(name = "PadicInt", module = "thh", frozen)]
struct PyPadicInt(PadicInt);

#[pymethods]
impl PyPadicInt {
    #[new]
    fn new(prime: u64, precision: u32, value: i128) -> PyResult<Self> {
        PadicInt::new(prime, precision, value).py().map(Self)
    }

    #[staticmethod]
    fn teichmuller(a: u64, prime: u64, precision: u32) -> PyResult<Self> {
        PadicInt::teichmuller(a, prime, precision).py().map(Self)
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.0.prime()
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.0.precision()
    }

    #[getter]
    fn residue(&self) -> u128 {
        self.0.residue()
    }

    fn balanced(&self) -> i128 {
        self.0.balanced()
    }

    fn valuation(&self) -> u32 {
        self.0.valuation()
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn reduce(&self, precision: u32) -> PyResult<Self> {
        self.0.reduce(precision).py().map(Self)
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().py().map(Self)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log_1unit().py().map(Self)
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp_padic().py().map(Self)
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_add(&o.0).py().map(Self)
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_sub(&o.0).py().map(Self)
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_mul(&o.0).py().map(Self)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).py().map(Self)
    }

    fn __neg__(&self) -> Self {
        Self(-self.0)
    }

    fn __pow__(&self, e: u64, _m: Option<Py<PyAny>>) -> Self {
        Self(self.0.pow(e))
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.0.eq_at_common_precision(&o.0)
    }

    fn __int__(&self) -> i128 {
        self.0.balanced()
    }

    fn __repr__(&self) -> String {
        format!("PadicInt({}, {}, {})", self.0.prime(), self.0.precision(), self.0.balanced())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A power series in x over Z/p^N, truncated mod x^M.
#[pyclass(name = "Series", module = "thh", frozen)]
struct PySeries(TruncatedSeries);

#[pymethods]
impl PySeries {
    #[new]
    fn new(prime: u64, precision: u32, truncation: usize, coefficients: Vec<i128>) -> PyResult<Self> {
        TruncatedSeries::from_ints(prime, precision, truncation, &coefficients).py().map(Self)
    }

    /// Parse text such as `"(1 - x)^2 + 3x"` or `"alpha*x (mod 3^4, x^6)"`.
    #[staticmethod]
    fn parse(text: &str, prime: u64, precision: u32, truncation: usize) -> PyResult<Self> {
        expr::parse_series(text, prime, precision, truncation).py().map(Self)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(|e| ThhError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| ThhError::new_err(e.to_string()))
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.0.prime()
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.0.precision()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.0.truncation()
    }

    fn coefficients(&self) -> Vec<i128> {
        self.0.coefficients().iter().map(PadicInt::balanced).collect()
    }

    fn coeff(&self, i: usize) -> PyResult<PyPadicInt> {
        if i >= self.0.truncation() {
            return Err(pyo3::exceptions::PyIndexError::new_err(format!(
                "degree {i} is beyond x^{}",
                self.0.truncation()
            )));
        }
        Ok(PyPadicInt(*self.0.coeff(i)))
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log().py().map(Self)
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp().py().map(Self)
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert_unit().py().map(Self)
    }

    fn compose(&self, inner: &Self) -> PyResult<Self> {
        self.0.compose(&inner.0).py().map(Self)
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_add(&o.0).py().map(Self)
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_sub(&o.0).py().map(Self)
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_mul(&o.0).py().map(Self)
    }

    fn __neg__(&self) -> Self {
        Self(-self.0.clone())
    }

    fn __pow__(&self, e: u64, _m: Option<Py<PyAny>>) -> PyResult<Self> {
        self.0.pow(e).py().map(Self)
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.0.eq_at_common_precision(&o.0)
    }

    fn __repr__(&self) -> String {
        format!("Series({:?})", self.0.to_string())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn alpha(prime: u64, precision: u32) -> PyResult<PyPadicInt> {
    adams::alpha(prime, precision).py().map(PyPadicInt)
}

#[pyfunction]
fn teichmuller(a: u64, prime: u64, precision: u32) -> PyResult<PyPadicInt> {
    PyPadicInt::teichmuller(a, prime, precision)
}

#[pyfunction]
fn rezk_log(unit: &PySeries) -> PyResult<PySeries> {
    let u = UnitSeries::new(unit.0.clone()).py()?;
    rezk::rezk_log(&u).py().map(PySeries)
}

/// Solve `l_p(u) = target` with `u(0) ≡ omega` and the `(1 - x)^line` factor.
#[pyfunction]
#[pyo3(signature = (target, omega = 1, line = 0))]
fn solve_unit(target: &PySeries, omega: u64, line: i128) -> PyResult<PySeries> {
    rezk::solve_unit_int(&target.0, omega, line).py().map(|u| PySeries(u.into_body()))
}

#[pyfunction]
#[pyo3(signature = (k, series, weight = 0))]
fn projector(k: u64, series: &PySeries, weight: i64) -> PyResult<PySeries> {
    adams::projector(k, &KClass::new(weight, series.0.clone())).py().map(|c| PySeries(c.body))
}

#[pyfunction]
#[pyo3(signature = (a, series, weight = 0))]
fn adams_operation(a: i128, series: &PySeries, weight: i64) -> PyResult<PySeries> {
    adams::adams_int(a, &KClass::new(weight, series.0.clone())).py().map(|c| PySeries(c.body))
}

/// Full pipeline; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (prime = None, *, precision = None, truncation = None, summands = Vec::new(), line_bundle = None, b2 = None, example = None, spec_json = None))]
#[allow(clippy::too_many_arguments)]
fn torsion_rank(
    prime: Option<u64>,
    precision: Option<u32>,
    truncation: Option<usize>,
    summands: Vec<(u64, i64)>,
    line_bundle: Option<i64>,
    b2: Option<i64>,
    example: Option<&str>,
    spec_json: Option<&str>,
) -> PyResult<String> {
    let mut spec = match (spec_json, example, prime) {
        (Some(text), _, _) => {
            serde_json::from_str::<ExtensionSpec>(text).map_err(|e| err(Error::InvalidSpec(e.to_string())))?
        }
        (None, Some(name), Some(p)) => ExtensionSpec::example(name, p).py()?,
        (None, None, Some(p)) => ExtensionSpec::new(p),
        _ => return Err(ThhError::new_err("give a prime or spec_json")),
    };
    if let Some(n) = precision {
        spec.precision = n;
    }
    if truncation.is_some() {
        spec.truncation = truncation;
    }
    spec.factors.extend(summands.into_iter().map(|(k, coeff)| Factor::Summand { k, coeff }));
    spec.factors.extend(line_bundle.map(|a| Factor::LineBundle { a }));
    spec.factors.extend(b2.map(|coeff| Factor::B2 { coeff }));
    let report = pipeline::torsion_rank(&spec).py()?;
    serde_json::to_string(&report).map_err(|e| ThhError::new_err(e.to_string()))
}

#[pymodule]
pub fn thh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyPadicInt>()?;
    m.add_class::<PySeries>()?;
    m.add("ThhError", py.get_type::<ThhError>())?;
    m.add("NotInImageError", py.get_type::<NotInImageError>())?;
    m.add("PrecisionError", py.get_type::<PrecisionError>())?;
    m.add("IndeterminateError", py.get_type::<IndeterminateError>())?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(teichmuller, m)?)?;
    m.add_function(wrap_pyfunction!(rezk_log, m)?)?;
    m.add_function(wrap_pyfunction!(solve_unit, m)?)?;
    m.add_function(wrap_pyfunction!(projector, m)?)?;
    m.add_function(wrap_pyfunction!(adams_operation, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_rank, m)?)?;
    Ok(())
}
