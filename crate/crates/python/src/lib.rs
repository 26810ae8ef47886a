//! Python bindings: `import alexmod`.

use std::collections::{BTreeMap, BTreeSet};

use alexmod::{cyclo, engine, milnor, strata, Mode};
use num_bigint::BigInt;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn err(e: alexmod::Error) -> PyErr {
    match e {
        alexmod::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn mode_of(name: &str) -> PyResult<Mode> {
    match name {
        "hypersurface" => Ok(Mode::Hypersurface),
        "arrangement" => Ok(Mode::Arrangement),
        other => Err(PyValueError::new_err(format!(
            "unknown mode `{other}`, expected hypersurface or arrangement"
        ))),
    }
}

/// Element of Q[t, t^-1] with exact rational coefficients.
#[pyclass(
    name = "LaurentPoly",
    module = "alexmod",
    from_py_object,
    frozen,
    eq,
    hash
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyLaurentPoly(alexmod::LaurentPoly);

#[pymethods]
impl PyLaurentPoly {
    /// Integer coefficients, lowest degree first, starting at `t^shift`.
    #[new]
    #[pyo3(signature = (coeffs = Vec::new(), shift = 0))]
    fn new(coeffs: Vec<i64>, shift: i64) -> Self {
        Self(alexmod::LaurentPoly::from_int_coeffs(&coeffs).shift(shift))
    }

    /// Parses the triple-list or `{"cyclo": ...}` JSON encoding.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        alexmod::parse_poly(text).map(Self).map_err(err)
    }

    /// `(exponent, numerator, denominator)` for each nonzero term.
    #[staticmethod]
    fn from_terms(terms: Vec<(i64, BigInt, BigInt)>) -> PyResult<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, num, den) in terms {
            if den == BigInt::from(0) {
                return Err(PyZeroDivisionError::new_err("zero denominator"));
            }
            out.push((e, alexmod::Rational::new(num, den)));
        }
        Ok(Self(alexmod::LaurentPoly::from_terms(out)))
    }

    fn to_json(&self) -> String {
        alexmod::poly_to_json(&self.0)
    }

    fn terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.0
            .terms()
            .map(|(e, c)| (e, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn min_exponent(&self) -> Option<i64> {
        self.0.min_exponent()
    }

    fn max_exponent(&self) -> Option<i64> {
        self.0.max_exponent()
    }

    fn span(&self) -> Option<u64> {
        self.0.span()
    }

    fn normalize(&self) -> PyResult<Self> {
        self.0.normalize().map(Self).map_err(err)
    }

    fn is_unit_equivalent(&self, other: &Self) -> bool {
        self.0.is_unit_equivalent(&other.0)
    }

    fn gcd(&self, other: &Self) -> PyResult<Self> {
        self.0.gcd(&other.0).map(Self).map_err(err)
    }

    /// True when `self` divides `other` in Q[t, t^-1].
    fn divides(&self, other: &Self) -> PyResult<bool> {
        self.0.divides(&other.0).map_err(err)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    fn checked_div(&self, divisor: &Self) -> PyResult<Option<Self>> {
        self.0
            .checked_div(&divisor.0)
            .map(|q| q.map(Self))
            .map_err(err)
    }

    fn __pow__(&self, exp: u32, modulo: Option<Py<PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not supported"));
        }
        Ok(Self(self.0.pow(exp)))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly({})", self.0)
    }
}

/// Integer combination of the classes `Lambda_m` of the `m`-th roots of unity.
#[pyclass(name = "CycloDivisor", module = "alexmod", from_py_object, frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
struct PyCycloDivisor(cyclo::CycloDivisor);

#[pymethods]
impl PyCycloDivisor {
    #[new]
    #[pyo3(signature = (coeffs = BTreeMap::new()))]
    fn new(coeffs: BTreeMap<u64, i64>) -> PyResult<Self> {
        if coeffs.contains_key(&0) {
            return Err(PyValueError::new_err("order must be a positive integer"));
        }
        Ok(Self(cyclo::CycloDivisor::from_pairs(coeffs)))
    }

    #[staticmethod]
    fn lam(m: u64) -> PyResult<Self> {
        cyclo::CycloDivisor::lambda(m).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_phi_multiplicities(mults: BTreeMap<u64, i64>) -> Self {
        Self(cyclo::CycloDivisor::from_phi_multiplicities(&mults))
    }

    fn coeffs(&self) -> BTreeMap<u64, i64> {
        self.0.coeffs().clone()
    }

    fn phi_multiplicities(&self) -> BTreeMap<u64, i64> {
        self.0.phi_multiplicities()
    }

    fn degree(&self) -> i64 {
        self.0.degree()
    }

    fn is_realizable(&self) -> bool {
        self.0.is_realizable()
    }

    fn to_poly(&self) -> PyResult<PyLaurentPoly> {
        self.0.to_poly().map(PyLaurentPoly).map_err(err)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self
            .0
            .coeffs()
            .iter()
            .map(|(m, c)| format!("{m}: {c}"))
            .collect();
        format!("CycloDivisor({{{}}})", parts.join(", "))
    }
}

/// The cyclotomic polynomial `Phi_e`.
#[pyfunction]
fn phi(e: u64) -> PyResult<PyLaurentPoly> {
    cyclo::phi(e).map(PyLaurentPoly).map_err(err)
}

/// Splits `p` into `{e: multiplicity}` and a normalized remainder. Without
/// `orders`, every order that can occur at this degree is probed.
#[pyfunction]
#[pyo3(signature = (p, orders = None))]
fn cyclo_factor(
    p: &PyLaurentPoly,
    orders: Option<BTreeSet<u64>>,
) -> PyResult<(BTreeMap<u64, u32>, PyLaurentPoly)> {
    let orders = orders.unwrap_or_else(|| cyclo::orders_up_to_degree(p.0.span().unwrap_or(0)));
    let fac = cyclo::cyclo_factor(&p.0, &orders).map_err(err)?;
    Ok((fac.cyclotomic_part, PyLaurentPoly(fac.remainder)))
}

fn brieskorn(exponents: Vec<u64>) -> PyResult<milnor::BrieskornData> {
    milnor::BrieskornData::new(exponents).map_err(err)
}

#[pyfunction]
fn brieskorn_divisor(exponents: Vec<u64>) -> PyResult<PyCycloDivisor> {
    Ok(PyCycloDivisor(brieskorn(exponents)?.divisor()))
}

#[pyfunction]
fn brieskorn_charpoly(exponents: Vec<u64>) -> PyResult<PyLaurentPoly> {
    Ok(PyLaurentPoly(brieskorn(exponents)?.charpoly()))
}

#[pyfunction]
fn is_rhs_link(exponents: Vec<u64>) -> PyResult<bool> {
    Ok(brieskorn(exponents)?.is_rhs_link())
}

#[pyfunction]
fn infinity_bound_curve(d: u64) -> PyResult<PyLaurentPoly> {
    engine::infinity_bound_curve(d)
        .map(PyLaurentPoly)
        .map_err(err)
}

/// `P_n` from `P_0, ..., P_{n-1}` and the Euler characteristic of the Milnor fiber.
#[pyfunction]
fn euler_product_solve(
    p: Vec<PyLaurentPoly>,
    chi_f: i64,
    d: u64,
    n: u32,
) -> PyResult<PyLaurentPoly> {
    let polys: Vec<_> = p.into_iter().map(|x| x.0).collect();
    engine::euler_product_solve(&polys, chi_f, d, n)
        .map(PyLaurentPoly)
        .map_err(err)
}

/// Validation messages for a description; empty when it is valid.
#[pyfunction]
#[pyo3(signature = (text, mode = "hypersurface"))]
fn validate(text: &str, mode: &str) -> PyResult<Vec<String>> {
    let spec = strata::parse(text).map_err(err)?;
    let checked = match mode_of(mode)? {
        Mode::Hypersurface => strata::validate(&spec),
        Mode::Arrangement => strata::validate_arrangement(&spec),
    };
    Ok(match checked {
        Ok(_) => Vec::new(),
        Err(errs) => errs.iter().map(ToString::to_string).collect(),
    })
}

/// Runs the obstruction pipeline; returns the structured report as JSON, or
/// the text rendering when `text_output` is set.
#[pyfunction]
#[pyo3(signature = (text, mode = "hypersurface", text_output = false))]
fn analyze(text: &str, mode: &str, text_output: bool) -> PyResult<String> {
    let spec = strata::load(text, mode_of(mode)?).map_err(err)?;
    let report = engine::analyze(&spec).map_err(err)?;
    Ok(if text_output {
        report.render_text()
    } else {
        report.to_json()
    })
}

/// Checks claimed `(degree, polynomial)` pairs; returns the verification
/// report as JSON.
#[pyfunction]
#[pyo3(signature = (text, claims, mode = "hypersurface"))]
fn verify(text: &str, claims: Vec<(u32, PyLaurentPoly)>, mode: &str) -> PyResult<String> {
    let spec = strata::load(text, mode_of(mode)?).map_err(err)?;
    let claims: Vec<_> = claims
        .into_iter()
        .map(|(i, p)| engine::Claim::new(i, p.0))
        .collect();
    engine::verify(&spec, &claims)
        .map(|r| r.to_json())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "alexmod")]
fn alexmod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurentPoly>()?;
    m.add_class::<PyCycloDivisor>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(cyclo_factor, m)?)?;
    m.add_function(wrap_pyfunction!(brieskorn_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(brieskorn_charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(is_rhs_link, m)?)?;
    m.add_function(wrap_pyfunction!(infinity_bound_curve, m)?)?;
    m.add_function(wrap_pyfunction!(euler_product_solve, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
