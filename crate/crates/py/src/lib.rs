//! Python bindings for the `darcais` crate.
//!
//! Integers cross the boundary as Python ints, rationals as
//! `fractions.Fraction`, polynomials as ascending coefficient lists and
//! certificates as JSON strings.

use std::str::FromStr;

use darcais::certify::{CertifyConfig, Certifier, Target};
use darcais::numfield::{self, AlgebraicCandidate};
use darcais::polymod::{self, ModPoly};
use darcais::{darcais as dp, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyList;

create_exception!(darcais_py, DarcaisError, PyException);
create_exception!(darcais_py, TableExhaustedError, DarcaisError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Range { .. } => TableExhaustedError::new_err(e.to_string()),
        _ => DarcaisError::new_err(e.to_string()),
    }
}

fn fractions<'py>(py: Python<'py>, rs: &[BigRational]) -> PyResult<Bound<'py, PyList>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    let items = rs
        .iter()
        .map(|r| fraction.call1((r.numer().clone(), r.denom().clone())))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

#[pyclass(name = "ArithmeticFunction", module = "darcais_py", frozen)]
struct PyArithmeticFunction(darcais::ArithmeticFunction);

#[pymethods]
impl PyArithmeticFunction {
    /// `sigma`, `identity`, or the path of a table file.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        darcais::ArithmeticFunction::from_spec(spec).map(Self).map_err(err)
    }

    #[staticmethod]
    fn sigma() -> Self {
        Self(darcais::ArithmeticFunction::sigma())
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(darcais::ArithmeticFunction::identity())
    }

    /// Values g(1), g(2), ... in order.
    #[staticmethod]
    fn table(name: &str, values: Vec<BigInt>) -> PyResult<Self> {
        darcais::ArithmeticFunction::from_table(name, values).map(Self).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn max_n(&self) -> Option<u64> {
        self.0.max_n()
    }

    fn __call__(&self, n: u64) -> PyResult<BigInt> {
        self.0.value(n).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ArithmeticFunction({:?})", self.0.name())
    }
}

#[pyclass(name = "Candidate", module = "darcais_py", frozen)]
struct PyCandidate(AlgebraicCandidate);

#[pymethods]
impl PyCandidate {
    /// `cyc:m,a,b`, `quad:D,a,b` or `gauss:a,b`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        AlgebraicCandidate::from_str(spec).map(Self).map_err(err)
    }

    #[staticmethod]
    fn cyclotomic(m: u64, a: i64, b: i64) -> PyResult<Self> {
        AlgebraicCandidate::cyclotomic_shift(m, a, b).map(Self).map_err(err)
    }

    #[staticmethod]
    fn quadratic(d: i64, a: i64, b: i64) -> PyResult<Self> {
        AlgebraicCandidate::quadratic_shift(d, a, b).map(Self).map_err(err)
    }

    #[staticmethod]
    fn gaussian(a: i64, b: i64) -> PyResult<Self> {
        AlgebraicCandidate::gaussian(a, b).map(Self).map_err(err)
    }

    #[getter]
    fn min_poly(&self) -> Vec<BigInt> {
        self.0.min_poly().coeffs().to_vec()
    }

    #[getter]
    fn index(&self) -> BigInt {
        self.0.index().clone()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn spec(&self) -> String {
        self.0.spec_string()
    }

    /// Splitting of `p` as a JSON document.
    #[pyo3(signature = (p, seed = polymod::DEFAULT_SEED))]
    fn split(&self, p: u64, seed: u64) -> PyResult<String> {
        let report = numfield::dedekind_kummer_split_seeded(&self.0, p, seed).map_err(err)?;
        Ok(serde_json::to_string(&report).expect("serializes"))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Candidate({:?})", self.0.spec_string())
    }
}

#[pyfunction]
fn sigma(n: u64) -> PyResult<u64> {
    darcais::arith::sigma(n).map_err(err)
}

#[pyfunction]
fn mobius(n: u64) -> PyResult<i8> {
    darcais::arith::mobius(n).map_err(err)
}

#[pyfunction]
fn euler_phi(m: u64) -> PyResult<u64> {
    darcais::arith::euler_phi(m).map_err(err)
}

#[pyfunction]
fn legendre_symbol(d: i64, p: u64) -> PyResult<i8> {
    darcais::arith::legendre_symbol(d, p).map_err(err)
}

/// Coefficients of `A_n^g`, constant term first.
#[pyfunction]
fn a_poly(g: &PyArithmeticFunction, n: usize) -> PyResult<Vec<BigInt>> {
    Ok(dp::a_poly(&g.0, n).map_err(err)?.into_coeffs())
}

#[pyfunction]
fn p_poly<'py>(py: Python<'py>, g: &PyArithmeticFunction, n: usize) -> PyResult<Bound<'py, PyList>> {
    fractions(py, dp::p_poly(&g.0, n).map_err(err)?.coeffs())
}

#[pyfunction]
fn tau(n: u64) -> PyResult<BigInt> {
    dp::tau(n).map_err(err)
}

/// Factorization of `A_n^g` mod `p` as `[(coeffs, multiplicity), ...]`.
#[pyfunction]
#[pyo3(signature = (g, n, p, seed = polymod::DEFAULT_SEED))]
fn factor_mod(g: &PyArithmeticFunction, n: u64, p: u64, seed: u64) -> PyResult<Vec<(Vec<u64>, u32)>> {
    let f = polymod::factor_a_poly_mod(&g.0, n, p, seed).map_err(err)?;
    Ok(f.factors().iter().map(|(q, e): &(ModPoly, u32)| (q.coeffs().to_vec(), *e)).collect())
}

#[pyfunction]
fn cyclotomic(m: u64) -> PyResult<Vec<BigInt>> {
    Ok(polymod::cyclotomic(m).map_err(err)?.into_coeffs())
}

#[pyfunction]
fn min_poly(c: &PyCandidate) -> Vec<BigInt> {
    c.min_poly()
}

/// The closed form and the determinant computation, which must agree.
#[pyfunction]
fn index(c: &PyCandidate) -> PyResult<(BigInt, BigInt)> {
    let det = numfield::index_via_determinant(&c.0).map_err(err)?;
    Ok((c.0.index().clone(), det))
}

/// Certificate JSON for `n`, or for every `n` when `n` is None.
#[pyfunction]
#[pyo3(signature = (g, c, n = None, primes = None, exact_eval_bound = None, seed = None))]
fn certify(
    g: &PyArithmeticFunction,
    c: &PyCandidate,
    n: Option<u64>,
    primes: Option<Vec<u64>>,
    exact_eval_bound: Option<u64>,
    seed: Option<u64>,
) -> PyResult<String> {
    let mut config = CertifyConfig::default();
    if let Some(p) = primes {
        config.primes = p;
    }
    if let Some(b) = exact_eval_bound {
        config.exact_eval_bound = b;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    let target = match n {
        Some(0) => return Err(DarcaisError::new_err("n must be at least 1")),
        Some(n) => Target::N(n),
        None => Target::AllN,
    };
    let cert = Certifier::new(g.0.clone(), config).map_err(err)?.certify(&c.0, target);
    Ok(serde_json::to_string(&cert).expect("serializes"))
}

/// Whether `H_n^g = P_n^g / X` has all its roots in the open left half-plane.
#[pyfunction]
fn hurwitz_check(g: &PyArithmeticFunction, n: usize) -> PyResult<bool> {
    dp::hurwitz_check(&dp::h_poly(&g.0, n).map_err(err)?).map_err(err)
}

#[pyfunction]
fn zmija(g: &PyArithmeticFunction) -> PyResult<String> {
    let report = darcais::certify::check_zmija_conditions(&g.0).map_err(err)?;
    Ok(serde_json::to_string(&report).expect("serializes"))
}

#[pymodule]
fn darcais_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DarcaisError", py.get_type::<DarcaisError>())?;
    m.add("TableExhaustedError", py.get_type::<TableExhaustedError>())?;
    m.add_class::<PyArithmeticFunction>()?;
    m.add_class::<PyCandidate>()?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(a_poly, m)?)?;
    m.add_function(wrap_pyfunction!(p_poly, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(factor_mod, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(min_poly, m)?)?;
    m.add_function(wrap_pyfunction!(index, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_check, m)?)?;
    m.add_function(wrap_pyfunction!(zmija, m)?)?;
    Ok(())
}
