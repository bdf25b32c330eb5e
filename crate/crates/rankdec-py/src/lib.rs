//! Python bindings for the rankdec core.
//!
//! Field elements cross the boundary as ints (bit vectors over GF(2)).
//! Decode results and bound certificates are returned as JSON strings.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rankdec::bounds::{self, SearchLimits};
use rankdec::code::CodeSpec;
use rankdec::decoder::{self, DecodeParams, Solver};
use rankdec::gf::{Elem, Field as CoreField};
use rankdec::io::{outcome_to_json, parse_code, parse_pattern, CodeJson};

fn py_err(e: rankdec::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn check(f: &CoreField, v: &[Elem]) -> PyResult<()> {
    match v.iter().find(|&&x| !f.contains(x)) {
        Some(x) => Err(PyValueError::new_err(format!("{x:#x} is not in GF(2^{})", f.m()))),
        None => Ok(()),
    }
}

fn solver(name: &str) -> PyResult<Solver> {
    match name {
        "gabidulin" => Ok(Solver::Gabidulin),
        "linear" => Ok(Solver::Linear),
        _ => Err(PyValueError::new_err(format!("unknown solver: {name}"))),
    }
}

/// GF(2^m) given by an irreducible modulus.
#[pyclass(frozen)]
struct Field {
    inner: Arc<CoreField>,
}

#[pymethods]
impl Field {
    #[new]
    fn new(m: u32, modulus: u64) -> PyResult<Self> {
        Ok(Self { inner: CoreField::new(m, modulus).map_err(py_err)? })
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    fn add(&self, x: Elem, y: Elem) -> PyResult<Elem> {
        check(&self.inner, &[x, y])?;
        Ok(self.inner.add(x, y))
    }

    fn mul(&self, x: Elem, y: Elem) -> PyResult<Elem> {
        check(&self.inner, &[x, y])?;
        Ok(self.inner.mul(x, y))
    }

    fn inv(&self, x: Elem) -> PyResult<Elem> {
        check(&self.inner, &[x])?;
        self.inner.inv(x).map_err(py_err)
    }

    fn pow(&self, x: Elem, k: i64) -> PyResult<Elem> {
        check(&self.inner, &[x])?;
        self.inner.powi(x, k).map_err(py_err)
    }

    /// a^k for the primitive element a.
    fn alpha(&self, k: u64) -> Elem {
        self.inner.alpha_pow(k as u128)
    }

    /// Accepts "0", "1", "a^k" or "0x..".
    fn parse(&self, text: &str) -> PyResult<Elem> {
        self.inner.parse(text).map_err(py_err)
    }

    fn format(&self, x: Elem) -> PyResult<String> {
        check(&self.inner, &[x])?;
        Ok(self.inner.format(x))
    }

    fn __repr__(&self) -> String {
        format!("Field(m={}, modulus={:#x})", self.inner.m(), self.inner.modulus())
    }
}

/// A decoding pattern (b, t1, t2, δ, ks).
#[pyclass(frozen)]
struct Pattern {
    inner: bounds::Pattern,
}

#[pymethods]
impl Pattern {
    #[new]
    fn new(b: i64, t1: i64, t2: i64, delta: usize, ks: Vec<i64>) -> PyResult<Self> {
        Ok(Self { inner: bounds::Pattern::new(b, t1, t2, delta, ks).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_pattern(text).map_err(py_err)? })
    }

    #[getter]
    fn tau(&self) -> usize {
        self.inner.tau()
    }

    fn generated_set(&self, order: usize) -> Vec<usize> {
        self.inner.generated_set(order)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("Pattern(b={}, t1={}, t2={}, delta={}, ks={:?})", p.b, p.t1, p.t2, p.delta, p.ks)
    }
}

/// A code given by an automorphism power, a vector h and an index set T.
#[pyclass(frozen)]
struct Code {
    inner: CodeSpec,
}

#[pymethods]
impl Code {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_code(text).map_err(py_err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&CodeJson::of(&self.inner)).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn field(&self) -> Field {
        Field { inner: self.inner.field().clone() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn defining_set(&self) -> Vec<usize> {
        self.inner.defining_set()
    }

    fn encode(&self, msg: Vec<Elem>) -> PyResult<Vec<Elem>> {
        check(self.inner.field(), &msg)?;
        self.inner.encode(&msg).map_err(py_err)
    }

    fn is_codeword(&self, v: Vec<Elem>) -> PyResult<bool> {
        check(self.inner.field(), &v)?;
        self.inner.is_codeword(&v).map_err(py_err)
    }

    fn syndrome(&self, v: Vec<Elem>, d: i64) -> PyResult<Elem> {
        check(self.inner.field(), &v)?;
        self.inner.syndrome(&v, d).map_err(py_err)
    }

    fn rank_weight(&self, v: Vec<Elem>) -> PyResult<usize> {
        check(self.inner.field(), &v)?;
        Ok(self.inner.rank_weight(&v))
    }

    /// Certificate JSON for `pattern` against this code's defining set, or None.
    fn certify(&self, pattern: &Pattern) -> PyResult<Option<String>> {
        let cert = bounds::certify(&pattern.inner, self.inner.order(), &self.inner.defining_set());
        cert.map(|c| serde_json::to_string(&c).map_err(|e| PyValueError::new_err(e.to_string())))
            .transpose()
    }

    #[pyo3(signature = (max_r=None))]
    fn best_bound(&self, max_r: Option<usize>) -> PyResult<Option<String>> {
        let cert = bounds::best_bound_search(&self.inner.defining_set(), self.inner.order(), SearchLimits { max_r })
            .map_err(py_err)?;
        cert.map(|c| serde_json::to_string(&c).map_err(|e| PyValueError::new_err(e.to_string())))
            .transpose()
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, k={}, order={})", self.inner.n(), self.inner.dimension(), self.inner.order())
    }
}

#[pyfunction]
fn decoding_capacity(pattern: &Pattern, order: usize) -> usize {
    bounds::decoding_capacity(&pattern.inner, order)
}

/// Decodes `y` and returns the outcome as JSON.
///
/// path is "span", "locator" or "interleaved"; solver is "gabidulin" or "linear".
#[pyfunction]
#[pyo3(signature = (code, pattern, y, path="span", blocks=1, solver="gabidulin"))]
fn decode(code: &Code, pattern: &Pattern, y: Vec<Elem>, path: &str, blocks: usize, solver: &str) -> PyResult<String> {
    let f = code.inner.field().clone();
    check(&f, &y)?;
    let solver = self::solver(solver)?;
    let params = DecodeParams::new(code.inner.clone(), pattern.inner.clone()).map_err(py_err)?;
    let outcome = match path {
        "span" => decoder::decode_span(&params, &y, solver),
        "locator" => decoder::decode_locator(&params, &y, solver),
        "interleaved" => decoder::decode_interleaved(&params, &y, blocks, solver),
        _ => return Err(PyValueError::new_err(format!("unknown path: {path}"))),
    }
    .map_err(py_err)?;
    Ok(outcome_to_json(&f, &outcome).to_string())
}

#[pymodule]
fn rankdec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Pattern>()?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(decoding_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    Ok(())
}
