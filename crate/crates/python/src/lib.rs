//! Python bindings. Field elements cross the boundary in exponent form:
//! `k` stands for `α^k` and `None` for zero.

use std::sync::Arc;

use nbldpc::analysis::{self, DEFAULT_BUDGET};
use nbldpc::code::{self, CodeWord, MessageWord};
use nbldpc::formats::{self, FieldSpec, ZeroStyle};
use nbldpc::{CodeSpec, ExponentMatrix, FieldElement, Mode};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pythonize::pythonize;

type Exponent = Option<u32>;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(value_err)
}

fn dense(m: &ExponentMatrix) -> Vec<Vec<Exponent>> {
    m.to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(Option::from).collect())
        .collect()
}

fn elements(v: Vec<Exponent>) -> Vec<FieldElement> {
    v.into_iter().map(FieldElement::from).collect()
}

#[pyclass(name = "GaloisField", frozen)]
struct PyGaloisField {
    inner: Arc<nbldpc::GaloisField>,
}

#[pymethods]
impl PyGaloisField {
    /// `GaloisField(p, N)` or `GaloisField("2^5")`.
    #[new]
    #[pyo3(signature = (p, degree=None))]
    fn new(p: &Bound<'_, PyAny>, degree: Option<u32>) -> PyResult<Self> {
        let spec = match degree {
            Some(degree) => FieldSpec {
                p: p.extract()?,
                degree,
            },
            None => match p.extract::<String>() {
                Ok(s) => s.parse().map_err(value_err)?,
                Err(_) => p.extract::<u32>()?.to_string().parse().map_err(value_err)?,
            },
        };
        let inner = nbldpc::GaloisField::new(spec.p, spec.degree).map_err(value_err)?;
        Ok(PyGaloisField { inner: Arc::new(inner) })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    /// Coefficients of the modulus, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn add(&self, a: Exponent, b: Exponent) -> Exponent {
        self.inner.add(a.into(), b.into()).into()
    }

    fn sub(&self, a: Exponent, b: Exponent) -> Exponent {
        self.inner.sub(a.into(), b.into()).into()
    }

    fn mul(&self, a: Exponent, b: Exponent) -> Exponent {
        self.inner.mul(a.into(), b.into()).into()
    }

    fn neg(&self, a: Exponent) -> Exponent {
        self.inner.neg(a.into()).into()
    }

    fn inv(&self, a: Exponent) -> PyResult<Exponent> {
        Ok(self.inner.inv(a.into()).map_err(value_err)?.into())
    }

    /// Packed integer `Σ c_i p^i` of an element.
    fn to_int(&self, a: Exponent) -> u32 {
        self.inner.to_repr(a.into())
    }

    #[pyo3(name = "from_int")]
    fn element_from_int(&self, r: u32) -> PyResult<Exponent> {
        self.inner
            .from_repr(r)
            .map(Option::from)
            .ok_or_else(|| PyValueError::new_err(format!("{r} is not an element of GF({})", self.inner.order())))
    }

    fn det(&self, m: Vec<Vec<Exponent>>) -> PyResult<Exponent> {
        let m: Vec<Vec<FieldElement>> = m.into_iter().map(elements).collect();
        Ok(self.inner.det(&m).map_err(value_err)?.into())
    }

    fn rank(&self, m: Vec<Vec<Exponent>>) -> usize {
        self.inner.rank(m.into_iter().map(elements).collect())
    }

    fn __repr__(&self) -> String {
        format!("GaloisField({}, {})", self.inner.characteristic(), self.inner.degree())
    }
}

#[pyclass(name = "DifferenceTriangleSet", frozen)]
struct PyDts {
    inner: nbldpc::DifferenceTriangleSet,
}

#[pymethods]
impl PyDts {
    #[new]
    fn new(sets: Vec<Vec<u32>>) -> PyResult<Self> {
        let inner = nbldpc::DifferenceTriangleSet::new(sets).map_err(value_err)?;
        Ok(PyDts { inner })
    }

    /// Inline form such as `"1,2,6;1,2,4"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        let inner = nbldpc::DifferenceTriangleSet::parse_inline(s).map_err(value_err)?;
        Ok(PyDts { inner })
    }

    #[getter]
    fn sets(&self) -> Vec<Vec<u32>> {
        self.inner.sets().to_vec()
    }

    #[getter]
    fn scope(&self) -> u32 {
        self.inner.scope()
    }

    #[pyo3(signature = (mode="relaxed"))]
    fn is_valid(&self, mode: &str) -> PyResult<bool> {
        Ok(self.inner.is_valid(parse_mode(mode)?))
    }

    /// Validation report with the 1-based `(set, j, k)` witnesses of every
    /// repeated difference.
    #[pyo3(signature = (mode="relaxed"))]
    fn validate<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        Ok(pythonize(py, &self.inner.validate(parse_mode(mode)?))?)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DifferenceTriangleSet({:?})", self.inner.sets())
    }
}

#[pyclass(name = "Code", frozen)]
struct PyCode {
    inner: CodeSpec,
}

#[pymethods]
impl PyCode {
    /// `Code(dts, field, n=None)`; `dts` is a `DifferenceTriangleSet`, a
    /// list of sets or an inline string, `field` a `GaloisField` or `"p^N"`.
    #[new]
    #[pyo3(signature = (dts, field, n=None))]
    fn new(dts: &Bound<'_, PyAny>, field: &Bound<'_, PyAny>, n: Option<usize>) -> PyResult<Self> {
        let dts = if let Ok(d) = dts.cast::<PyDts>() {
            d.get().inner.clone()
        } else if let Ok(s) = dts.extract::<String>() {
            nbldpc::DifferenceTriangleSet::parse_inline(&s).map_err(value_err)?
        } else {
            nbldpc::DifferenceTriangleSet::new(dts.extract()?).map_err(value_err)?
        };
        let field = if let Ok(f) = field.cast::<PyGaloisField>() {
            f.get().inner.clone()
        } else {
            let spec: FieldSpec = field.extract::<String>()?.parse().map_err(value_err)?;
            Arc::new(nbldpc::GaloisField::new(spec.p, spec.degree).map_err(value_err)?)
        };
        let n = n.unwrap_or(dts.num_sets() + 1);
        let inner = CodeSpec::new(dts, field, n).map_err(value_err)?;
        Ok(PyCode { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn weight(&self) -> usize {
        self.inner.weight()
    }

    #[getter]
    fn memory(&self) -> usize {
        self.inner.memory()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn field(&self) -> PyGaloisField {
        PyGaloisField {
            inner: self.inner.field_arc(),
        }
    }

    fn base_matrix(&self) -> Vec<Vec<Exponent>> {
        dense(self.inner.base_matrix())
    }

    fn sliding_matrix(&self, j: usize) -> Vec<Vec<Exponent>> {
        dense(&self.inner.sliding_matrix(j))
    }

    fn full_sliding_matrix(&self, blocks: usize) -> Vec<Vec<Exponent>> {
        dense(&self.inner.full_sliding_matrix(blocks))
    }

    /// `H_j^c` as text: `"pretty"` (α-power grid) or `"alist"`.
    #[pyo3(signature = (j, format="pretty"))]
    fn render(&self, j: usize, format: &str) -> PyResult<String> {
        let m = self.inner.sliding_matrix(j);
        match format {
            "pretty" => Ok(formats::render_pretty(&m, ZeroStyle::Zero)),
            "alist" => Ok(formats::to_alist(&m)),
            other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        }
    }

    /// Encodes information blocks of length `n - 1`.
    fn encode(&self, blocks: Vec<Vec<Exponent>>) -> PyResult<Vec<Vec<Exponent>>> {
        let message = MessageWord {
            blocks: blocks.into_iter().map(elements).collect(),
        };
        let v = self.inner.encode(&message).map_err(value_err)?;
        Ok(v.blocks
            .into_iter()
            .map(|b| b.into_iter().map(Option::from).collect())
            .collect())
    }

    fn syndrome(&self, blocks: Vec<Vec<Exponent>>) -> PyResult<Vec<Exponent>> {
        let word = CodeWord {
            blocks: blocks.into_iter().map(elements).collect(),
        };
        let s = self.inner.syndrome(&word).map_err(value_err)?;
        Ok(s.into_iter().map(Option::from).collect())
    }

    fn min_column_weight(&self, j: usize) -> usize {
        self.inner.min_column_weight(j)
    }

    #[pyo3(signature = (horizon=None, budget=DEFAULT_BUDGET))]
    fn column_distances(&self, py: Python<'_>, horizon: Option<usize>, budget: u64) -> PyResult<Vec<usize>> {
        let horizon = horizon.unwrap_or(self.inner.memory());
        py.detach(|| analysis::column_distances(&self.inner, horizon, budget))
            .map_err(value_err)
    }

    /// `{"exact": d}` or `{"bounds": {"lower_bound": .., "upper_bound": ..}}`.
    #[pyo3(signature = (horizon=None, budget=DEFAULT_BUDGET))]
    fn free_distance<'py>(&self, py: Python<'py>, horizon: Option<usize>, budget: u64) -> PyResult<Bound<'py, PyAny>> {
        let horizon = horizon.unwrap_or(self.inner.memory());
        let d = py
            .detach(|| analysis::free_distance(&self.inner, horizon, budget))
            .map_err(value_err)?;
        Ok(pythonize(py, &d)?)
    }

    #[pyo3(signature = (horizon=None, budget=DEFAULT_BUDGET))]
    fn distance_profile<'py>(
        &self,
        py: Python<'py>,
        horizon: Option<usize>,
        budget: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let horizon = horizon.unwrap_or(self.inner.memory());
        let p = py
            .detach(|| analysis::distance_profile(&self.inner, horizon, budget))
            .map_err(value_err)?;
        Ok(pythonize(py, &p)?)
    }

    #[pyo3(signature = (size, horizon=None, budget=DEFAULT_BUDGET))]
    fn check_minors<'py>(
        &self,
        py: Python<'py>,
        size: usize,
        horizon: Option<usize>,
        budget: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let horizon = horizon.unwrap_or(self.inner.memory());
        let r = py
            .detach(|| analysis::check_minors(&self.inner, size, horizon, budget))
            .map_err(value_err)?;
        Ok(pythonize(py, &r)?)
    }

    #[pyo3(signature = (length, horizon=None, budget=DEFAULT_BUDGET))]
    fn enumerate_cycles<'py>(
        &self,
        py: Python<'py>,
        length: usize,
        horizon: Option<usize>,
        budget: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let horizon = horizon.unwrap_or(self.inner.memory());
        let r = py
            .detach(|| analysis::enumerate_cycles(&self.inner, length, horizon, budget))
            .map_err(value_err)?;
        Ok(pythonize(py, &r)?)
    }

    fn __repr__(&self) -> String {
        let f = self.inner.field();
        format!(
            "Code(\"{}\", \"{}^{}\", n={})",
            self.inner.dts(),
            f.characteristic(),
            f.degree(),
            self.inner.n()
        )
    }
}

/// Density of the sliding matrix as `(numerator, denominator)`.
#[pyfunction]
fn density(n: u64, w: u64, mu: u64, length: u64) -> PyResult<(u64, u64)> {
    let d = code::density(n, w, mu, length).map_err(value_err)?;
    Ok((*d.numer(), *d.denom()))
}

/// `{"q_2x2", "n_3x3", "three_by_three_applies", "suggested": (p, N) or None}`
#[pyfunction]
fn min_field_params<'py>(py: Python<'py>, n: u64, scope: u64, w: u64) -> PyResult<Bound<'py, PyAny>> {
    Ok(pythonize(py, &code::min_field_params(n, scope, w))?)
}

#[pyfunction]
#[pyo3(signature = (num_sets, size, mode="relaxed", min_element=1, scope_budget=64))]
fn search_min_scope<'py>(
    py: Python<'py>,
    num_sets: usize,
    size: usize,
    mode: &str,
    min_element: u32,
    scope_budget: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = parse_mode(mode)?;
    let r = py
        .detach(|| nbldpc::dts::search_min_scope(num_sets, size, mode, min_element, scope_budget))
        .map_err(value_err)?;
    Ok(pythonize(py, &r)?)
}

#[pymodule]
fn pynbldpc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaloisField>()?;
    m.add_class::<PyDts>()?;
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(min_field_params, m)?)?;
    m.add_function(wrap_pyfunction!(search_min_scope, m)?)?;
    Ok(())
}
