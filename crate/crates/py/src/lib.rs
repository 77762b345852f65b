//! Python bindings for the root-system, Koszul-form and para-complex machinery.
//!
//! Exact rationals cross the boundary as `fractions.Fraction`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use parakahler_core::chevalley::{chevalley_constants, LieAlgebraData};
use parakahler_core::cli::{execute, Cli};
use parakahler_core::gradation::{self as grad, CrossingSet};
use parakahler_core::koszul;
use parakahler_core::paracomplex::{self as pc, ChartPotential, FdConfig, SampleSpec};
use parakahler_core::rational::{self, Rational};
use parakahler_core::rootsys::{self, SimpleType};
use parakahler_core::verify::{self as ver, VerifyOptions};

use clap::Parser;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rational::render(q),))
}

fn fractions<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    qs.iter().map(|q| fraction(py, q)).collect()
}

fn parse_type(family: &str, rank: usize) -> PyResult<SimpleType> {
    let f: rootsys::Family = family.parse().map_err(value_err)?;
    SimpleType::new(f, rank).map_err(value_err)
}

#[pyclass(name = "RootSystem", module = "parakahler", frozen)]
struct PyRootSystem {
    inner: rootsys::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        Ok(Self { inner: rootsys::RootSystem::build(parse_type(family, rank)?) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Dimension of the complex simple Lie algebra.
    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    /// Positive roots as simple-root coordinates, in basis order.
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().iter().map(|r| r.coeffs().to_vec()).collect()
    }

    fn highest_root(&self) -> Vec<i64> {
        self.inner.highest_root().coeffs().to_vec()
    }

    fn fundamental_weight<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        if i == 0 || i > self.inner.rank() {
            return Err(value_err(format!("node {i} out of range 1..={}", self.inner.rank())));
        }
        fractions(py, self.inner.fundamental_weight(i - 1).coords())
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.simple_type())
    }
}

#[pyclass(name = "Gradation", module = "parakahler", frozen)]
struct PyGradation {
    inner: grad::Gradation,
    algebra: LieAlgebraData,
}

#[pymethods]
impl PyGradation {
    /// `crossed` holds 1-based node numbers.
    #[new]
    fn new(family: &str, rank: usize, crossed: Vec<usize>) -> PyResult<Self> {
        let rs = rootsys::RootSystem::build(parse_type(family, rank)?);
        let c = CrossingSet::from_one_based(rank, &crossed).map_err(value_err)?;
        let inner = grad::grade_from_crossing(&rs, &c).map_err(value_err)?;
        Ok(Self { algebra: chevalley_constants(&rs), inner })
    }

    #[getter]
    fn orbit_dimension(&self) -> usize {
        self.inner.orbit_dimension()
    }

    #[getter]
    fn depth(&self) -> i64 {
        self.inner.depth()
    }

    /// Koszul form in simple-root coordinates.
    fn koszul_form<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, koszul::koszul_form(&self.inner).coords())
    }

    /// Koszul form in fundamental-weight coordinates.
    fn koszul_form_pi<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let psi = koszul::koszul_form(&self.inner);
        fractions(py, &self.inner.root_system().to_weight_basis(&psi))
    }

    /// `{node: (a, b)}` keyed by 1-based crossed node.
    fn koszul_coefficients(&self) -> BTreeMap<usize, (i64, i64)> {
        koszul::koszul_coefficients(&self.inner).into_iter().map(|(i, c)| (i + 1, (c.a, c.b))).collect()
    }

    /// `{positive root: ρ(X_α, X_{-α})}`.
    fn rho<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (r, c) in koszul::rho(&self.inner).entries(self.inner.root_system()) {
            d.set_item(PyTuple::new(py, r.coeffs())?, fraction(py, &c)?)?;
        }
        Ok(d)
    }

    fn kernel_is_g0(&self) -> bool {
        koszul::kernel_is_g0(&koszul::rho(&self.inner), &self.inner, &self.algebra)
    }

    /// `(positive, negative, zero)` for the metric `λ⁻¹ ρ(·, K·)`.
    #[pyo3(signature = (lam = "1"))]
    fn einstein_signature(&self, lam: &str) -> PyResult<(usize, usize, usize)> {
        let lambda = rational::parse(lam).map_err(value_err)?;
        let e = koszul::einstein_structure(&self.inner, &self.algebra, &lambda).map_err(value_err)?;
        let s = e.signature();
        Ok((s.positive, s.negative, s.zero))
    }

    /// Whether the catalog real form `name` admits this gradation.
    fn satake_consistent(&self, name: &str) -> PyResult<bool> {
        let s = grad::catalog_lookup(name).map_err(value_err)?;
        grad::satake_consistent(&s, self.inner.crossing()).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Gradation('{}', {})", self.inner.root_system().simple_type(), self.inner.crossing())
    }
}

#[pyclass(name = "ParaComplex", module = "parakahler", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyParaComplex {
    inner: pc::ParaComplex<f64>,
}

impl From<pc::ParaComplex<f64>> for PyParaComplex {
    fn from(inner: pc::ParaComplex<f64>) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyParaComplex {
    #[new]
    #[pyo3(signature = (re, im = 0.0))]
    fn new(re: f64, im: f64) -> Self {
        pc::ParaComplex::new(re, im).into()
    }

    #[getter]
    fn re(&self) -> f64 {
        self.inner.re
    }

    #[getter]
    fn im(&self) -> f64 {
        self.inner.im
    }

    fn conj(&self) -> Self {
        self.inner.conj().into()
    }

    fn norm_sq(&self) -> f64 {
        self.inner.norm_sq()
    }

    fn is_null(&self) -> bool {
        self.inner.is_null()
    }

    fn idempotent(&self) -> (f64, f64) {
        self.inner.to_idempotent()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.inner.inv().map(Into::into).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __add__(&self, o: &Self) -> Self {
        (self.inner + o.inner).into()
    }

    fn __sub__(&self, o: &Self) -> Self {
        (self.inner - o.inner).into()
    }

    fn __mul__(&self, o: &Self) -> Self {
        (self.inner * o.inner).into()
    }

    fn __neg__(&self) -> Self {
        (-self.inner).into()
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __repr__(&self) -> String {
        format!("ParaComplex({})", self.inner)
    }
}

/// Einstein residual of `F = scale · log(1 + Σ z z̄)` on a `count × count` grid.
#[pyfunction]
#[pyo3(signature = (scale = 1.0, count = 9, radius = 0.3))]
fn log_model_residual(scale: f64, count: usize, radius: f64) -> PyResult<f64> {
    let f = ChartPotential::log_model(1, scale);
    let points = SampleSpec::Grid { count, radius }.points(1);
    pc::einstein_residual(&f, 2.0 / scale, &points, &FdConfig::default()).map_err(value_err)
}

/// `{check: (passed, total)}` for the structural sweep up to `max_rank`.
#[pyfunction]
#[pyo3(signature = (max_rank = 2))]
fn verify(py: Python<'_>, max_rank: usize) -> BTreeMap<String, (usize, usize)> {
    let report = py.detach(|| ver::run(max_rank, &VerifyOptions::default()));
    report.checks.into_iter().map(|c| (c.name, (c.passed, c.total))).collect()
}

/// Runs a command-line invocation and returns its JSON report.
#[pyfunction]
fn report_json(args: Vec<String>) -> PyResult<String> {
    let cli = Cli::try_parse_from(std::iter::once("parakahler".to_string()).chain(args)).map_err(value_err)?;
    execute(&cli).map(|r| r.to_json()).map_err(value_err)
}

#[pymodule]
pub fn parakahler(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyGradation>()?;
    m.add_class::<PyParaComplex>()?;
    m.add_function(wrap_pyfunction!(log_model_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    Ok(())
}
