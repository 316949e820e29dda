//! Python module `walker`.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use walker_core::closed_moments::{w3_odd, w4_odd};
use walker_core::densities::{cdf_odd_dim, density_odd_dim};
use walker_core::exact_moments::{moment_row, residues_v3};
use walker_core::genfun::{gf_check as core_gf_check, GfKind};
use walker_core::montecarlo::{estimate_moments as core_estimate, ks_test as core_ks, CdfSource, ReferenceCdf};
use walker_core::numcore::{fmt_rat, parse_rat, BigRat, HalfInt};
use walker_core::quadrature::{cdf_quad, density_quad, moment_quad, QuadSpec as CoreQuadSpec};
use walker_core::verify::run_suite;
use walker_core::WalkError;

create_exception!(walker, WalkerError, PyException);

fn err(e: WalkError) -> PyErr {
    WalkerError::new_err(e.to_string())
}

fn nu_of(dim: u32) -> PyResult<HalfInt> {
    HalfInt::from_dim(dim).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &BigRat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rat(r),))
}

/// Quadrature settings for the Bessel-integral oracle.
#[pyclass(from_py_object)]
#[derive(Clone, Copy)]
struct QuadSpec {
    #[pyo3(get, set)]
    boost: Option<u32>,
    #[pyo3(get, set)]
    tol: f64,
    #[pyo3(get, set)]
    max_zones: usize,
}

#[pymethods]
impl QuadSpec {
    #[new]
    #[pyo3(signature = (boost=None, tol=1e-10, max_zones=10_000))]
    fn new(boost: Option<u32>, tol: f64, max_zones: usize) -> Self {
        Self { boost, tol, max_zones }
    }

    fn __repr__(&self) -> String {
        format!("QuadSpec(boost={:?}, tol={}, max_zones={})", self.boost, self.tol, self.max_zones)
    }
}

impl QuadSpec {
    fn core(spec: Option<QuadSpec>) -> CoreQuadSpec {
        match spec {
            None => CoreQuadSpec::default(),
            Some(s) => CoreQuadSpec { boost_k: s.boost, tol: s.tol, max_zones: s.max_zones, ..CoreQuadSpec::default() },
        }
    }
}

/// Exact rational combination over a named constant basis.
#[pyclass(frozen)]
struct ConstCombo {
    inner: walker_core::numcore::ConstCombo,
}

#[pymethods]
impl ConstCombo {
    #[getter]
    fn basis(&self) -> Vec<&'static str> {
        self.inner.basis().names().to_vec()
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.coeffs().iter().map(|c| fraction(py, c)).collect()
    }

    fn value(&self) -> f64 {
        self.inner.value()
    }

    fn __float__(&self) -> f64 {
        self.inner.value()
    }

    fn __repr__(&self) -> String {
        format!("ConstCombo({})", self.inner)
    }
}

/// Piecewise Laurent polynomial with rational breakpoints.
#[pyclass(frozen)]
struct PiecewiseFn {
    inner: walker_core::numcore::PiecewiseFn,
}

#[pymethods]
impl PiecewiseFn {
    #[getter]
    fn breaks<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.breaks().iter().map(|b| fraction(py, b)).collect()
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(err)
    }

    /// Exact value at a rational point given as "p/q" or a decimal string.
    fn eval_exact<'py>(&self, py: Python<'py>, x: &str) -> PyResult<Bound<'py, PyAny>> {
        let x = parse_rat(x).map_err(err)?;
        fraction(py, &self.inner.eval_rat(&x).map_err(err)?)
    }

    fn integral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.integral().map_err(err)?)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

/// Exact even moments W_n(ν;2k) for k = 0..=kmax as Fractions.
#[pyfunction]
fn moment_table(py: Python<'_>, steps: u32, dim: u32, kmax: u32) -> PyResult<Vec<Bound<'_, PyAny>>> {
    let row = moment_row(steps, nu_of(dim)?, kmax).map_err(err)?;
    row.iter().map(|v| fraction(py, v)).collect()
}

/// W_n(ν;s) from the Bessel-integral oracle; returns (value, error estimate).
#[pyfunction]
#[pyo3(signature = (steps, dim, s, spec=None))]
fn moment(py: Python<'_>, steps: u32, dim: u32, s: f64, spec: Option<QuadSpec>) -> PyResult<(f64, f64)> {
    let nu = nu_of(dim)?;
    let spec = QuadSpec::core(spec);
    let r = py.detach(|| moment_quad(steps, nu, s, &spec)).map_err(err)?;
    Ok((r.value, r.err))
}

/// p_n(ν;x) with the method used and an error estimate.
#[pyfunction]
#[pyo3(signature = (steps, dim, x, spec=None))]
fn density(py: Python<'_>, steps: u32, dim: u32, x: f64, spec: Option<QuadSpec>) -> PyResult<(f64, String, f64)> {
    let nu = nu_of(dim)?;
    let spec = QuadSpec::core(spec);
    let d = py.detach(|| walker_core::densities::density(steps, nu, x, &spec)).map_err(err)?;
    Ok((d.value, d.method.to_string(), d.err))
}

/// P_n(ν;x) with the method used and an error estimate.
#[pyfunction]
#[pyo3(signature = (steps, dim, x, spec=None))]
fn cdf(py: Python<'_>, steps: u32, dim: u32, x: f64, spec: Option<QuadSpec>) -> PyResult<(f64, String, f64)> {
    let nu = nu_of(dim)?;
    let spec = QuadSpec::core(spec);
    let d = py.detach(|| walker_core::densities::cdf(steps, nu, x, &spec)).map_err(err)?;
    Ok((d.value, d.method.to_string(), d.err))
}

/// Oracle values of the density and distribution function.
#[pyfunction]
#[pyo3(signature = (steps, dim, x, cumulative=false))]
fn quad(py: Python<'_>, steps: u32, dim: u32, x: f64, cumulative: bool) -> PyResult<(f64, f64)> {
    let nu = nu_of(dim)?;
    let spec = CoreQuadSpec::default();
    let r = py
        .detach(|| if cumulative { cdf_quad(steps, nu, x, &spec) } else { density_quad(steps, nu, x, &spec) })
        .map_err(err)?;
    Ok((r.value, r.err))
}

/// Exact piecewise density (or distribution function) in an odd dimension.
#[pyfunction]
#[pyo3(signature = (steps, dim, cumulative=false))]
fn odd_dim_density(steps: u32, dim: u32, cumulative: bool) -> PyResult<PiecewiseFn> {
    if dim.is_multiple_of(2) || dim < 3 {
        return Err(WalkerError::new_err(format!("odd dimension >= 3 required, got {dim}")));
    }
    let m = (dim - 1) / 2;
    let inner = if cumulative { cdf_odd_dim(steps, m) } else { density_odd_dim(steps, m) }.map_err(err)?;
    Ok(PiecewiseFn { inner })
}

/// Odd moment W_n(ν;s), n ∈ {3, 4}, over its constant basis.
#[pyfunction]
fn odd_moment(steps: u32, nu: u32, s: i64) -> PyResult<ConstCombo> {
    let inner = match steps {
        3 => w3_odd(nu, s),
        4 => w4_odd(nu, s),
        _ => Err(WalkError::Unsupported(format!("odd moments over a constant basis need 3 or 4 steps, got {steps}"))),
    }
    .map_err(err)?;
    Ok(ConstCombo { inner })
}

/// Normalized residues V₃(ν;k) for k = 0..=kmax.
#[pyfunction]
fn residues(py: Python<'_>, dim: u32, kmax: u32) -> PyResult<Vec<Bound<'_, PyAny>>> {
    residues_v3(nu_of(dim)?, kmax).values.iter().map(|v| fraction(py, v)).collect()
}

/// Named constant from the registry.
#[pyfunction]
fn constant(name: &str) -> PyResult<f64> {
    walker_core::specfun::constant(name).map_err(err)
}

/// Residual of a generating-function identity: kind is "w2", "w3" or "w4dim4".
#[pyfunction]
#[pyo3(signature = (kind, dim, x, kmax=40))]
fn gf_check(kind: &str, dim: u32, x: f64, kmax: u32) -> PyResult<f64> {
    let kind: GfKind = kind.parse().map_err(err)?;
    Ok(core_gf_check(kind, nu_of(dim)?, x, kmax).map_err(err)?.residual)
}

/// Monte Carlo moment estimates as a dict.
#[pyfunction]
#[pyo3(signature = (steps, dim, s, samples=100_000, seed=1))]
fn estimate_moments<'py>(
    py: Python<'py>,
    steps: u32,
    dim: usize,
    s: Vec<f64>,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let st = py.detach(|| core_estimate(steps, dim, &s, samples, seed)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n_steps", st.n_steps)?;
    d.set_item("dim", st.dim)?;
    d.set_item("samples", st.samples)?;
    d.set_item("seed", st.seed)?;
    d.set_item("rng", st.rng)?;
    let m = PyDict::new(py);
    for e in &st.moment_estimates {
        m.set_item(e.s, (e.mean, e.std_err))?;
    }
    d.set_item("moment_estimates", m)?;
    Ok(d)
}

/// KS test at α = 0.01 against the closed or quadrature CDF; returns (statistic, pass).
#[pyfunction]
#[pyo3(signature = (steps, dim, samples=100_000, seed=1, reference="quad"))]
fn ks_test(py: Python<'_>, steps: u32, dim: usize, samples: usize, seed: u64, reference: &str) -> PyResult<(f64, bool)> {
    let src = match reference {
        "closed" => CdfSource::Closed,
        "quad" => CdfSource::Quad,
        r => return Err(WalkerError::new_err(format!("reference must be 'closed' or 'quad', got {r:?}"))),
    };
    let o = py
        .detach(|| {
            let r = ReferenceCdf::new(steps, dim, src)?;
            core_ks(steps, dim, samples, seed, &|x| r.eval(x))
        })
        .map_err(err)?;
    Ok((o.statistic, o.pass))
}

/// Runs an acceptance suite; returns (id, name, passed) per criterion.
#[pyfunction]
#[pyo3(signature = (suite="fast"))]
fn verify(py: Python<'_>, suite: &str) -> PyResult<Vec<(u32, &'static str, bool)>> {
    let results = py.detach(|| run_suite(suite)).map_err(err)?;
    Ok(results.into_iter().map(|r| (r.id, r.name, r.pass)).collect())
}

#[pymodule]
fn walker(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("WalkerError", m.py().get_type::<WalkerError>())?;
    m.add_class::<QuadSpec>()?;
    m.add_class::<ConstCombo>()?;
    m.add_class::<PiecewiseFn>()?;
    m.add_function(wrap_pyfunction!(moment_table, m)?)?;
    m.add_function(wrap_pyfunction!(moment, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(cdf, m)?)?;
    m.add_function(wrap_pyfunction!(quad, m)?)?;
    m.add_function(wrap_pyfunction!(odd_dim_density, m)?)?;
    m.add_function(wrap_pyfunction!(odd_moment, m)?)?;
    m.add_function(wrap_pyfunction!(residues, m)?)?;
    m.add_function(wrap_pyfunction!(constant, m)?)?;
    m.add_function(wrap_pyfunction!(gf_check, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_moments, m)?)?;
    m.add_function(wrap_pyfunction!(ks_test, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
