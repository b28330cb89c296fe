//! Python bindings, importable as `htrinomial`.

use htrinomial::bohl::{self, Regime, DEFAULT_W_SAMPLES};
use htrinomial::egervary::{self, Branch};
use htrinomial::geometry::{self, LocusKind, LocusSample, Parity, TrochoidParams};
use htrinomial::radial::{self, BRadii};
use htrinomial::roots::{self, MultiplicityClass, OracleOptions, Orientation};
use htrinomial::{Error, HarmonicTrinomial, Tolerances};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(htrinomial, NumericalError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for htrinomial::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(err)
    }
}

#[pyclass(name = "Tolerances", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTolerances {
    inner: Tolerances,
}

#[pymethods]
impl PyTolerances {
    #[new]
    #[pyo3(signature = (residual = None, modulus_group = None, angular = None, boundary_band = None))]
    fn new(
        residual: Option<f64>,
        modulus_group: Option<f64>,
        angular: Option<f64>,
        boundary_band: Option<f64>,
    ) -> PyResult<Self> {
        let d = Tolerances::default();
        let inner = Tolerances {
            residual: residual.unwrap_or(d.residual),
            modulus_group: modulus_group.unwrap_or(d.modulus_group),
            angular: angular.unwrap_or(d.angular),
            boundary_band: boundary_band.unwrap_or(d.boundary_band),
        };
        inner.validate().or_raise()?;
        Ok(Self { inner })
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    #[getter]
    fn modulus_group(&self) -> f64 {
        self.inner.modulus_group
    }

    #[getter]
    fn angular(&self) -> f64 {
        self.inner.angular
    }

    #[getter]
    fn boundary_band(&self) -> f64 {
        self.inner.boundary_band
    }

    fn __repr__(&self) -> String {
        let t = &self.inner;
        format!(
            "Tolerances(residual={:e}, modulus_group={:e}, angular={:e}, boundary_band={:e})",
            t.residual, t.modulus_group, t.angular, t.boundary_band
        )
    }
}

fn tol(t: Option<PyRef<'_, PyTolerances>>) -> Tolerances {
    t.map(|t| t.inner).unwrap_or_default()
}

fn oracle(samples: usize) -> OracleOptions {
    OracleOptions { samples, ..OracleOptions::default() }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::CDominant => "c_dominant",
        Regime::ADominant => "a_dominant",
        Regime::BDominant => "b_dominant",
        Regime::Triangle => "triangle",
        Regime::DegenerateBoundary => "degenerate_boundary",
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn ray_dict<'py>(py: Python<'py>, r: &geometry::Ray) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("angle", r.angle)?;
    d.set_item("k", r.k)?;
    d.set_item("parity", parity_name(r.parity))?;
    Ok(d)
}

fn params_dict<'py>(py: Python<'py>, p: &TrochoidParams) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("R", p.big_r)?;
    d.set_item("r", p.small_r)?;
    d.set_item("d", p.d)?;
    d.set_item("phase", p.phase)?;
    d.set_item(
        "kind",
        match p.kind {
            LocusKind::BLocus => "b_locus",
            LocusKind::CLocus => "c_locus",
        },
    )?;
    Ok(d)
}

fn samples_list(curve: Vec<LocusSample>) -> Vec<(f64, Complex64)> {
    curve.into_iter().map(|s| (s.theta, s.value)).collect()
}

/// `a·z^(n+m) + b·conj(z)^m + c` with coprime `n, m ≥ 1`.
#[pyclass(name = "HarmonicTrinomial", frozen)]
struct PyTrinomial {
    inner: HarmonicTrinomial,
}

#[pymethods]
impl PyTrinomial {
    #[new]
    #[pyo3(signature = (n, m, b, c, a = Complex64::new(1.0, 0.0)))]
    fn new(n: u32, m: u32, b: Complex64, c: Complex64, a: Complex64) -> PyResult<Self> {
        Ok(Self { inner: HarmonicTrinomial::new(a, b, c, n, m).or_raise()? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.inner.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.inner.b()
    }

    #[getter]
    fn c(&self) -> Complex64 {
        self.inner.c()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    /// Upper bound `n + 3m` on the number of roots.
    #[getter]
    fn root_bound(&self) -> usize {
        self.inner.root_bound()
    }

    fn __call__(&self, z: Complex64) -> Complex64 {
        self.inner.eval(z)
    }

    fn __repr__(&self) -> String {
        let h = &self.inner;
        format!("HarmonicTrinomial(n={}, m={}, b={}, c={}, a={})", h.n(), h.m(), h.b(), h.c(), h.a())
    }

    /// The same trinomial divided by `a`.
    fn normalized(&self) -> Self {
        Self { inner: self.inner.normalized() }
    }

    #[pyo3(signature = (tolerances = None))]
    fn triangle_profile<'py>(
        &self,
        py: Python<'py>,
        tolerances: Option<PyRef<'_, PyTolerances>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let p = radial::triangle_profile_with(&self.inner, &tol(tolerances)).or_raise()?;
        let d = PyDict::new(py);
        d.set_item("c_radius", p.c_radius)?;
        d.set_item("a_radius", p.a_radius)?;
        d.set_item("b_peak", p.b_peak)?;
        match p.b_radii {
            BRadii::None => d.set_item("b_radii", Vec::<f64>::new())?,
            BRadii::Double { radius } => d.set_item("b_radii", vec![radius])?,
            BRadii::Pair { inner, outer } => d.set_item("b_radii", vec![inner, outer])?,
        }
        d.set_item("double", matches!(p.b_radii, BRadii::Double { .. }))?;
        Ok(d)
    }

    /// Number of roots of modulus below `v`.
    #[pyo3(signature = (v, tolerances = None))]
    fn count_roots_below(&self, v: f64, tolerances: Option<PyRef<'_, PyTolerances>>) -> PyResult<usize> {
        bohl::count_roots_below(&self.inner, v, &tol(tolerances)).or_raise()
    }

    #[pyo3(signature = (v, tolerances = None))]
    fn count_detail<'py>(
        &self,
        py: Python<'py>,
        v: f64,
        tolerances: Option<PyRef<'_, PyTolerances>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let c = bohl::count_detail(&self.inner, v, &tol(tolerances), DEFAULT_W_SAMPLES).or_raise()?;
        let d = PyDict::new(py);
        d.set_item("v", c.v)?;
        d.set_item("regime", regime_name(c.regime))?;
        d.set_item("p_star", c.p_star)?;
        d.set_item("w_star", c.w_star)?;
        d.set_item("w_range", c.w_range)?;
        d.set_item("count", c.count)?;
        Ok(d)
    }

    /// All roots, sorted by modulus then argument.
    #[pyo3(signature = (samples = 2048, tolerances = None))]
    fn roots<'py>(
        &self,
        py: Python<'py>,
        samples: usize,
        tolerances: Option<PyRef<'_, PyTolerances>>,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let list = roots::find_all_roots_with(&self.inner, &tol(tolerances), &oracle(samples)).or_raise()?;
        list.roots
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("value", r.value)?;
                d.set_item("modulus", r.modulus)?;
                d.set_item(
                    "orientation",
                    match r.orientation {
                        Orientation::SensePreserving => "sense_preserving",
                        Orientation::SenseReversing => "sense_reversing",
                        Orientation::Singular => "singular",
                    },
                )?;
                d.set_item("multiple", r.multiplicity_class == MultiplicityClass::Multiple)?;
                d.set_item("residual", r.residual)?;
                d.set_item("jacobian", r.jacobian)?;
                Ok(d)
            })
            .collect()
    }

    /// `(modulus, count)` for each group of equal moduli.
    #[pyo3(signature = (samples = 2048, tolerances = None))]
    fn moduli_spectrum(
        &self,
        samples: usize,
        tolerances: Option<PyRef<'_, PyTolerances>>,
    ) -> PyResult<Vec<(f64, usize)>> {
        let list = roots::find_all_roots_with(&self.inner, &tol(tolerances), &oracle(samples)).or_raise()?;
        Ok(list.spectrum().into_iter().map(|g| (g.modulus, g.count)).collect())
    }

    /// Indices `j` whose `j`-th and `(j+1)`-th root moduli differ.
    #[pyo3(signature = (samples = 2048, tolerances = None))]
    fn uj_members(&self, samples: usize, tolerances: Option<PyRef<'_, PyTolerances>>) -> PyResult<Vec<usize>> {
        let t = tol(tolerances);
        let list = roots::find_all_roots_with(&self.inner, &t, &oracle(samples)).or_raise()?;
        Ok(geometry::classify_uj(&self.inner, &list, &t).or_raise()?.members())
    }

    #[pyo3(signature = (other, tolerances = None))]
    fn is_equivalent<'py>(
        &self,
        py: Python<'py>,
        other: PyRef<'_, PyTrinomial>,
        tolerances: Option<PyRef<'_, PyTolerances>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let w = egervary::is_equivalent(&self.inner, &other.inner, &tol(tolerances)).or_raise()?;
        let d = PyDict::new(py);
        d.set_item("equivalent", w.equivalent)?;
        d.set_item(
            "branch",
            match w.branch {
                Branch::Direct => Some("direct"),
                Branch::Conjugate => Some("conjugate"),
                Branch::None => None,
            },
        )?;
        d.set_item("ratio", w.ratio)?;
        d.set_item("ratio_defect", w.ratio_defect)?;
        d.set_item("congruence_defect", w.congruence_defect)?;
        Ok(d)
    }
}

/// The `2(n+m)` rays for monic trinomials with constant term `c`.
#[pyfunction]
fn ray_set(py: Python<'_>, n: u32, m: u32, c: Complex64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    geometry::ray_set(n, m, c).or_raise()?.iter().map(|r| ray_dict(py, r)).collect()
}

/// `(theta, b)` samples of the b-locus of `z^(n+m) + b·conj(z)^m + c` at modulus `v`.
#[pyfunction]
#[pyo3(signature = (n, m, c, v, samples = 2048))]
fn b_locus_curve(n: u32, m: u32, c: Complex64, v: f64, samples: usize) -> PyResult<Vec<(f64, Complex64)>> {
    Ok(samples_list(geometry::b_locus_curve(n, m, c, v, samples).or_raise()?))
}

/// `(theta, c)` samples of the c-locus of `z^(n+m) + b·conj(z)^m + c` at modulus `v`.
#[pyfunction]
#[pyo3(signature = (n, m, b, v, samples = 2048))]
fn c_locus_curve(n: u32, m: u32, b: Complex64, v: f64, samples: usize) -> PyResult<Vec<(f64, Complex64)>> {
    Ok(samples_list(geometry::c_locus_curve(n, m, b, v, samples).or_raise()?))
}

#[pyfunction]
fn b_locus_params(py: Python<'_>, n: u32, m: u32, c: Complex64, v: f64) -> PyResult<Bound<'_, PyDict>> {
    params_dict(py, &geometry::b_locus_params(n, m, c, v).or_raise()?)
}

#[pyfunction]
fn c_locus_params(py: Python<'_>, n: u32, m: u32, b: Complex64, v: f64) -> PyResult<Bound<'_, PyDict>> {
    params_dict(py, &geometry::c_locus_params(n, m, b, v).or_raise()?)
}

#[pyfunction]
fn singular_disk_radius(n: u32, m: u32, c_mod: f64) -> PyResult<f64> {
    geometry::singular_disk_radius(n, m, c_mod).or_raise()
}

#[pyfunction]
fn cusp_radius(n: u32, m: u32, c: Complex64) -> PyResult<f64> {
    geometry::cusp_radius(n, m, c).or_raise()
}

#[pyfunction]
fn cusp_candidates(n: u32, m: u32, c: Complex64, v: f64) -> PyResult<Vec<Complex64>> {
    geometry::cusp_candidates(n, m, c, v).or_raise()
}

/// Singular data of the family `z^(n+m) + b·conj(z)^m + c`.
#[pyfunction]
#[pyo3(signature = (n, m, c, radii = Vec::new(), b = None, samples = 2048))]
fn singular_report(
    py: Python<'_>,
    n: u32,
    m: u32,
    c: Complex64,
    radii: Vec<f64>,
    b: Option<Complex64>,
    samples: usize,
) -> PyResult<Bound<'_, PyDict>> {
    let r = geometry::singular_report(n, m, c, &radii, b, samples).or_raise()?;
    let d = PyDict::new(py);
    d.set_item("rho", r.rho)?;
    d.set_item("cusp_radius", r.cusp_radius)?;
    d.set_item("cusps", r.cusps)?;
    let doubles: Vec<(Complex64, f64, f64, f64)> =
        r.double_points.iter().map(|p| (p.b, p.v, p.theta1, p.theta2)).collect();
    d.set_item("double_points", doubles)?;
    d.set_item("critical_circle_radius", r.critical_circle_radius)?;
    d.set_item("double_root_angle", r.double_root_angle)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "htrinomial")]
fn htrinomial_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyTolerances>()?;
    m.add_class::<PyTrinomial>()?;
    m.add_function(wrap_pyfunction!(ray_set, m)?)?;
    m.add_function(wrap_pyfunction!(b_locus_curve, m)?)?;
    m.add_function(wrap_pyfunction!(c_locus_curve, m)?)?;
    m.add_function(wrap_pyfunction!(b_locus_params, m)?)?;
    m.add_function(wrap_pyfunction!(c_locus_params, m)?)?;
    m.add_function(wrap_pyfunction!(singular_disk_radius, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_radius, m)?)?;
    m.add_function(wrap_pyfunction!(cusp_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(singular_report, m)?)?;
    Ok(())
}
