//! Cusps and double points of the b-locus, the critical circle and the
//! radius of the disk holding the cusps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::intersect::curve_self_intersections;
use super::locus::{b_locus_point, b_locus_tangent};
use super::rays::{ray_set, Parity, Ray};
use crate::angle::{arg, circle_distance, reduce, wrap_pi};
use crate::error::{Error, Result};
use crate::roots::{find_all_roots_with, OracleOptions};
use crate::trinomial::{check_exponents, check_finite, check_radius, HarmonicTrinomial, Tolerances};

/// Relative tolerance on the cusp radius condition `(n+2m)·v^(n+m) = m·|c|`.
pub const CUSP_RADIUS_TOLERANCE: f64 = 1e-9;

fn check_c(n: u32, m: u32, c: Complex64) -> Result<()> {
    check_exponents(n, m)?;
    check_finite(c, "c")?;
    if c.norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("c must be nonzero"));
    }
    Ok(())
}

/// `|c|^(n/(n+m))·((m/(n+2m))^(n/(n+m)) + (n/(n+2m))·((n+2m)/m)^(m/(n+m)))`.
pub fn singular_disk_radius(n: u32, m: u32, c_mod: f64) -> Result<f64> {
    check_exponents(n, m)?;
    if !(c_mod.is_finite() && c_mod > 0.0) {
        return Err(Error::InvalidInput(format!("|c| must be positive, got {c_mod}")));
    }
    let (n, m) = (n as f64, m as f64);
    let (deg, wide) = (n + m, n + 2.0 * m);
    Ok(c_mod.powf(n / deg) * ((m / wide).powf(n / deg) + (n / wide) * (wide / m).powf(m / deg)))
}

/// Radius of the circle where the Jacobian vanishes.
pub fn critical_circle_radius(h: &HarmonicTrinomial) -> Result<f64> {
    if h.b().norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("critical circle needs b nonzero"));
    }
    let (m, deg) = (h.m() as f64, h.degree() as f64);
    Ok((m * h.b().norm() / (deg * h.a().norm())).powf(1.0 / h.n() as f64))
}

/// The only modulus at which the b-locus has cusps.
pub fn cusp_radius(n: u32, m: u32, c: Complex64) -> Result<f64> {
    check_c(n, m, c)?;
    Ok((m as f64 * c.norm() / (n + 2 * m) as f64).powf(1.0 / (n + m) as f64))
}

/// Values of `b` at which the b-locus for modulus `v` has a cusp.
///
/// Substituting `b = ((n+m)/m)·v^n·e^(i(n+2m)φ)` into the locus equation
/// leaves `((n+2m)/m)·v^(n+m)·e^(i(n+m)φ) + c = 0`; its solutions in `φ` are
/// found by scanning and bisection.
pub fn cusp_candidates(n: u32, m: u32, c: Complex64, v: f64) -> Result<Vec<Complex64>> {
    check_c(n, m, c)?;
    check_radius(v)?;
    let (nf, mf, deg) = (n as f64, m as f64, (n + m) as f64);
    let lhs = (nf + 2.0 * mf) * v.powf(deg);
    if (lhs - mf * c.norm()).abs() > CUSP_RADIUS_TOLERANCE * mf * c.norm() {
        return Err(Error::NoCusp(v));
    }
    let target = arg(c) + PI;
    let g = |phi: f64| wrap_pi(deg * phi - target);
    let samples = 64 * (n + m) as usize;
    let step = TAU / samples as f64;
    let mut phis = Vec::new();
    for k in 0..samples {
        let (mut lo, mut hi) = (step * k as f64, step * (k + 1) as f64);
        let (g_lo, g_hi) = (g(lo), g(hi));
        if g_lo == 0.0 {
            phis.push(lo);
            continue;
        }
        // a genuine zero, not the jump of the wrapped angle at ±π
        if g_lo * g_hi >= 0.0 || (g_hi - g_lo).abs() > PI {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) > 0.0) == (g_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        phis.push(0.5 * (lo + hi));
    }
    let modulus = (deg / mf) * v.powf(nf);
    Ok(phis
        .into_iter()
        .map(|phi| Complex64::from_polar(modulus, (nf + 2.0 * mf) * phi))
        .collect())
}

/// The argument `γ/(n+m)` assigned to double roots.
pub fn double_root_angle(n: u32, m: u32, c: Complex64) -> Result<f64> {
    check_c(n, m, c)?;
    Ok(reduce(arg(c) / (n + m) as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoublePoint {
    pub b: Complex64,
    pub v: f64,
    /// Arguments of the two roots of modulus `v`.
    pub theta1: f64,
    pub theta2: f64,
}

/// Self-intersections of the b-locus at modulus `v`; each is a value of `b`
/// for which two distinct roots share the modulus `v`.
pub fn b_locus_double_points(n: u32, m: u32, c: Complex64, v: f64, samples: usize) -> Result<Vec<DoublePoint>> {
    check_c(n, m, c)?;
    check_radius(v)?;
    if samples < 16 {
        return Err(Error::InvalidInput(format!("at least 16 samples required, got {samples}")));
    }
    let crossings = curve_self_intersections(
        |t| b_locus_point(n, m, c, v, t),
        |t| b_locus_tangent(n, m, c, v, t),
        samples,
    );
    Ok(crossings
        .into_iter()
        .map(|x| DoublePoint { b: x.point, v, theta1: x.t1, theta2: x.t2 })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoSweep {
    pub ray: Ray,
    /// `|b|` where the oracle root count first changes along the ray.
    pub transition: f64,
    pub count_below: usize,
    pub count_above: usize,
}

/// Locates where the number of roots first changes as `b` moves out along a
/// ray of the same parity as `n`, using only the root oracle.
///
/// `|b|` is swept over 64 geometric points of `[0.05, 20]·|c|^(n/(n+m))`,
/// and the first change is bisected 40 times.
pub fn rho_transition(n: u32, m: u32, c: Complex64, tol: &Tolerances, opts: &OracleOptions) -> Result<Option<RhoSweep>> {
    check_c(n, m, c)?;
    let parity = Parity::of(n);
    let ray = *ray_set(n, m, c)?
        .iter()
        .find(|r| r.parity == parity)
        .expect("both parities present");
    let count = |t: f64| -> Result<usize> {
        let h = HarmonicTrinomial::monic(ray.direction() * t, c, n, m)?;
        Ok(find_all_roots_with(&h, tol, opts)?.len())
    };
    let unit = c.norm().powf(n as f64 / (n + m) as f64);
    let (lo, hi) = (0.05 * unit, 20.0 * unit);
    let points = 64;
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    let first = count(lo)?;
    let mut prev = lo;
    for i in 1..points {
        let t = lo * ratio.powi(i as i32);
        let k = count(t)?;
        if k != first {
            let (mut a, mut b) = (prev, t);
            let mut above = k;
            for _ in 0..40 {
                let mid = 0.5 * (a + b);
                let km = count(mid)?;
                if km == first {
                    a = mid;
                } else {
                    b = mid;
                    above = km;
                }
            }
            return Ok(Some(RhoSweep {
                ray,
                transition: 0.5 * (a + b),
                count_below: first,
                count_above: above,
            }));
        }
        prev = t;
    }
    Ok(None)
}

/// Relative gap above which a published `ρ` is flagged against the formula.
pub const PUBLISHED_RHO_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedRho {
    pub formula: f64,
    pub published: f64,
    pub relative_gap: f64,
    /// The published value disagrees with the formula.
    pub flagged: bool,
}

/// Compares a quoted value of `ρ` with [`singular_disk_radius`].
pub fn check_published_rho(n: u32, m: u32, c_mod: f64, published: f64) -> Result<PublishedRho> {
    if !(published.is_finite() && published > 0.0) {
        return Err(Error::InvalidInput(format!("published rho must be positive, got {published}")));
    }
    let formula = singular_disk_radius(n, m, c_mod)?;
    let relative_gap = (published - formula).abs() / formula;
    Ok(PublishedRho { formula, published, relative_gap, flagged: relative_gap > PUBLISHED_RHO_TOLERANCE })
}

/// Whether `θ` agrees with [`double_root_angle`] within `tol.angular`.
pub fn matches_double_root_angle(n: u32, m: u32, c: Complex64, theta: f64, tol: &Tolerances) -> Result<bool> {
    Ok(circle_distance(theta - double_root_angle(n, m, c)?) <= tol.angular)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularReport {
    pub rho: f64,
    pub cusp_radius: f64,
    pub cusps: Vec<Complex64>,
    pub double_points: Vec<DoublePoint>,
    pub critical_circle_radius: Option<f64>,
    pub double_root_angle: f64,
}

/// Collects the singular data for the family `z^(n+m) + b·z̄^m + c`: cusps at
/// the cusp radius, double points of the b-locus at each of `radii`, and the
/// critical circle of `z^(n+m) + b·z̄^m + c` when `b` is given.
pub fn singular_report(
    n: u32,
    m: u32,
    c: Complex64,
    radii: &[f64],
    b: Option<Complex64>,
    samples: usize,
) -> Result<SingularReport> {
    let v_cusp = cusp_radius(n, m, c)?;
    let cusps = cusp_candidates(n, m, c, v_cusp)?;
    let mut double_points = Vec::new();
    for &v in radii {
        double_points.extend(b_locus_double_points(n, m, c, v, samples)?);
    }
    let critical = match b {
        Some(b) if b.norm() > 0.0 => Some(critical_circle_radius(&HarmonicTrinomial::monic(b, c, n, m)?)?),
        _ => None,
    };
    Ok(SingularReport {
        rho: singular_disk_radius(n, m, c.norm())?,
        cusp_radius: v_cusp,
        cusps,
        double_points,
        critical_circle_radius: critical,
        double_root_angle: double_root_angle(n, m, c)?,
    })
}
