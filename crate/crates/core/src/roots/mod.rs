//! Independent numerical oracle for the roots of a harmonic trinomial.
//!
//! A root `ζ` with `|ζ| = v` satisfies `z̄ = v²/z`, so it is also a root of the
//! ordinary polynomial `p_v(z) = a·z^(n+2m) + c·z^m + b·v^(2m)`. Sorting the
//! moduli of the roots of `p_v` gives continuous functions `r_j(v)`, and every
//! sign change of `r_j(v) - v` brackets the modulus of a root of `h`.
//! Multiple roots sit on the critical circle, where they are found by a
//! separate angular search.

pub mod poly;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::angle::arg;
use crate::error::{Error, Result};
use crate::radial::{triangle_profile_with, TriangleProfile};
use crate::trinomial::{check_radius, HarmonicTrinomial, Tolerances};

pub use poly::poly_roots;

/// Coefficients of `p_v`, ascending in degree.
pub fn companion_polynomial(h: &HarmonicTrinomial, v: f64) -> Vec<Complex64> {
    let (n, m) = (h.n() as usize, h.m() as usize);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 2 * m + 1];
    coeffs[0] = h.b() * v.powi(2 * m as i32);
    coeffs[m] += h.c();
    coeffs[n + 2 * m] = h.a();
    coeffs
}

/// `|a(n+m)z^(n+m-1)|² - |b·m·z^(m-1)|²`.
pub fn jacobian(h: &HarmonicTrinomial, z: Complex64) -> f64 {
    h.dz(z).norm_sqr() - h.dzbar(z).norm_sqr()
}

/// Condition number of the real 2×2 Jacobian of `h` at `z`.
pub fn condition_number(h: &HarmonicTrinomial, z: Complex64) -> f64 {
    let (p, q) = (h.dz(z).norm(), h.dzbar(z).norm());
    let gap = (p - q).abs();
    if gap == 0.0 {
        f64::INFINITY
    } else {
        (p + q) / gap
    }
}

const NEWTON_MAX_ITER: usize = 100;
const MAX_CONDITION: f64 = 1e12;

fn machine_residual(h: &HarmonicTrinomial, z: Complex64) -> f64 {
    4.0 * f64::EPSILON * h.scale_at(z.norm())
}

/// Newton's method on `(Re h, Im h)` in the real plane.
///
/// Iterates until the residual reaches rounding level or the step drops
/// below `1e-15` relative. Fails with `SingularJacobian` when the real
/// Jacobian is too ill-conditioned to take a step.
pub fn newton_polish(h: &HarmonicTrinomial, z0: Complex64, tol: &Tolerances) -> Result<Complex64> {
    let mut z = z0;
    for _ in 0..NEWTON_MAX_ITER {
        let f = h.eval(z);
        if f.norm() <= machine_residual(h, z) {
            return Ok(z);
        }
        let cond = condition_number(h, z);
        if cond > MAX_CONDITION {
            return Err(Error::SingularJacobian(cond));
        }
        let (hz, hzb) = (h.dz(z), h.dzbar(z));
        let det = hz.norm_sqr() - hzb.norm_sqr();
        let dz = (-f * hz.conj() + f.conj() * hzb) / det;
        let next = z + dz;
        // stop once rounding prevents further progress
        if h.eval(next).norm() >= f.norm() && dz.norm() <= 1e-12 * z.norm().max(1.0) {
            break;
        }
        z = next;
        if dz.norm() < 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    if h.eval(z).norm() <= tol.residual * h.scale_at(z.norm()) {
        Ok(z)
    } else {
        Err(Error::NoConvergence(NEWTON_MAX_ITER))
    }
}

/// Damped steepest descent on `|h|²`, used when Newton meets a singular Jacobian.
fn descend(h: &HarmonicTrinomial, mut z: Complex64, steps: usize) -> Complex64 {
    let mut t = 1.0;
    for _ in 0..steps {
        let f = h.eval(z);
        let grad = (f * h.dz(z).conj() + f.conj() * h.dzbar(z)) * 2.0;
        if grad.norm() == 0.0 {
            break;
        }
        let e0 = f.norm_sqr();
        let mut moved = false;
        for _ in 0..60 {
            let cand = z - grad * t;
            if h.eval(cand).norm_sqr() < e0 {
                z = cand;
                t *= 2.0;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    z
}

fn polish_with_fallback(h: &HarmonicTrinomial, z0: Complex64, tol: &Tolerances) -> Option<Complex64> {
    match newton_polish(h, z0, tol) {
        Ok(z) => Some(z),
        Err(Error::SingularJacobian(_)) => newton_polish(h, descend(h, z0, 50), tol).ok(),
        Err(_) => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    SensePreserving,
    SenseReversing,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityClass {
    Simple,
    Multiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub value: Complex64,
    pub modulus: f64,
    pub orientation: Orientation,
    pub multiplicity_class: MultiplicityClass,
    pub residual: f64,
    pub jacobian: f64,
}

impl RootRecord {
    fn classify(h: &HarmonicTrinomial, z: Complex64, tol: &Tolerances) -> Self {
        let scale = h.scale_at(z.norm());
        let j = jacobian(h, z);
        let orientation = if j.abs() <= tol.residual * scale * scale {
            Orientation::Singular
        } else if j > 0.0 {
            Orientation::SensePreserving
        } else {
            Orientation::SenseReversing
        };
        let multiplicity_class = if orientation == Orientation::Singular {
            MultiplicityClass::Multiple
        } else {
            MultiplicityClass::Simple
        };
        Self {
            value: z,
            modulus: z.norm(),
            orientation,
            multiplicity_class,
            residual: h.eval(z).norm(),
            jacobian: j,
        }
    }
}

/// How the roots were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `b = 0`: roots of `a·z^(n+m) = -c`.
    NoConjugateTerm,
    /// `c = 0`: the origin plus a circle of closed-form roots.
    NoConstantTerm,
    /// Companion-polynomial modulus scan.
    ModulusScan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusGroup {
    pub modulus: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootList {
    pub roots: Vec<RootRecord>,
    /// Indices into `roots` of roots sharing a modulus.
    pub groups: Vec<Vec<usize>>,
    pub method: Method,
    /// Modulus samples used by the final scan pass; 0 for closed forms.
    pub samples: usize,
    /// `N+ - N-` when no singular root was found.
    pub index_sum: Option<i64>,
}

impl RootList {
    fn build(h: &HarmonicTrinomial, zs: Vec<Complex64>, method: Method, samples: usize, tol: &Tolerances) -> Self {
        let mut roots: Vec<RootRecord> = zs.into_iter().map(|z| RootRecord::classify(h, z, tol)).collect();
        roots.sort_by(|x, y| {
            x.modulus
                .total_cmp(&y.modulus)
                .then(arg(x.value).total_cmp(&arg(y.value)))
        });
        // equal moduli within the group tolerance sort by argument
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, r) in roots.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if r.modulus - roots[*g.last().unwrap()].modulus <= tol.modulus_group => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        for g in &groups {
            let mut idx = g.clone();
            idx.sort_by(|&i, &j| arg(roots[i].value).total_cmp(&arg(roots[j].value)));
            let sorted: Vec<RootRecord> = idx.iter().map(|&i| roots[i]).collect();
            for (slot, rec) in g.iter().zip(sorted) {
                roots[*slot] = rec;
            }
        }
        let singular = roots.iter().any(|r| r.orientation == Orientation::Singular);
        let index_sum = (!singular).then(|| {
            roots
                .iter()
                .map(|r| if r.orientation == Orientation::SensePreserving { 1 } else { -1 })
                .sum()
        });
        Self { roots, groups, method, samples, index_sum }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.modulus).collect()
    }

    pub fn spectrum(&self) -> Vec<ModulusGroup> {
        self.groups
            .iter()
            .map(|g| ModulusGroup {
                modulus: g.iter().map(|&i| self.roots[i].modulus).sum::<f64>() / g.len() as f64,
                count: g.len(),
            })
            .collect()
    }

    pub fn count_below(&self, v: f64) -> usize {
        self.roots.iter().filter(|r| r.modulus < v).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Modulus samples in the first scan pass.
    pub samples: usize,
    /// How many times the sample count may double.
    pub max_doublings: u32,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { samples: 2048, max_doublings: 4 }
    }
}

pub fn find_all_roots(h: &HarmonicTrinomial, tol: &Tolerances) -> Result<RootList> {
    find_all_roots_with(h, tol, &OracleOptions::default())
}

pub fn find_all_roots_with(h: &HarmonicTrinomial, tol: &Tolerances, opts: &OracleOptions) -> Result<RootList> {
    tol.validate()?;
    if opts.samples < 16 {
        return Err(Error::InvalidInput(format!("at least 16 samples required, got {}", opts.samples)));
    }
    let zero = Complex64::new(0.0, 0.0);
    let (n, m, deg) = (h.n() as f64, h.m() as f64, h.degree());
    if h.b() == zero {
        if h.c() == zero {
            return Ok(RootList::build(h, vec![zero], Method::NoConjugateTerm, 0, tol));
        }
        let w = -h.c() / h.a();
        let rho = w.norm().powf(1.0 / deg as f64);
        let zs = (0..deg)
            .map(|k| Complex64::from_polar(rho, (arg(w) + TAU * k as f64) / deg as f64))
            .map(|z| newton_polish(h, z, tol).unwrap_or(z))
            .collect();
        return Ok(RootList::build(h, zs, Method::NoConjugateTerm, 0, tol));
    }
    if h.c() == zero {
        let rho = (h.b().norm() / h.a().norm()).powf(1.0 / n);
        let k_max = h.n() + 2 * h.m();
        let base = arg(h.b()) + PI - arg(h.a());
        let mut zs = vec![zero];
        zs.extend((0..k_max).map(|k| {
            let z = Complex64::from_polar(rho, (base + TAU * k as f64) / (n + 2.0 * m));
            newton_polish(h, z, tol).unwrap_or(z)
        }));
        return Ok(RootList::build(h, zs, Method::NoConstantTerm, 0, tol));
    }

    let profile = triangle_profile_with(h, tol)?;
    let ranges = scan_ranges(&profile);

    let mut found = critical_circle_roots(h, tol);
    let mut profile_moduli = profile.breakpoints();
    profile_moduli.push(profile.b_peak);
    absorb(h, &mut found, candidates_at(h, &profile_moduli, tol), tol);

    let mut samples = opts.samples;
    let mut list;
    let mut attempt = 0;
    loop {
        for &(lo, hi, share) in &ranges {
            let count = ((samples as f64 * share) as usize).max(MIN_RANGE_SAMPLES);
            let moduli = scan(h, lo, hi, count)?;
            absorb(h, &mut found, candidates_at(h, &moduli, tol), tol);
        }
        list = RootList::build(h, found.clone(), Method::ModulusScan, samples, tol);
        if list.len() > h.root_bound() {
            return Err(Error::OracleIncomplete { found: list.len(), bound: h.root_bound() });
        }
        let consistent = list.index_sum.map_or(true, |s| s == deg as i64);
        if consistent {
            break;
        }
        if attempt >= opts.max_doublings {
            // near a fold two roots may merge under deduplication, so the
            // sum only proves a miss when every root is well conditioned
            let near_fold = list.roots.iter().any(|r| {
                let s = h.scale_at(r.modulus);
                r.jacobian.abs() <= tol.residual.sqrt() * s * s
            });
            if near_fold {
                break;
            }
            let found = list.index_sum.unwrap_or_default();
            return Err(Error::IndexSumMismatch { found, expected: deg as i64 });
        }
        attempt += 1;
        samples *= 2;
    }
    Ok(list)
}

/// Floor on the samples given to one triangle interval, however thin.
const MIN_RANGE_SAMPLES: usize = 256;

/// Padded triangle intervals with their share of the scan samples, in
/// proportion to their logarithmic length. Roots only occur where the three
/// sides form a triangle, and scanning each interval on its own keeps very
/// thin intervals resolved.
fn scan_ranges(profile: &TriangleProfile) -> Vec<(f64, f64, f64)> {
    let intervals = profile.triangle_intervals();
    let total: f64 = intervals.iter().map(|(l, u)| (u / l).ln()).sum();
    intervals
        .into_iter()
        .map(|(l, u)| {
            let width = u / l - 1.0;
            let pad = (0.25 * width).clamp(1e-12, 1e-3);
            let share = if total > 0.0 { (u / l).ln() / total } else { 1.0 };
            (l * (1.0 - pad), u * (1.0 + pad), share)
        })
        .collect()
}

/// Adds roots not already present. Earlier entries win.
fn absorb(h: &HarmonicTrinomial, found: &mut Vec<Complex64>, new: Vec<Complex64>, tol: &Tolerances) {
    let radius = tol.modulus_group.max(1e-12);
    // points within about √residual of a multiple root still have an
    // acceptable residual
    let singular_radius = radius.max(tol.residual.sqrt());
    for z in new {
        let dup = found.iter().any(|w| {
            let s = h.scale_at(w.norm());
            let near = if jacobian(h, *w).abs() <= tol.residual * s * s { singular_radius } else { radius };
            (w - z).norm() <= near * z.norm().max(1.0)
        });
        if !dup && h.eval(z).norm() <= tol.residual * h.scale_at(z.norm()) {
            found.push(z);
        }
    }
}

fn sorted_moduli(h: &HarmonicTrinomial, v: f64) -> Result<Vec<f64>> {
    let mut r: Vec<f64> = poly_roots(&companion_polynomial(h, v))?
        .into_iter()
        .map(|z| z.norm())
        .collect();
    r.sort_by(f64::total_cmp);
    Ok(r)
}

fn branch_gap(h: &HarmonicTrinomial, v: f64, j: usize) -> f64 {
    sorted_moduli(h, v).map(|r| r[j] - v).unwrap_or(f64::NAN)
}

fn bisect_branch(h: &HarmonicTrinomial, j: usize, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = branch_gap(h, mid, j);
        if g.is_nan() {
            break;
        }
        if g == 0.0 {
            return mid;
        }
        if (g > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimises `sign·g_j` on `[lo, hi]` by golden section.
fn golden_branch(h: &HarmonicTrinomial, j: usize, sign: f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let f = |v: f64| {
        let g = sign * branch_gap(h, v, j);
        if g.is_nan() {
            f64::INFINITY
        } else {
            g
        }
    };
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi || f1.min(f2) <= 0.0 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, sign * f1)
    } else {
        (x2, sign * f2)
    }
}

/// Candidate root moduli from sign changes and near-zero dips of `r_j(v) - v`.
fn scan(h: &HarmonicTrinomial, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    let ratio = (hi / lo).powf(1.0 / (samples - 1) as f64);
    let vs: Vec<f64> = (0..samples).map(|i| lo * ratio.powi(i as i32)).collect();
    let gaps: Vec<Vec<f64>> = vs
        .par_iter()
        .map(|&v| sorted_moduli(h, v).map(|r| r.into_iter().map(|x| x - v).collect()))
        .collect::<Result<_>>()?;
    let branches = gaps[0].len();

    let tasks: Vec<(usize, usize)> = (0..branches)
        .flat_map(|j| (0..samples - 1).map(move |i| (j, i)))
        .filter(|&(j, i)| {
            let (g0, g1) = (gaps[i][j], gaps[i + 1][j]);
            let crossing = g0 == 0.0 || g0 * g1 < 0.0;
            let dip = i > 0 && {
                let gp = gaps[i - 1][j];
                g0 * gp > 0.0
                    && g0 * g1 > 0.0
                    && g0.abs() < gp.abs()
                    && g0.abs() <= g1.abs()
                    && g0.abs() < 1e-2 * vs[i]
            };
            crossing || dip
        })
        .collect();

    let found: Vec<Vec<f64>> = tasks
        .par_iter()
        .map(|&(j, i)| {
            let (g0, g1) = (gaps[i][j], gaps[i + 1][j]);
            if g0 == 0.0 {
                return vec![vs[i]];
            }
            if g0 * g1 < 0.0 {
                return vec![bisect_branch(h, j, vs[i], vs[i + 1], g0)];
            }
            let sign = g0.signum();
            let (vm, gm) = golden_branch(h, j, sign, vs[i - 1], vs[i + 1]);
            if sign * gm <= 0.0 {
                vec![
                    bisect_branch(h, j, vs[i - 1], vm, gaps[i - 1][j]),
                    bisect_branch(h, j, vm, vs[i + 1], gaps[i + 1][j]),
                ]
            } else if sign * gm <= 1e-9 * vm {
                vec![vm]
            } else {
                Vec::new()
            }
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Polished roots of `h` among the roots of `p_v` lying on `|z| = v`.
fn candidates_at(h: &HarmonicTrinomial, moduli: &[f64], tol: &Tolerances) -> Vec<Complex64> {
    let per_modulus: Vec<Vec<Complex64>> = moduli
        .par_iter()
        .map(|&v| {
            let Ok(zs) = poly_roots(&companion_polynomial(h, v)) else {
                return Vec::new();
            };
            zs.into_iter()
                .filter(|z| (z.norm() - v).abs() <= 1e-6 * v)
                .filter_map(|z| polish_with_fallback(h, z, tol))
                .collect()
        })
        .collect();
    per_modulus.into_iter().flatten().collect()
}

/// Roots on the circle where the Jacobian vanishes, located by minimising `|h|`
/// over the angle. Only points where `|h|` reaches rounding level are kept.
fn critical_circle_roots(h: &HarmonicTrinomial, tol: &Tolerances) -> Vec<Complex64> {
    let r = critical_radius_unchecked(h);
    if !(r.is_finite() && r > 0.0) {
        return Vec::new();
    }
    let samples = 4096;
    let f = |t: f64| h.eval(Complex64::from_polar(r, t)).norm();
    let vals: Vec<f64> = (0..samples).map(|i| f(TAU * i as f64 / samples as f64)).collect();
    let accept = 64.0 * f64::EPSILON * h.scale_at(r);
    let mut out = Vec::new();
    for i in 0..samples {
        let (prev, next) = (vals[(i + samples - 1) % samples], vals[(i + 1) % samples]);
        if vals[i] <= prev && vals[i] < next {
            let step = TAU / samples as f64;
            let t0 = TAU * i as f64 / samples as f64;
            let t = refine_on_circle(h, r, golden_angle(&f, t0 - step, t0 + step));
            let z = Complex64::from_polar(r, t);
            if h.eval(z).norm() <= accept.max(tol.residual.min(1e-13) * h.scale_at(r)) {
                out.push(z);
            }
        }
    }
    out
}

/// First and second angular derivatives of `φ ↦ h(r·e^(iφ))`.
fn angular_derivatives(h: &HarmonicTrinomial, r: f64, t: f64) -> (Complex64, Complex64) {
    let (deg, m) = (h.degree() as f64, h.m() as f64);
    let p = h.a() * Complex64::from_polar(r.powi(h.degree() as i32), deg * t);
    let q = h.b() * Complex64::from_polar(r.powi(h.m() as i32), -m * t);
    let i = Complex64::new(0.0, 1.0);
    (i * (p * deg - q * m), -(p * deg * deg + q * m * m))
}

/// When `|h|` is quadratic along the circle its minimum is only resolved to
/// about `√ε` by comparing values; the angular derivative has a simple zero
/// there and pins it down to rounding level.
fn refine_on_circle(h: &HarmonicTrinomial, r: f64, t0: f64) -> f64 {
    let (d1, d2) = angular_derivatives(h, r, t0);
    if d1.norm() > 1e-6 * d2.norm() {
        return t0;
    }
    let mut t = t0;
    for _ in 0..8 {
        let (d1, d2) = angular_derivatives(h, r, t);
        let denom = d2.norm_sqr();
        if denom == 0.0 {
            break;
        }
        let step = (d2.conj() * d1).re / denom;
        t -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    let f = |x: f64| h.eval(Complex64::from_polar(r, x)).norm();
    if f(t) <= f(t0) * 1.0000001 + 4.0 * f64::EPSILON * h.scale_at(r) {
        t
    } else {
        t0
    }
}

fn golden_angle<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-16 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

pub(crate) fn critical_radius_unchecked(h: &HarmonicTrinomial) -> f64 {
    let (m, deg) = (h.m() as f64, h.degree() as f64);
    (m * h.b().norm() / (deg * h.a().norm())).powf(1.0 / h.n() as f64)
}

/// Grouped moduli of all roots.
pub fn moduli_spectrum(h: &HarmonicTrinomial, tol: &Tolerances) -> Result<Vec<ModulusGroup>> {
    Ok(find_all_roots(h, tol)?.spectrum())
}

/// Roots of `h` on the circle `|z| = v`, found from `p_v` alone.
pub fn roots_on_circle(h: &HarmonicTrinomial, v: f64, tol: &Tolerances) -> Result<Vec<Complex64>> {
    check_radius(v)?;
    let mut out = Vec::new();
    absorb(h, &mut out, candidates_at(h, &[v], tol), tol);
    Ok(out)
}
