//! Counting roots below a radius from the pivot `P★` and the angle function `w★`.
//!
//! A root of modulus `u` inside the triangle region exists exactly when
//! `P★ + w★(u)` or `P★ - w★(u)` is an integer, one root per sign. At the
//! profile radii the triangle degenerates and both signs give the same root:
//! at `𝔠` when `P★ ∈ ℤ`, at `𝔟₁`, `𝔟₂` when `P★ + m/2 ∈ ℤ` and at `𝔞` when
//! `P★ + (n+m)/2 ∈ ℤ`. The count below `v` adds up the integers crossed by
//! `P★ ± w★` along each monotone piece of `w★` and these boundary roots.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::angle::{arg, integer_distance};
use crate::error::{Error, Result};
use crate::radial::{raw_angles, side_lengths, triangle_profile_with, BRadii, TriangleProfile};
use crate::trinomial::{check_radius, HarmonicTrinomial, Tolerances};

/// Samples per triangle sub-interval when locating extrema of `w★`.
pub const DEFAULT_W_SAMPLES: usize = 4096;

/// Values closer than this to an integer are treated as integers.
const INTEGER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    CDominant,
    ADominant,
    BDominant,
    Triangle,
    DegenerateBoundary,
}

pub fn regime(h: &HarmonicTrinomial, v: f64, tol: &Tolerances) -> Regime {
    let s = side_lengths(h, v);
    let [sa, sb, sc] = s.slacks();
    let band = tol.boundary_band;
    if sc < -band {
        Regime::CDominant
    } else if sa < -band {
        Regime::ADominant
    } else if sb < -band {
        Regime::BDominant
    } else if sa.min(sb).min(sc) <= band {
        Regime::DegenerateBoundary
    } else {
        Regime::Triangle
    }
}

/// Count given directly by the dominant side, when one dominates.
///
/// The `n + 3m` value for a dominant `|a|v^(n+m)` needs `B` to have two
/// positive roots; without them the total is left to [`count_roots_below`].
pub fn regime_count(h: &HarmonicTrinomial, v: f64, tol: &Tolerances) -> Option<usize> {
    match regime(h, v, tol) {
        Regime::CDominant => Some(0),
        Regime::BDominant => Some(h.m() as usize),
        Regime::ADominant => {
            let profile = triangle_profile_with(h, tol).ok()?;
            matches!(profile.b_radii, BRadii::Pair { .. }).then(|| h.root_bound())
        }
        Regime::Triangle | Regime::DegenerateBoundary => None,
    }
}

/// `P★ = ((n+m)(β-γ-π) + m(α-γ-π)) / 2π` with arguments in `[0, 2π)`.
pub fn pivot(h: &HarmonicTrinomial) -> Result<f64> {
    if h.b().norm() == 0.0 || h.c().norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("pivot needs a, b and c nonzero"));
    }
    let (al, be, ga) = (arg(h.a()), arg(h.b()), arg(h.c()));
    let (n, m) = (h.n() as f64, h.m() as f64);
    // the π terms contribute exactly -(n+2m)/2, kept apart so that equal
    // arguments give an exact integer or half-integer
    Ok(((n + m) * (be - ga) + m * (al - ga)) / TAU - (n + 2.0 * m) / 2.0)
}

pub fn w_star(h: &HarmonicTrinomial, v: f64) -> f64 {
    let s = side_lengths(h, v);
    let (n, m) = (h.n() as f64, h.m() as f64);
    if s.c >= s.a + s.b {
        0.0
    } else if s.a >= s.b + s.c {
        (n + m) / 2.0
    } else if s.b >= s.a + s.c {
        -m / 2.0
    } else {
        let (w1, w2) = raw_angles(&s);
        ((n + m) * w1 - m * w2) / (2.0 * PI)
    }
}

fn golden<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, maximize: bool) -> f64 {
    let g = |u: f64| if maximize { -f(u) } else { f(u) };
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    while hi - lo > 1e-12 * hi.max(1e-300) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    f(0.5 * (lo + hi))
}

/// Values of `w★` at the ends of its monotone pieces on `[lo, hi]`, in order.
/// Interior knots are local extrema.
fn monotone_knots(
    h: &HarmonicTrinomial,
    lo: f64,
    hi: f64,
    w_lo: f64,
    w_hi: f64,
    samples: usize,
) -> Vec<f64> {
    let samples = samples.max(8);
    let step = (hi - lo) / samples as f64;
    let us: Vec<f64> = (0..=samples).map(|i| lo + step * i as f64).collect();
    let mut ws: Vec<f64> = us.iter().map(|&u| w_star(h, u)).collect();
    ws[0] = w_lo;
    ws[samples] = w_hi;
    let mut knots = vec![w_lo];
    for i in 1..samples {
        let d0 = ws[i] - ws[i - 1];
        let d1 = ws[i + 1] - ws[i];
        if d0 > 0.0 && d1 <= 0.0 {
            knots.push(golden(|u| w_star(h, u), us[i - 1], us[i + 1], true).max(ws[i]));
        } else if d0 < 0.0 && d1 >= 0.0 {
            knots.push(golden(|u| w_star(h, u), us[i - 1], us[i + 1], false).min(ws[i]));
        }
    }
    knots.push(w_hi);
    knots
}

fn integers_strictly_between(x: f64, y: f64) -> usize {
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let first = (lo + INTEGER_EPS).floor() as i64 + 1;
    let last = (hi - INTEGER_EPS).ceil() as i64 - 1;
    (last - first + 1).max(0) as usize
}

fn is_integer(x: f64) -> bool {
    integer_distance(x) <= INTEGER_EPS
}

/// One triangle sub-interval of `(0, v)` with the exact `w★` values at the ends.
struct Piece {
    lo: f64,
    hi: f64,
    w_lo: f64,
    w_hi: f64,
}

fn pieces_below(h: &HarmonicTrinomial, p: &TriangleProfile, v: f64) -> Vec<Piece> {
    let (n, m) = (h.n() as f64, h.m() as f64);
    let edge_value = |r: f64| {
        if r == p.c_radius {
            0.0
        } else if r == p.a_radius {
            (n + m) / 2.0
        } else {
            -m / 2.0
        }
    };
    p.triangle_intervals()
        .into_iter()
        .filter(|&(lo, _)| lo < v)
        .map(|(lo, hi)| {
            let (hi, w_hi) = if hi <= v { (hi, edge_value(hi)) } else { (v, w_star(h, v)) };
            Piece { lo, hi, w_lo: edge_value(lo), w_hi }
        })
        .collect()
}

/// Infimum and supremum of `w★` over `(0, v)`.
pub fn w_star_range(h: &HarmonicTrinomial, v: f64) -> Result<(f64, f64)> {
    w_star_range_with(h, v, &Tolerances::default(), DEFAULT_W_SAMPLES)
}

pub fn w_star_range_with(
    h: &HarmonicTrinomial,
    v: f64,
    tol: &Tolerances,
    samples: usize,
) -> Result<(f64, f64)> {
    check_radius(v)?;
    let p = triangle_profile_with(h, tol)?;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for piece in pieces_below(h, &p, v) {
        for k in monotone_knots(h, piece.lo, piece.hi, piece.w_lo, piece.w_hi, samples) {
            lo = lo.min(k);
            hi = hi.max(k);
        }
    }
    if v > p.a_radius {
        hi = hi.max((h.n() + h.m()) as f64 / 2.0);
    }
    Ok((lo, hi))
}

/// Everything [`count_roots_below`] computes on the way to the count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDetail {
    pub v: f64,
    pub regime: Regime,
    pub p_star: f64,
    pub w_star: f64,
    pub w_range: (f64, f64),
    pub count: usize,
}

pub fn count_roots_below(h: &HarmonicTrinomial, v: f64, tol: &Tolerances) -> Result<usize> {
    count_detail(h, v, tol, DEFAULT_W_SAMPLES).map(|d| d.count)
}

pub fn count_detail(
    h: &HarmonicTrinomial,
    v: f64,
    tol: &Tolerances,
    samples: usize,
) -> Result<CountDetail> {
    check_radius(v)?;
    let p_star = pivot(h)?;
    let profile = triangle_profile_with(h, tol)?;
    check_admissible(h, &profile, p_star, v, tol)?;

    let (n, m) = (h.n() as f64, h.m() as f64);
    let mut count = 0usize;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for piece in pieces_below(h, &profile, v) {
        let knots = monotone_knots(h, piece.lo, piece.hi, piece.w_lo, piece.w_hi, samples);
        for pair in knots.windows(2) {
            for sign in [1.0, -1.0] {
                count += integers_strictly_between(p_star + sign * pair[0], p_star + sign * pair[1]);
            }
        }
        for &k in &knots[1..knots.len() - 1] {
            count += is_integer(p_star + k) as usize + is_integer(p_star - k) as usize;
        }
        for k in knots {
            lo = lo.min(k);
            hi = hi.max(k);
        }
    }

    if profile.c_radius < v && is_integer(p_star) {
        count += 1;
    }
    let b_hits = match profile.b_radii {
        BRadii::None => 0,
        BRadii::Double { radius } => (radius < v) as usize,
        BRadii::Pair { inner, outer } => (inner < v) as usize + (outer < v) as usize,
    };
    if is_integer(p_star + m / 2.0) {
        count += b_hits;
    }
    if profile.a_radius < v {
        hi = hi.max((n + m) / 2.0);
        if is_integer(p_star + (n + m) / 2.0) {
            count += 1;
        }
    }

    Ok(CountDetail {
        v,
        regime: regime(h, v, tol),
        p_star,
        w_star: w_star(h, v),
        w_range: (lo, hi),
        count,
    })
}

fn check_admissible(
    h: &HarmonicTrinomial,
    profile: &TriangleProfile,
    p_star: f64,
    v: f64,
    tol: &Tolerances,
) -> Result<()> {
    let band = tol.boundary_band;
    let refuse = |reason| Error::OnBoundary {
        v,
        reason,
        below: v * (1.0 - 2.0 * band),
        above: v * (1.0 + 2.0 * band),
    };
    for r in profile.breakpoints() {
        if (v - r).abs() <= band * r {
            return Err(refuse("profile radius"));
        }
    }
    let inside = profile
        .triangle_intervals()
        .iter()
        .any(|&(lo, hi)| lo < v && v < hi);
    if inside {
        let ws = [
            w_star(h, v * (1.0 - band)),
            w_star(h, v),
            w_star(h, v * (1.0 + band)),
        ];
        let (wlo, whi) = ws
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), &w| (l.min(w), u.max(w)));
        for sign in [1.0, -1.0] {
            let (x, y) = (p_star + sign * wlo, p_star + sign * whi);
            let (x, y) = if x < y { (x, y) } else { (y, x) };
            if (x - INTEGER_EPS).ceil() <= y + INTEGER_EPS {
                return Err(refuse("root modulus"));
            }
        }
    }
    Ok(())
}
