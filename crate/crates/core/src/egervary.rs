//! Egerváry equivalence and the coefficient transforms that preserve root moduli.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{arg, circle_distance};
use crate::error::{Error, Result};
use crate::trinomial::{HarmonicTrinomial, Tolerances};

/// Relative tolerance on the modulus ratios `|a₁|/|a₂| = |b₁|/|b₂| = |c₁|/|c₂|`.
pub const RATIO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `h₁(z) = k·h₂(e^(iδ)z)`.
    Direct,
    /// `h₁(z) = k·h̄₂(e^(iδ)z)` with conjugated coefficients.
    Conjugate,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub equivalent: bool,
    pub branch: Branch,
    /// `|a₁|/|a₂|`.
    pub ratio: f64,
    /// Largest relative disagreement between the three modulus ratios.
    pub ratio_defect: f64,
    /// Distance to `2πℤ` of the angular combination on the reported branch,
    /// or the smaller of the two when neither passes.
    pub congruence_defect: f64,
    pub direct_defect: f64,
    pub conjugate_defect: f64,
}

fn require_nonzero(h: &HarmonicTrinomial) -> Result<()> {
    if h.b().norm() == 0.0 || h.c().norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("equivalence needs all coefficients nonzero"));
    }
    Ok(())
}

pub fn is_equivalent(h1: &HarmonicTrinomial, h2: &HarmonicTrinomial, tol: &Tolerances) -> Result<EquivalenceWitness> {
    if (h1.n(), h1.m()) != (h2.n(), h2.m()) {
        return Err(Error::ExponentMismatch(h1.n(), h1.m(), h2.n(), h2.m()));
    }
    require_nonzero(h1)?;
    require_nonzero(h2)?;

    let ra = h1.a().norm() / h2.a().norm();
    let rb = h1.b().norm() / h2.b().norm();
    let rc = h1.c().norm() / h2.c().norm();
    let ratio_defect = ((rb - ra).abs() / ra).max((rc - ra).abs() / ra);
    let ratios_match = ratio_defect <= RATIO_TOLERANCE;

    let (n, m) = (h1.n() as f64, h1.m() as f64);
    let (a1, b1, c1) = (arg(h1.a()), arg(h1.b()), arg(h1.c()));
    let (a2, b2, c2) = (arg(h2.a()), arg(h2.b()), arg(h2.c()));
    let combo = |s: f64| m * (a1 + s * a2) + (n + m) * (b1 + s * b2) - (n + 2.0 * m) * (c1 + s * c2);
    let direct_defect = circle_distance(combo(-1.0));
    let conjugate_defect = circle_distance(combo(1.0));

    let (branch, congruence_defect) = if direct_defect <= conjugate_defect {
        (Branch::Direct, direct_defect)
    } else {
        (Branch::Conjugate, conjugate_defect)
    };
    let equivalent = ratios_match && congruence_defect <= tol.angular;
    Ok(EquivalenceWitness {
        equivalent,
        branch: if equivalent { branch } else { Branch::None },
        ratio: ra,
        ratio_defect,
        congruence_defect,
        direct_defect,
        conjugate_defect,
    })
}

/// `k·h(e^(iδ)z)`, or `k·h̄(e^(iδ)z)` with conjugated coefficients when
/// `conjugate` is set. The result is equivalent to `h` by definition.
pub fn transform(h: &HarmonicTrinomial, k: Complex64, delta: f64, conjugate: bool) -> Result<HarmonicTrinomial> {
    let (a, b, c) = if conjugate {
        (h.a().conj(), h.b().conj(), h.c().conj())
    } else {
        (h.a(), h.b(), h.c())
    };
    let rot = |power: f64| Complex64::from_polar(1.0, power * delta);
    HarmonicTrinomial::new(
        k * a * rot(h.degree() as f64),
        k * b * rot(-(h.m() as f64)),
        k * c,
        h.n(),
        h.m(),
    )
}

/// Rescales to `ζ^(n+m) + (b/|c|^(n/(n+m)))·ζ̄^m + c/|c|` after dividing by `a`.
///
/// Returns the new trinomial and `|c|^(1/(n+m))`; `z` is a root of `h` iff
/// `z / scale` is a root of the rescaled trinomial.
pub fn rescale_to_unit_c(h: &HarmonicTrinomial) -> Result<(HarmonicTrinomial, f64)> {
    let g = h.normalized();
    let cm = g.c().norm();
    if cm == 0.0 {
        return Err(Error::DegenerateCoefficient("rescaling needs c nonzero"));
    }
    let deg = g.degree() as f64;
    let scale = cm.powf(1.0 / deg);
    let rescaled = HarmonicTrinomial::monic(g.b() / cm.powf(g.n() as f64 / deg), g.c() / cm, g.n(), g.m())?;
    Ok((rescaled, scale))
}

/// `h(-z)`, with coefficients `((-1)^(n+m)·a, (-1)^m·b, c)`.
pub fn negate_variable(h: &HarmonicTrinomial) -> HarmonicTrinomial {
    let sign = |p: u32| if p % 2 == 0 { 1.0 } else { -1.0 };
    HarmonicTrinomial::new(h.a() * sign(h.degree()), h.b() * sign(h.m()), h.c(), h.n(), h.m())
        .expect("negation keeps a valid trinomial")
}
