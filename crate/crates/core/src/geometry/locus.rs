//! Loci of the free coefficient for which `z^(n+m) + b·z̄^m + c` has a root
//! of prescribed modulus `v`. Both curves are parametrised by the argument
//! `θ` of that root.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::angle::arg;
use crate::error::{Error, Result};
use crate::trinomial::{check_exponents, check_finite, check_radius};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    BLocus,
    CLocus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrochoidParams {
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "r")]
    pub small_r: f64,
    pub d: f64,
    pub phase: f64,
    pub kind: LocusKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusSample {
    pub theta: f64,
    pub value: Complex64,
}

fn check_fixed(n: u32, m: u32, fixed: Complex64, v: f64, name: &'static str) -> Result<()> {
    check_exponents(n, m)?;
    check_finite(fixed, name)?;
    check_radius(v)?;
    if fixed.norm() == 0.0 {
        return Err(Error::DegenerateCoefficient(if name == "c" {
            "the fixed coefficient c must be nonzero"
        } else {
            "the fixed coefficient b must be nonzero"
        }));
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 16 {
        return Err(Error::InvalidInput(format!("at least 16 samples required, got {samples}")));
    }
    Ok(())
}

pub fn b_locus_params(n: u32, m: u32, c: Complex64, v: f64) -> Result<TrochoidParams> {
    check_fixed(n, m, c, v, "c")?;
    let base = v.powi(n as i32) / (2.0 * m as f64);
    Ok(TrochoidParams {
        big_r: base * (n + 2 * m) as f64,
        small_r: base * n as f64,
        d: c.norm() / v.powi(m as i32),
        phase: arg(c),
        kind: LocusKind::BLocus,
    })
}

/// `b(θ) = -[v^n·e^(i(n+2m)θ) + (|c|/v^m)·e^(i(γ+mθ))]`.
pub fn b_locus_point(n: u32, m: u32, c: Complex64, v: f64, theta: f64) -> Complex64 {
    let (n_, m_) = (n as f64, m as f64);
    -(Complex64::from_polar(v.powi(n as i32), (n_ + 2.0 * m_) * theta)
        + Complex64::from_polar(c.norm() / v.powi(m as i32), arg(c) + m_ * theta))
}

/// `db/dθ`.
pub fn b_locus_tangent(n: u32, m: u32, c: Complex64, v: f64, theta: f64) -> Complex64 {
    let (n_, m_) = (n as f64, m as f64);
    let i = Complex64::new(0.0, 1.0);
    -(i * (n_ + 2.0 * m_) * Complex64::from_polar(v.powi(n as i32), (n_ + 2.0 * m_) * theta)
        + i * m_ * Complex64::from_polar(c.norm() / v.powi(m as i32), arg(c) + m_ * theta))
}

pub fn b_locus_curve(n: u32, m: u32, c: Complex64, v: f64, samples: usize) -> Result<Vec<LocusSample>> {
    check_fixed(n, m, c, v, "c")?;
    check_samples(samples)?;
    Ok(thetas(samples)
        .map(|theta| LocusSample { theta, value: b_locus_point(n, m, c, v, theta) })
        .collect())
}

pub fn c_locus_params(n: u32, m: u32, b: Complex64, v: f64) -> Result<TrochoidParams> {
    check_fixed(n, m, b, v, "b")?;
    if n <= m {
        return Err(Error::InvalidGeometry(format!(
            "c-locus parameters need n > m (got n = {n}, m = {m}); R > r fails"
        )));
    }
    let base = v.powi(m as i32) * b.norm() / (n + m) as f64;
    Ok(TrochoidParams {
        big_r: base * n as f64,
        small_r: base * m as f64,
        d: v.powi((n + m) as i32),
        phase: arg(b),
        kind: LocusKind::CLocus,
    })
}

/// `c(θ) = -[v^(n+m)·e^(i(n+m)θ) + |b|·v^m·e^(i(β-mθ))]`.
pub fn c_locus_point(n: u32, m: u32, b: Complex64, v: f64, theta: f64) -> Complex64 {
    let deg = (n + m) as f64;
    -(Complex64::from_polar(v.powi((n + m) as i32), deg * theta)
        + Complex64::from_polar(b.norm() * v.powi(m as i32), arg(b) - m as f64 * theta))
}

pub fn c_locus_tangent(n: u32, m: u32, b: Complex64, v: f64, theta: f64) -> Complex64 {
    let (deg, m_) = ((n + m) as f64, m as f64);
    let i = Complex64::new(0.0, 1.0);
    -(i * deg * Complex64::from_polar(v.powi((n + m) as i32), deg * theta)
        - i * m_ * Complex64::from_polar(b.norm() * v.powi(m as i32), arg(b) - m_ * theta))
}

pub fn c_locus_curve(n: u32, m: u32, b: Complex64, v: f64, samples: usize) -> Result<Vec<LocusSample>> {
    check_fixed(n, m, b, v, "b")?;
    check_samples(samples)?;
    Ok(thetas(samples)
        .map(|theta| LocusSample { theta, value: c_locus_point(n, m, b, v, theta) })
        .collect())
}

fn thetas(samples: usize) -> impl Iterator<Item = f64> {
    (0..samples).map(move |j| TAU * j as f64 / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::HarmonicTrinomial;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(p: TrochoidParams, expect: (f64, f64, f64)) -> bool {
        (p.big_r - expect.0).abs() < 1e-15 && (p.small_r - expect.1).abs() < 1e-15 && (p.d - expect.2).abs() < 1e-15
    }

    #[test]
    fn b_locus_parameters() {
        assert!(close(b_locus_params(5, 3, re(0.5), 1.0).unwrap(), (11.0 / 6.0, 5.0 / 6.0, 0.5)));
        assert!(close(b_locus_params(5, 2, re(2.0), 1.0).unwrap(), (9.0 / 4.0, 5.0 / 4.0, 2.0)));
        assert!(close(b_locus_params(4, 1, re(1.0), 1.0).unwrap(), (3.0, 2.0, 1.0)));
        let p = b_locus_params(3, 2, re(1.3), 1.7).unwrap();
        assert!((p.big_r - p.small_r - 1.7f64.powi(3)).abs() < 1e-12);
        assert!(((p.big_r - p.small_r) / (2.0 * p.big_r) - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn c_locus_parameters() {
        assert!(close(c_locus_params(5, 3, re(1.5), 1.0).unwrap(), (15.0 / 16.0, 9.0 / 16.0, 1.0)));
        assert!(close(c_locus_params(5, 2, re(-3.5), 1.0).unwrap(), (2.5, 1.0, 1.0)));
        assert!(close(c_locus_params(4, 1, re(1.0), 1.0).unwrap(), (0.8, 0.2, 1.0)));
        assert!(matches!(c_locus_params(1, 2, re(1.0), 1.0), Err(Error::InvalidGeometry(_))));
        assert!(matches!(c_locus_params(1, 1, re(1.0), 1.0), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn b_locus_point_examples() {
        let b = b_locus_point(2, 1, re(3.0), 1.5, 0.0);
        assert!((b - re(-(1.5f64.powi(2) + 3.0 / 1.5))).norm() < 1e-15);
        let theta = arg(Complex64::new(-1.0, 2.0));
        let b = b_locus_point(1, 1, re(1.0), 5f64.sqrt(), theta);
        assert!((b - re(-2.0)).norm() < 1e-14);
    }

    #[test]
    fn loci_give_roots_of_modulus_v() {
        let (n, m, v) = (3, 2, 0.8);
        let c = Complex64::new(0.3, -0.7);
        for s in b_locus_curve(n, m, c, v, 32).unwrap() {
            let h = HarmonicTrinomial::monic(s.value, c, n, m).unwrap();
            assert!(h.eval(Complex64::from_polar(v, s.theta)).norm() < 1e-13);
        }
        let b = Complex64::new(-1.1, 0.4);
        for s in c_locus_curve(n, m, b, v, 32).unwrap() {
            let h = HarmonicTrinomial::monic(b, s.value, n, m).unwrap();
            assert!(h.eval(Complex64::from_polar(v, s.theta)).norm() < 1e-13);
        }
    }

    #[test]
    fn tangents_match_finite_differences() {
        let c = Complex64::new(0.3, -0.7);
        let e = 1e-6;
        let fd = (b_locus_point(3, 2, c, 0.8, 1.0 + e) - b_locus_point(3, 2, c, 0.8, 1.0 - e)) / (2.0 * e);
        assert!((fd - b_locus_tangent(3, 2, c, 0.8, 1.0)).norm() < 1e-7);
        let fd = (c_locus_point(3, 2, c, 0.8, 1.0 + e) - c_locus_point(3, 2, c, 0.8, 1.0 - e)) / (2.0 * e);
        assert!((fd - c_locus_tangent(3, 2, c, 0.8, 1.0)).norm() < 1e-7);
    }

    #[test]
    fn c_locus_real_start_and_shrinking() {
        let c = c_locus_point(2, 1, re(2.0), 1.5, 0.0);
        assert!((c - re(-(1.5f64.powi(3) + 2.0 * 1.5))).norm() < 1e-14);
        let tiny = c_locus_curve(2, 1, re(2.0), 1e-6, 16).unwrap();
        assert!(tiny.iter().all(|s| s.value.norm() < 1e-5));
        assert!(b_locus_curve(2, 1, re(1.0), 1.0, 8).is_err());
    }
}
