//! Angle conventions shared by every module.
//!
//! Arguments of complex numbers are always taken in `[0, 2π)`.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Argument of `z` in `[0, 2π)`. The argument of zero is reported as 0.
pub fn arg(z: Complex64) -> f64 {
    let t = z.im.atan2(z.re);
    reduce(t)
}

/// Reduces an angle to `[0, 2π)`.
pub fn reduce(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_pi(theta: f64) -> f64 {
    let r = reduce(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance from `theta` to the nearest multiple of 2π.
pub fn circle_distance(theta: f64) -> f64 {
    wrap_pi(theta).abs()
}

/// Distance from `x` to the nearest integer.
pub fn integer_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}
