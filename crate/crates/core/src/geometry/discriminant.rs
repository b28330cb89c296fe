//! Discriminant of the analytic trinomial `z^(n+m) + b·z^m + c`.
//!
//! This is a utility for the analytic companion only. No discriminant is
//! known for the harmonic trinomial itself.

use num_complex::Complex64;

use crate::error::Result;
use crate::trinomial::{check_exponents, check_finite};

/// `(-1)^(N(N-1)/2)·c^(m-1)·(c^n·N^N - (-1)^N·b^N·n^n·m^m)` with `N = n + m`.
pub fn discriminant_analytic(n: u32, m: u32, b: Complex64, c: Complex64) -> Result<Complex64> {
    check_exponents(n, m)?;
    check_finite(b, "b")?;
    check_finite(c, "c")?;
    let big = n + m;
    let sign = |p: u64| if p % 2 == 0 { 1.0 } else { -1.0 };
    let nf = n as f64;
    let mf = m as f64;
    let bigf = big as f64;
    let inner = c.powu(n) * bigf.powi(big as i32)
        - b.powu(big) * sign(big as u64) * nf.powi(n as i32) * mf.powi(m as i32);
    let outer = sign(big as u64 * (big as u64 - 1) / 2);
    Ok(c.powu(m - 1) * inner * outer)
}

/// Analytic trinomial coefficients, ascending in degree.
pub fn analytic_coefficients(n: u32, m: u32, b: Complex64, c: Complex64) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (n + m + 1) as usize];
    coeffs[0] = c;
    coeffs[m as usize] += b;
    coeffs[(n + m) as usize] = Complex64::new(1.0, 0.0);
    coeffs
}
