//! Simultaneous root finding for ordinary complex polynomials (Aberth–Ehrlich).

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

/// Evaluates `Σ coeffs[i]·z^i` and its derivative by Horner's rule.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |coeffs[i]|·|z|^i`, the natural scale of `p(z)`.
pub fn magnitude_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, ln|coeffs[k]|)`; each hull edge from `i` to `j` contributes `j - i`
/// points of modulus `|coeffs[i]/coeffs[j]|^(1/(j-i))`.
fn initial_guesses(coeffs: &[Complex64], offset: f64, stretch: f64) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let points: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let turn = (a.0 as f64 - o.0 as f64) * (p.1 - o.1) - (a.1 - o.1) * (p.0 as f64 - o.0 as f64);
            if turn >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(deg);
    for edge in hull.windows(2) {
        let ((i, li), (j, lj)) = (edge[0], edge[1]);
        let count = j - i;
        let radius = ((li - lj) / count as f64).exp() * stretch;
        let start = std::f64::consts::TAU * out.len() as f64 / deg as f64;
        for k in 0..count {
            let t = std::f64::consts::TAU * k as f64 / count as f64 + start + offset;
            out.push(Complex64::from_polar(radius, t));
        }
    }
    out
}

fn aberth(coeffs: &[Complex64], mut z: Vec<Complex64>) -> (Vec<Complex64>, bool) {
    let n = z.len();
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d != Complex64::new(0.0, 0.0) {
                        sum += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() > 0.0 && denom.is_finite() { ratio / denom } else { ratio };
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-14 {
            return (z, true);
        }
    }
    (z, false)
}

fn residuals_ok(coeffs: &[Complex64], z: &[Complex64]) -> bool {
    z.iter().all(|&r| {
        let (p, _) = eval_with_derivative(coeffs, r);
        p.norm() <= 1e-12 * magnitude_scale(coeffs, r).max(f64::MIN_POSITIVE)
    })
}

/// All roots of `Σ coeffs[i]·z^i`, coefficients in ascending degree.
///
/// Trailing zero coefficients contribute roots at the origin. The leading
/// coefficient must be nonzero.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let Some(&lead) = coeffs.last() else {
        return Err(Error::InvalidInput("empty coefficient sequence".into()));
    };
    if lead == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput("leading coefficient must be nonzero".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("coefficients must be finite".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if reduced.len() == 1 {
        return Ok(out);
    }
    if reduced.len() == 2 {
        out.push(-reduced[0] / reduced[1]);
        return Ok(out);
    }
    let mut last = None;
    for (offset, stretch) in [(0.4, 1.0), (1.1, 1.3)] {
        let (z, converged) = aberth(reduced, initial_guesses(reduced, offset, stretch));
        if converged || residuals_ok(reduced, &z) {
            out.extend(z);
            return Ok(out);
        }
        last = Some(z);
    }
    let z = last.expect("at least one attempt");
    if residuals_ok(reduced, &z) {
        out.extend(z);
        Ok(out)
    } else {
        Err(Error::NoConvergence(MAX_ITER))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut z: Vec<Complex64>) -> Vec<Complex64> {
        z.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        z
    }

    #[test]
    fn quadratic() {
        let r = sorted(poly_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cube_roots_of_minus_one() {
        let r = sorted(poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        let h = 3f64.sqrt() / 2.0;
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(0.5, -h)).norm() < 1e-14);
        assert!((r[2] - c(0.5, h)).norm() < 1e-14);
    }

    #[test]
    fn zero_roots_are_split_off() {
        let r = poly_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-4.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z - c(4.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn rejects_zero_leading() {
        assert!(poly_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
