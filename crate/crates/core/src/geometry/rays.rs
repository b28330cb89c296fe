use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::angle::{arg, circle_distance, integer_distance, reduce};
use crate::error::{Error, Result};
use crate::trinomial::{check_exponents, check_finite, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: u32) -> Self {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub angle: f64,
    pub k: u32,
    pub parity: Parity,
}

impl Ray {
    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// The `2(n+m)` rays at angles `((n+2m)γ + kπ)/(n+m)` for monic trinomials
/// with constant term `c`.
pub fn ray_set(n: u32, m: u32, c: Complex64) -> Result<Vec<Ray>> {
    check_exponents(n, m)?;
    check_finite(c, "c")?;
    if c.norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("rays need c nonzero"));
    }
    let (deg, gamma) = ((n + m) as f64, arg(c));
    Ok((0..2 * (n + m))
        .map(|k| Ray {
            angle: reduce(((n + 2 * m) as f64 * gamma + k as f64 * PI) / deg),
            k,
            parity: Parity::of(k),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayTest {
    pub ray: Option<Ray>,
    /// `((n+m)β - (n+2m)γ)/π`, an integer exactly when `b` lies on a ray.
    pub test_value: f64,
    pub integer_distance: f64,
}

pub fn on_ray(n: u32, m: u32, c: Complex64, b: Complex64, tol: &Tolerances) -> Result<RayTest> {
    let rays = ray_set(n, m, c)?;
    check_finite(b, "b")?;
    if b.norm() == 0.0 {
        return Err(Error::DegenerateCoefficient("ray membership needs b nonzero"));
    }
    let beta = arg(b);
    let test_value = ((n + m) as f64 * beta - (n + 2 * m) as f64 * arg(c)) / PI;
    let ray = rays
        .iter()
        .map(|r| (circle_distance(beta - r.angle), r))
        .filter(|(d, _)| *d <= tol.angular)
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, r)| *r);
    Ok(RayTest { ray, test_value, integer_distance: integer_distance(test_value) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn four_rays_for_the_quadratic() {
        let rays = ray_set(1, 1, re(1.0)).unwrap();
        let angles: Vec<f64> = rays.iter().map(|r| r.angle).collect();
        for (a, e) in angles.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
            assert!((a - e).abs() < 1e-15);
        }
        let parities: Vec<Parity> = rays.iter().map(|r| r.parity).collect();
        assert_eq!(parities, vec![Parity::Even, Parity::Odd, Parity::Even, Parity::Odd]);
    }

    #[test]
    fn membership_examples() {
        let tol = Tolerances::default();
        let t = on_ray(1, 1, re(1.0), re(-2.0), &tol).unwrap();
        assert_eq!(t.ray.unwrap().k, 2);
        assert_eq!(t.ray.unwrap().parity, Parity::Even);
        assert!((t.test_value - 2.0).abs() < 1e-15);

        let t = on_ray(2, 1, re(1.0), Complex64::from_polar(1.0, 0.3), &tol).unwrap();
        assert!(t.ray.is_none());
        assert!(t.integer_distance > 0.2);
    }

    #[test]
    fn round_trip_and_rotation() {
        let tol = Tolerances::default();
        let c = Complex64::from_polar(0.7, 2.2);
        for r in ray_set(3, 2, c).unwrap() {
            let t = on_ray(3, 2, c, r.direction() * 1.9, &tol).unwrap();
            assert_eq!(t.ray.unwrap().k, r.k);
            assert!(t.integer_distance < 1e-12);
        }
        let delta = 0.4;
        let base = ray_set(3, 2, re(0.7)).unwrap();
        let turned = ray_set(3, 2, Complex64::from_polar(0.7, delta)).unwrap();
        for (x, y) in base.iter().zip(&turned) {
            assert!(circle_distance(y.angle - x.angle - 7.0 * delta / 5.0) < 1e-12);
        }
    }
}
