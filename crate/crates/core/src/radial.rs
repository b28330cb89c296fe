//! Side lengths `|a|v^(n+m)`, `|b|v^m`, `|c|` and the radii where they stop
//! forming a triangle.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::trinomial::{check_radius, HarmonicTrinomial, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sides {
    pub fn perimeter(&self) -> f64 {
        self.a + self.b + self.c
    }

    /// Relative slacks `(b + c - a, a + c - b, a + b - c) / perimeter`.
    pub fn slacks(&self) -> [f64; 3] {
        let p = self.perimeter();
        if p == 0.0 {
            return [0.0; 3];
        }
        [
            (self.b + self.c - self.a) / p,
            (self.a + self.c - self.b) / p,
            (self.a + self.b - self.c) / p,
        ]
    }
}

pub fn side_lengths(h: &HarmonicTrinomial, v: f64) -> Sides {
    Sides {
        a: h.a().norm() * v.powi(h.degree() as i32),
        b: h.b().norm() * v.powi(h.m() as i32),
        c: h.c().norm(),
    }
}

/// Values of the radial polynomials `(A, B, C)` at `v`.
pub fn radial_polynomials(h: &HarmonicTrinomial, v: f64) -> (f64, f64, f64) {
    let s = side_lengths(h, v);
    (s.a - s.b - s.c, -s.a + s.b - s.c, -s.a - s.b + s.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BRadii {
    None,
    Double { radius: f64 },
    Pair { inner: f64, outer: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleProfile {
    pub c_radius: f64,
    pub a_radius: f64,
    pub b_radii: BRadii,
    /// Maximiser of `B`, equal to the critical-circle radius.
    pub b_peak: f64,
}

impl TriangleProfile {
    /// Sub-intervals of `(𝔠, 𝔞)` on which the sides form a proper triangle.
    pub fn triangle_intervals(&self) -> Vec<(f64, f64)> {
        match self.b_radii {
            BRadii::None => vec![(self.c_radius, self.a_radius)],
            BRadii::Double { radius } => {
                vec![(self.c_radius, radius), (radius, self.a_radius)]
            }
            BRadii::Pair { inner, outer } => {
                vec![(self.c_radius, inner), (outer, self.a_radius)]
            }
        }
    }

    /// All profile radii in increasing order.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![self.c_radius];
        match self.b_radii {
            BRadii::None => {}
            BRadii::Double { radius } => out.push(radius),
            BRadii::Pair { inner, outer } => {
                out.push(inner);
                out.push(outer);
            }
        }
        out.push(self.a_radius);
        out
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn triangle_profile(h: &HarmonicTrinomial) -> Result<TriangleProfile> {
    triangle_profile_with(h, &Tolerances::default())
}

pub fn triangle_profile_with(h: &HarmonicTrinomial, tol: &Tolerances) -> Result<TriangleProfile> {
    h.require_bc()?;
    let (na, nb, nc) = (h.a().norm(), h.b().norm(), h.c().norm());
    let (n, m, deg) = (h.n() as f64, h.m() as f64, h.degree() as f64);
    let a_poly = |v: f64| radial_polynomials(h, v).0;
    let b_poly = |v: f64| radial_polynomials(h, v).1;
    let c_poly = |v: f64| radial_polynomials(h, v).2;

    // C(0) = |c| > 0 and C < 0 once |a|v^(n+m) reaches |c|
    let c_hi = (nc / na).powf(1.0 / deg);
    let c_radius = bisect(c_poly, 0.0, c_hi);

    let mut a_hi = c_hi.max(1.0);
    while a_poly(a_hi) <= 0.0 {
        a_hi *= 2.0;
    }
    let a_radius = bisect(a_poly, c_radius, a_hi);

    let b_peak = (m * nb / (deg * na)).powf(1.0 / n);
    let peak = b_poly(b_peak);
    let s_peak = side_lengths(h, b_peak).a;
    let b_radii = if peak.abs() <= tol.residual * s_peak.max(1.0) {
        BRadii::Double { radius: b_peak }
    } else if peak < 0.0 {
        BRadii::None
    } else {
        BRadii::Pair {
            inner: bisect(b_poly, c_radius, b_peak),
            outer: bisect(b_poly, b_peak, a_radius),
        }
    };
    Ok(TriangleProfile { c_radius, a_radius, b_radii, b_peak })
}

/// Angles opposite the sides `|a|v^(n+m)` and `|b|v^m`, computed from the
/// sides without checking the triangle inequalities. Degenerate triangles
/// give their limiting angles.
pub(crate) fn raw_angles(s: &Sides) -> (f64, f64) {
    let (x, y, z) = (s.a, s.b, s.c);
    let prod = (x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z);
    let four_area = prod.max(0.0).sqrt();
    let w1 = four_area.atan2(y * y + z * z - x * x);
    let w2 = four_area.atan2(x * x + z * z - y * y);
    (w1, w2)
}

pub fn triangle_angles(h: &HarmonicTrinomial, v: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    check_radius(v)?;
    let s = side_lengths(h, v);
    let worst = s.slacks().into_iter().fold(f64::INFINITY, f64::min);
    if worst < -tol.boundary_band {
        return Err(Error::NotATriangle(s.a, s.b, s.c));
    }
    if worst <= tol.boundary_band {
        return Err(Error::DegenerateTriangle(s.a, s.b, s.c));
    }
    let (w1, w2) = raw_angles(&s);
    debug_assert!(w1 + w2 < PI);
    Ok((w1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tri(b: f64, c: f64, n: u32, m: u32) -> HarmonicTrinomial {
        HarmonicTrinomial::monic(Complex64::new(b, 0.0), Complex64::new(c, 0.0), n, m).unwrap()
    }

    #[test]
    fn side_lengths_examples() {
        let h = tri(1.0, 2f64.sqrt(), 2, 1);
        let s = side_lengths(&h, 1.0);
        assert_eq!((s.a, s.b), (1.0, 1.0));
        assert!((s.c - 2f64.sqrt()).abs() < 1e-15);

        let h = tri(-5.0, 2.0, 1, 3);
        let s = side_lengths(&h, 2.0);
        assert_eq!((s.a, s.b, s.c), (16.0, 40.0, 2.0));
    }

    #[test]
    fn radial_identity_and_signs() {
        let h = tri(-1.5, 0.5, 1, 2);
        assert!(radial_polynomials(&h, 1.0).1.abs() < 1e-15);
        let h = tri(-5.0, 2.0, 1, 3);
        let (a, _, c) = radial_polynomials(&h, 0.5);
        assert!(c > 0.0);
        assert!((a + c + 2.0 * 5.0 * 0.125).abs() < 1e-14);
    }

    #[test]
    fn profile_with_pair() {
        let h = tri(-6.0, 1.0, 3, 2);
        let p = triangle_profile(&h).unwrap();
        match p.b_radii {
            BRadii::Pair { inner, outer } => {
                assert!((inner - 0.410624).abs() < 1e-6);
                assert!((outer - 1.784863).abs() < 1e-6);
            }
            other => panic!("expected pair, got {other:?}"),
        }
        assert!(p.c_radius < 0.410624 && p.a_radius > 1.784863);
    }

    #[test]
    fn profile_with_double_radius() {
        let h = tri(-1.5, 0.5, 1, 2);
        let p = triangle_profile(&h).unwrap();
        match p.b_radii {
            BRadii::Double { radius } => assert!((radius - 1.0).abs() < 1e-12),
            other => panic!("expected double, got {other:?}"),
        }
    }

    #[test]
    fn profile_without_b_radii() {
        let h = tri(1.0, 2f64.sqrt(), 2, 1);
        let p = triangle_profile(&h).unwrap();
        assert_eq!(p.b_radii, BRadii::None);
        assert!(p.c_radius < 1.0 && 1.0 < p.a_radius);
        let (a, _, c) = radial_polynomials(&h, p.a_radius);
        assert!(a.abs() < 1e-12);
        assert!(radial_polynomials(&h, p.c_radius).2.abs() < 1e-12 && c < 0.0);
    }

    #[test]
    fn profile_requires_b_and_c() {
        let h = tri(0.0, 1.0, 2, 1);
        assert!(matches!(triangle_profile(&h), Err(Error::DegenerateCoefficient(_))));
    }

    #[test]
    fn angles_of_right_isosceles() {
        let h = tri(1.0, 2f64.sqrt(), 2, 1);
        let (w1, w2) = triangle_angles(&h, 1.0, &Tolerances::default()).unwrap();
        assert!((w1 - PI / 4.0).abs() < 1e-15);
        assert!((w2 - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn angles_of_equilateral_and_near_degenerate() {
        let (w1, w2) = raw_angles(&Sides { a: 1.0, b: 1.0, c: 1.0 });
        assert!((w1 - PI / 3.0).abs() < 1e-15 && (w2 - PI / 3.0).abs() < 1e-15);
        let (w1, _) = raw_angles(&Sides { a: 2.0 - 1e-7, b: 1.0, c: 1.0 });
        assert!(PI - w1 < 1e-3);
    }

    #[test]
    fn angles_reject_non_triangles() {
        let h = tri(-5.0, 2.0, 1, 3);
        let tol = Tolerances::default();
        assert!(matches!(triangle_angles(&h, 2.0, &tol), Err(Error::NotATriangle(..))));
        let h = tri(1.0, 2.0, 2, 1);
        assert!(matches!(triangle_angles(&h, 1.0, &tol), Err(Error::DegenerateTriangle(..))));
    }
}
