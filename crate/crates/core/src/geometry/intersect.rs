//! Self-intersections of closed sampled curves.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::angle::circle_distance;

/// Segment parameters within this distance of `[0, 1]` still count as a hit.
const SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub point: Complex64,
    /// Curve parameters of the two branches, `t1 < t2`.
    pub t1: f64,
    pub t2: f64,
}

fn cross(u: Complex64, w: Complex64) -> f64 {
    u.re * w.im - u.im * w.re
}

/// Intersections between non-adjacent segments of the closed polyline
/// through `points`, as `(i, j, s, t)` with `i < j`, meaning segment `i` at
/// fraction `s` meets segment `j` at fraction `t`.
pub fn polyline_self_intersections(points: &[Complex64]) -> Vec<(usize, usize, f64, f64)> {
    let n = points.len();
    if n < 4 {
        return Vec::new();
    }
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let bbox = |i: usize| {
        let (p, q) = seg(i);
        (p.re.min(q.re), p.re.max(q.re), p.im.min(q.im), p.im.max(q.im))
    };
    let boxes: Vec<_> = (0..n).map(bbox).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (boxes[i], boxes[j]);
            if a.1 < b.0 || b.1 < a.0 || a.3 < b.2 || b.3 < a.2 {
                continue;
            }
            let ((p, p2), (q, q2)) = (seg(i), seg(j));
            let (r, s) = (p2 - p, q2 - q);
            let denom = cross(r, s);
            if denom == 0.0 {
                continue;
            }
            let t = cross(q - p, s) / denom;
            let u = cross(q - p, r) / denom;
            if (-SNAP..=1.0 + SNAP).contains(&t) && (-SNAP..=1.0 + SNAP).contains(&u) {
                out.push((i, j, t.clamp(0.0, 1.0), u.clamp(0.0, 1.0)));
            }
        }
    }
    out
}

/// Self-intersections of the closed curve `f` on `[0, 2π)`, located on a
/// polyline of `samples` points and refined by Newton's method on
/// `f(t1) = f(t2)`.
pub fn curve_self_intersections<F, D>(f: F, df: D, samples: usize) -> Vec<Crossing>
where
    F: Fn(f64) -> Complex64,
    D: Fn(f64) -> Complex64,
{
    let step = TAU / samples as f64;
    let points: Vec<Complex64> = (0..samples).map(|k| f(step * k as f64)).collect();
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut out: Vec<Crossing> = Vec::new();
    for (i, j, s, u) in polyline_self_intersections(&points) {
        let (mut t1, mut t2) = (step * (i as f64 + s), step * (j as f64 + u));
        for _ in 0..30 {
            let g = f(t1) - f(t2);
            let (d1, d2) = (df(t1), -df(t2));
            let det = d1.re * d2.im - d1.im * d2.re;
            if det == 0.0 {
                break;
            }
            let dt1 = (g.re * d2.im - g.im * d2.re) / det;
            let dt2 = (d1.re * g.im - d1.im * g.re) / det;
            t1 -= dt1;
            t2 -= dt2;
            if dt1.abs().max(dt2.abs()) < 1e-15 {
                break;
            }
        }
        let (t1, t2) = (t1.rem_euclid(TAU), t2.rem_euclid(TAU));
        let (t1, t2) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        if circle_distance(t2 - t1) < 2.0 * step || (f(t1) - f(t2)).norm() > 1e-9 * scale {
            continue;
        }
        let point = 0.5 * (f(t1) + f(t2));
        if out.iter().all(|c| (c.point - point).norm() > 1e-9 * scale) {
            out.push(Crossing { point, t1, t2 });
        }
    }
    out.sort_by(|x, y| x.t1.total_cmp(&y.t1).then(x.t2.total_cmp(&y.t2)));
    out
}
