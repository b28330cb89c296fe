//! Static SVG figures: loci, rays, root markers and circles.

use std::fmt::Write;

use htrinomial::geometry::{Parity, Ray};
use num_complex::Complex64;

pub const CANVAS: f64 = 800.0;
const PADDING: f64 = 0.1;

#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub title: String,
    /// Polylines that define the viewport.
    pub curves: Vec<Vec<Complex64>>,
    pub rays: Vec<Ray>,
    pub circles: Vec<Circle>,
    pub markers: Vec<Marker>,
}

#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub radius: f64,
    pub style: CircleStyle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleStyle {
    Plain,
    /// Outline of the singular disk.
    Disk,
}

#[derive(Debug, Clone, Copy)]
pub struct Marker {
    pub at: Complex64,
    pub style: MarkerStyle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerStyle {
    Root,
    Coefficient,
}

/// Maps the plane onto the canvas with equal scales on both axes.
struct View {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl View {
    fn fit(points: impl Iterator<Item = Complex64>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points.filter(|p| p.re.is_finite() && p.im.is_finite()) {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        if x0 > x1 {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12) * (1.0 + 2.0 * PADDING);
        Self { cx: 0.5 * (x0 + x1), cy: 0.5 * (y0 + y1), scale: CANVAS / span }
    }

    fn x(&self, re: f64) -> f64 {
        CANVAS / 2.0 + (re - self.cx) * self.scale
    }

    fn y(&self, im: f64) -> f64 {
        CANVAS / 2.0 - (im - self.cy) * self.scale
    }

    /// Half-diagonal of the canvas in plane units, measured from the origin.
    fn reach(&self) -> f64 {
        let half = CANVAS / (2.0 * self.scale);
        (self.cx.abs() + half).hypot(self.cy.abs() + half)
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Figure {
    /// The viewport comes from the curves alone; with no curve it falls back
    /// to circles and markers.
    pub fn render(&self) -> String {
        let view = if self.curves.iter().any(|c| !c.is_empty()) {
            View::fit(self.curves.iter().flatten().copied())
        } else {
            let circle_extent = self.circles.iter().flat_map(|c| {
                [Complex64::new(c.radius, c.radius), Complex64::new(-c.radius, -c.radius)]
            });
            View::fit(self.markers.iter().map(|m| m.at).chain(circle_extent))
        };
        let mut s = String::new();
        let size = CANVAS as u32;
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(s, r#"<defs><clipPath id="frame"><rect width="{size}" height="{size}"/></clipPath></defs>"#);
        let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
        let _ = writeln!(s, r#"<g clip-path="url(#frame)" fill="none">"#);

        let (ox, oy) = (num(view.x(0.0)), num(view.y(0.0)));
        let _ = writeln!(s, r##"<line x1="0" y1="{oy}" x2="{size}" y2="{oy}" stroke="#bbbbbb" stroke-width="0.5"/>"##);
        let _ = writeln!(s, r##"<line x1="{ox}" y1="0" x2="{ox}" y2="{size}" stroke="#bbbbbb" stroke-width="0.5"/>"##);

        let reach = view.reach();
        for ray in &self.rays {
            let end = ray.direction() * reach;
            let (class, dash) = match ray.parity {
                Parity::Even => ("ray even", "1.5,4"),
                Parity::Odd => ("ray odd", "8,5"),
            };
            let _ = writeln!(
                s,
                r##"<line class="{class}" x1="{ox}" y1="{oy}" x2="{}" y2="{}" stroke="#555555" stroke-width="1" stroke-dasharray="{dash}"/>"##,
                num(view.x(end.re)),
                num(view.y(end.im)),
            );
        }

        for c in &self.circles {
            let (class, color, dash) = match c.style {
                CircleStyle::Plain => ("circle", "#2a7ab0", ""),
                CircleStyle::Disk => ("disk", "#b03a2e", r#" stroke-dasharray="4,2""#),
            };
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{ox}" cy="{oy}" r="{}" stroke="{color}" stroke-width="1"{dash}/>"#,
                num(c.radius * view.scale),
            );
        }

        for curve in self.curves.iter().filter(|c| !c.is_empty()) {
            let points: Vec<String> =
                curve.iter().map(|p| format!("{},{}", num(view.x(p.re)), num(view.y(p.im)))).collect();
            let _ = writeln!(
                s,
                r#"<polyline class="locus" points="{}" stroke="black" stroke-width="1.2"/>"#,
                points.join(" ")
            );
        }

        for m in &self.markers {
            let (x, y) = (num(view.x(m.at.re)), num(view.y(m.at.im)));
            match m.style {
                MarkerStyle::Root => {
                    let _ = writeln!(s, r#"<circle class="root" cx="{x}" cy="{y}" r="3" fill="black"/>"#);
                }
                MarkerStyle::Coefficient => {
                    let _ = writeln!(
                        s,
                        r##"<circle class="coefficient" cx="{x}" cy="{y}" r="4" stroke="#b03a2e" stroke-width="1.5"/>"##
                    );
                }
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}
