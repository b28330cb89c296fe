//! Plain-text summaries of report sections.

use std::fmt::Write;

use htrinomial::radial::{BRadii, TriangleProfile};
use htrinomial::roots::RootList;
use num_complex::Complex64;

use crate::report::{AnalysisReport, CountEntry, RaysSection, SingularSection};

pub fn complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{:.10} - {:.10}i", z.re, -z.im)
    } else {
        format!("{:.10} + {:.10}i", z.re, z.im)
    }
}

fn header(out: &mut String, r: &AnalysisReport) {
    let i = &r.input;
    let _ = writeln!(
        out,
        "h(z) = ({})·z^{} + ({})·conj(z)^{} + ({})",
        complex(i.a),
        i.n + i.m,
        complex(i.b),
        i.m,
        complex(i.c)
    );
}

fn profile(out: &mut String, p: &TriangleProfile) {
    let _ = writeln!(out, "\ntriangle profile");
    let _ = writeln!(out, "  c radius   {:.12}", p.c_radius);
    match p.b_radii {
        BRadii::None => {
            let _ = writeln!(out, "  b radii    none");
        }
        BRadii::Double { radius } => {
            let _ = writeln!(out, "  b radius   {radius:.12} (double)");
        }
        BRadii::Pair { inner, outer } => {
            let _ = writeln!(out, "  b radii    {inner:.12}, {outer:.12}");
        }
    }
    let _ = writeln!(out, "  a radius   {:.12}", p.a_radius);
    let _ = writeln!(out, "  b peak     {:.12}", p.b_peak);
}

fn counts(out: &mut String, entries: &[CountEntry]) {
    let _ = writeln!(out, "\nroots of modulus below v");
    let _ = writeln!(out, "  {:>14}  {:<18} {:>10} {:>14}  {:>5}", "v", "regime", "P*", "w*", "count");
    for e in entries {
        match e {
            CountEntry::Ok(d) => {
                let regime = serde_json::to_value(d.regime).ok().and_then(|v| v.as_str().map(String::from));
                let _ = writeln!(
                    out,
                    "  {:>14.8}  {:<18} {:>10.6} {:>14.10}  {:>5}",
                    d.v,
                    regime.unwrap_or_default(),
                    d.p_star,
                    d.w_star,
                    d.count
                );
            }
            CountEntry::Err { v, error } => {
                let _ = writeln!(out, "  {v:>14.8}  error: {}", error.message);
            }
        }
    }
}

fn roots(out: &mut String, list: &RootList) {
    let _ = writeln!(out, "\n{} roots", list.len());
    let _ = writeln!(out, "  {:>3}  {:>38}  {:>14}  {:<16} {}", "#", "z", "|z|", "orientation", "class");
    for (i, r) in list.roots.iter().enumerate() {
        let orientation = serde_json::to_value(r.orientation).ok().and_then(|v| v.as_str().map(String::from));
        let class = serde_json::to_value(r.multiplicity_class).ok().and_then(|v| v.as_str().map(String::from));
        let _ = writeln!(
            out,
            "  {:>3}  {:>38}  {:>14.10}  {:<16} {}",
            i + 1,
            complex(r.value),
            r.modulus,
            orientation.unwrap_or_default(),
            class.unwrap_or_default()
        );
    }
    if let Some(s) = list.index_sum {
        let _ = writeln!(out, "  index sum {s}");
    }
    let spectrum: Vec<String> = list
        .spectrum()
        .iter()
        .map(|g| if g.count > 1 { format!("{:.5} x{}", g.modulus, g.count) } else { format!("{:.5}", g.modulus) })
        .collect();
    let _ = writeln!(out, "  moduli: {}", spectrum.join(", "));
}

fn rays(out: &mut String, r: &RaysSection) {
    let _ = writeln!(out, "\nrays for c = {}", complex(r.c));
    for ray in &r.rays {
        let _ = writeln!(out, "  k = {:<3} angle {:.10}", ray.k, ray.angle);
    }
    if let Some(t) = &r.b_test {
        match t.ray {
            Some(ray) => {
                let _ = writeln!(out, "  b lies on ray k = {} ({:?})", ray.k, ray.parity);
            }
            None => {
                let _ = writeln!(out, "  b lies on no ray (distance to integer {:.3e})", t.integer_distance);
            }
        }
    }
}

fn singular(out: &mut String, s: &SingularSection) {
    let r = &s.report;
    let _ = writeln!(out, "\nsingular data");
    let _ = writeln!(out, "  rho               {:.12}", r.rho);
    let _ = writeln!(out, "  cusp radius       {:.12}", r.cusp_radius);
    let _ = writeln!(out, "  double-root angle {:.12}", r.double_root_angle);
    if let Some(cc) = r.critical_circle_radius {
        let _ = writeln!(out, "  critical circle   {cc:.12}");
    }
    for c in &s.cusp_roots {
        let _ = write!(out, "  cusp b = {}", complex(c.b));
        match c.root {
            Some(z) => {
                let _ = writeln!(out, ", multiple root {}", complex(z));
            }
            None => {
                let _ = writeln!(out, ", no multiple root found");
            }
        }
    }
    for d in &r.double_points {
        let _ = writeln!(out, "  double point at v = {}: b = {}", d.v, complex(d.b));
    }
    if let Some(p) = &s.published_rho {
        let verdict = if p.flagged { "differs" } else { "agrees" };
        let _ = writeln!(
            out,
            "  quoted rho {} {verdict} with the formula (relative gap {:.3e})",
            p.published, p.relative_gap
        );
    }
    if let Some(sweep) = &s.rho_sweep {
        let _ = writeln!(
            out,
            "  sweep along ray k = {}: count {} -> {} at |b| = {:.12}",
            sweep.ray.k, sweep.count_below, sweep.count_above, sweep.transition
        );
    }
}

pub fn render(r: &AnalysisReport) -> String {
    let mut out = String::new();
    header(&mut out, r);
    if let Some(p) = &r.triangle_profile {
        profile(&mut out, p);
    }
    if let Some(c) = &r.counts {
        counts(&mut out, c);
    }
    if let Some(list) = &r.roots {
        roots(&mut out, list);
    }
    if let Some(uj) = &r.uj {
        let members: Vec<String> = uj.members().iter().map(|j| j.to_string()).collect();
        let _ = writeln!(out, "\nU_j membership: {{{}}}", members.join(", "));
        let mismatches = uj.mismatches();
        if !mismatches.is_empty() {
            let _ = writeln!(out, "  prediction disagrees at j = {mismatches:?}");
        }
    }
    if let Some(rs) = &r.rays {
        rays(&mut out, rs);
    }
    if let Some(s) = &r.singular {
        singular(&mut out, s);
    }
    if let Some(w) = &r.equivalence {
        let verdict = if w.equivalent { "equivalent" } else { "not equivalent" };
        let _ = writeln!(
            out,
            "\n{verdict} (branch {:?}, ratio defect {:.3e}, congruence defect {:.3e})",
            w.branch, w.ratio_defect, w.congruence_defect
        );
    }
    for n in &r.meta.notes {
        let _ = writeln!(out, "\nnote: {n}");
    }
    for e in &r.meta.errors {
        let _ = writeln!(out, "\nerror ({}): {}", e.kind, e.message);
    }
    out
}
