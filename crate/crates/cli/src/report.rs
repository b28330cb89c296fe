//! The structured analysis report and the sections it is built from.

use htrinomial::bohl::{count_detail, CountDetail, DEFAULT_W_SAMPLES};
use htrinomial::egervary::{is_equivalent, EquivalenceWitness};
use htrinomial::geometry::singular::matches_double_root_angle;
use htrinomial::geometry::{
    check_published_rho, classify_uj, on_ray, ray_set, rho_transition, singular_report, PublishedRho, Ray,
    RayTest, RhoSweep, SingularReport, UjReport,
};
use htrinomial::radial::{triangle_profile_with, TriangleProfile};
use htrinomial::roots::{find_all_roots_with, ModulusGroup, MultiplicityClass, OracleOptions, RootList};
use htrinomial::{Error, HarmonicTrinomial, Tolerances};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{kind, CliError, CliResult};
use crate::spec::Input;

#[derive(Debug, Clone, Serialize)]
pub struct ErrorEntry {
    pub kind: &'static str,
    pub message: String,
    /// Admissible neighbours reported with boundary errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub above: Option<f64>,
}

impl From<&Error> for ErrorEntry {
    fn from(e: &Error) -> Self {
        let (below, above) = match e {
            Error::OnBoundary { below, above, .. } => (Some(*below), Some(*above)),
            _ => (None, None),
        };
        Self { kind: kind(e), message: e.to_string(), below, above }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CountEntry {
    Ok(CountDetail),
    Err {
        v: f64,
        error: ErrorEntry,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RaysSection {
    /// Constant term after dividing by `a`; the rays depend on it alone.
    pub c: Complex64,
    pub rays: Vec<Ray>,
    /// Position of `b/a` relative to the rays.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_test: Option<RayTest>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspRoot {
    pub b: Complex64,
    pub root: Option<Complex64>,
    pub jacobian: Option<f64>,
    /// Whether the multiple root's argument equals the stated double-root angle.
    pub matches_double_root_angle: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularSection {
    #[serde(flatten)]
    pub report: SingularReport,
    pub cusp_roots: Vec<CuspRoot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_rho: Option<PublishedRho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_sweep: Option<RhoSweep>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub tolerances: Tolerances,
    pub samples: usize,
    pub notes: Vec<String>,
    pub errors: Vec<ErrorEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: Input,
    pub triangle_profile: Option<TriangleProfile>,
    pub counts: Option<Vec<CountEntry>>,
    pub roots: Option<RootList>,
    pub spectrum: Option<Vec<ModulusGroup>>,
    pub uj: Option<UjReport>,
    pub rays: Option<RaysSection>,
    pub singular: Option<SingularSection>,
    pub equivalence: Option<EquivalenceWitness>,
    pub meta: Meta,
}

/// Builds a report section by section, remembering the first failure.
pub struct Analysis {
    pub h: HarmonicTrinomial,
    pub tol: Tolerances,
    pub opts: OracleOptions,
    pub report: AnalysisReport,
    failure: Option<CliError>,
}

impl Analysis {
    pub fn new(input: Input, command: &'static str) -> CliResult<Self> {
        input.validate()?;
        let h = input.spec().trinomial()?;
        let tol = input.tolerances;
        let opts = OracleOptions { samples: input.samples, ..OracleOptions::default() };
        let meta = Meta {
            tool: "htrinomial",
            version: env!("CARGO_PKG_VERSION"),
            command,
            tolerances: tol,
            samples: input.samples,
            notes: Vec::new(),
            errors: Vec::new(),
        };
        Ok(Self {
            h,
            tol,
            opts,
            report: AnalysisReport {
                input,
                triangle_profile: None,
                counts: None,
                roots: None,
                spectrum: None,
                uj: None,
                rays: None,
                singular: None,
                equivalence: None,
                meta,
            },
            failure: None,
        })
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.report.meta.notes.push(text.into());
    }

    /// Records a failed section. Numerical failures take precedence.
    fn fail(&mut self, section: &str, e: Error) {
        let mut entry = ErrorEntry::from(&e);
        entry.message = format!("{section}: {}", entry.message);
        self.report.meta.errors.push(entry);
        let err = CliError::from(e);
        let replace = match (&self.failure, &err) {
            (None, _) => true,
            (Some(CliError::Validation(_)), CliError::Numerical(_)) => true,
            _ => false,
        };
        if replace {
            self.failure = Some(err);
        }
    }

    fn attempt<T>(&mut self, section: &str, f: impl FnOnce(&Self) -> htrinomial::Result<T>) -> Option<T> {
        match f(self) {
            Ok(x) => Some(x),
            Err(e) => {
                self.fail(section, e);
                None
            }
        }
    }

    /// `b ≠ 0` and `c ≠ 0`; sections that need both are skipped otherwise.
    fn generic(&self) -> bool {
        self.h.b().norm() > 0.0 && self.h.c().norm() > 0.0
    }

    pub fn profile(&mut self) {
        if !self.generic() {
            self.note("triangle profile skipped: it needs b and c nonzero");
            return;
        }
        self.report.triangle_profile = self.attempt("triangle_profile", |s| triangle_profile_with(&s.h, &s.tol));
    }

    /// Counts at every requested radius. The section fails only when no
    /// radius could be counted.
    pub fn counts(&mut self) {
        let vs = self.report.input.v.clone();
        if vs.is_empty() {
            self.note("counts skipped: no radius given");
            return;
        }
        let mut entries = Vec::new();
        let mut first_error = None;
        for v in vs {
            match count_detail(&self.h, v, &self.tol, DEFAULT_W_SAMPLES) {
                Ok(d) => entries.push(CountEntry::Ok(d)),
                Err(e) => {
                    entries.push(CountEntry::Err { v, error: ErrorEntry::from(&e) });
                    first_error.get_or_insert(e);
                }
            }
        }
        let any_ok = entries.iter().any(|e| matches!(e, CountEntry::Ok(_)));
        if let (false, Some(e)) = (any_ok, first_error) {
            self.fail("counts", e);
        }
        self.report.counts = Some(entries);
    }

    pub fn roots(&mut self) {
        if let Some(list) = self.attempt("roots", |s| find_all_roots_with(&s.h, &s.tol, &s.opts)) {
            self.report.spectrum = Some(list.spectrum());
            self.report.roots = Some(list);
        }
    }

    pub fn uj(&mut self) {
        if self.h.c().norm() == 0.0 {
            self.note("U_j classification skipped: it needs c nonzero");
            return;
        }
        let Some(roots) = self.report.roots.clone() else {
            return;
        };
        self.report.uj = self.attempt("uj", |s| classify_uj(&s.h, &roots, &s.tol));
    }

    pub fn rays(&mut self) {
        let g = self.h.normalized();
        if g.c().norm() == 0.0 {
            self.note("rays skipped: they need c nonzero");
            return;
        }
        self.report.rays = self.attempt("rays", |s| {
            let b_test = if g.b().norm() > 0.0 { Some(on_ray(g.n(), g.m(), g.c(), g.b(), &s.tol)?) } else { None };
            Ok(RaysSection { c: g.c(), rays: ray_set(g.n(), g.m(), g.c())?, b_test })
        });
    }

    /// Singular data for the family through `h`, double points at the
    /// requested radii and, optionally, the published-ρ check and the
    /// empirical ray sweep.
    pub fn singular(&mut self, expect_rho: Option<f64>, sweep: bool) {
        let g = self.h.normalized();
        if g.c().norm() == 0.0 {
            self.note("singular report skipped: it needs c nonzero");
            return;
        }
        let radii = self.report.input.v.clone();
        let samples = self.report.input.samples;
        let b = (g.b().norm() > 0.0).then_some(g.b());
        let section = self.attempt("singular", |s| {
            let (n, m, c) = (g.n(), g.m(), g.c());
            let report = singular_report(n, m, c, &radii, b, samples)?;
            let mut cusp_roots = Vec::new();
            for &cb in &report.cusps {
                let hc = HarmonicTrinomial::monic(cb, c, n, m)?;
                let roots = find_all_roots_with(&hc, &s.tol, &s.opts)?;
                let multiple = roots.roots.iter().find(|r| r.multiplicity_class == MultiplicityClass::Multiple);
                let matches = match multiple {
                    Some(r) => Some(matches_double_root_angle(n, m, c, r.value.arg(), &s.tol)?),
                    None => None,
                };
                cusp_roots.push(CuspRoot {
                    b: cb,
                    root: multiple.map(|r| r.value),
                    jacobian: multiple.map(|r| r.jacobian),
                    matches_double_root_angle: matches,
                });
            }
            let published_rho = expect_rho.map(|p| check_published_rho(n, m, c.norm(), p)).transpose()?;
            let rho_sweep = if sweep { rho_transition(n, m, c, &s.tol, &s.opts)? } else { None };
            Ok(SingularSection { report, cusp_roots, published_rho, rho_sweep })
        });
        if let Some(p) = section.as_ref().and_then(|s| s.published_rho) {
            if p.flagged {
                self.note(format!(
                    "published rho {} differs from the formula value {:.6} (relative gap {:.2e})",
                    p.published, p.formula, p.relative_gap
                ));
            }
        }
        if let Some(s) = &section {
            if s.cusp_roots.iter().any(|c| c.matches_double_root_angle == Some(false)) {
                self.note("a cusp's multiple root does not lie at the angle arg(c)/(n+m)");
            }
        }
        self.report.singular = section;
    }

    pub fn equivalence(&mut self) {
        let Some(other) = self.report.input.with else {
            self.note("equivalence skipped: no second trinomial given");
            return;
        };
        let h2 = match other.trinomial() {
            Ok(h) => h,
            Err(_) => return,
        };
        self.report.equivalence = self.attempt("equivalence", |s| is_equivalent(&s.h, &h2, &s.tol));
    }

    pub fn finish(self) -> (AnalysisReport, Option<CliError>) {
        (self.report, self.failure)
    }
}
