//! `htrinomial`: command-line analysis of harmonic trinomials.

mod error;
mod output;
mod report;
mod spec;
mod svg;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use htrinomial::geometry::{
    b_locus_curve, b_locus_params, c_locus_curve, c_locus_params, ray_set, singular_disk_radius, LocusKind,
    LocusSample, TrochoidParams,
};
use htrinomial::roots::find_all_roots_with;
use htrinomial::{Error, HarmonicTrinomial};
use num_complex::Complex64;
use serde::Serialize;

use error::{CliError, CliResult};
use report::Analysis;
use spec::{load_input, load_spec, load_tolerances, Input, DEFAULT_SAMPLES};

#[derive(Parser)]
#[command(name = "htrinomial", version, about = "Roots and parameter-space geometry of a·z^(n+m) + b·conj(z)^m + c")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All roots, their moduli and orientation.
    Roots(Common),
    /// Number of roots of modulus below each --v.
    Count(Common),
    /// Egerváry equivalence with a second trinomial.
    Equiv {
        #[command(flatten)]
        common: Common,
        /// Spec file (or report) holding the second trinomial.
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Sampled b- or c-locus at the first --v, as CSV.
    Locus {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = KindArg::B)]
        kind: KindArg,
        /// Oracle-check every 32nd sample.
        #[arg(long)]
        verify: bool,
    },
    /// Singular disk, cusps, double points and critical circle.
    Singular {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        rho: RhoArgs,
    },
    /// SVG figure of the b-plane (loci, rays, singular disk) or the z-plane (roots).
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = KindArg::B)]
        plane: KindArg,
        /// Extra circle centred at the origin; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        circle: Vec<f64>,
    },
    /// Every applicable analysis.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        with: Option<PathBuf>,
        #[command(flatten)]
        rho: RhoArgs,
    },
}

#[derive(Args)]
struct RhoArgs {
    /// Quoted singular-disk radius to check against the formula.
    #[arg(long)]
    expect_rho: Option<f64>,
    /// Locate the singular-disk radius with an oracle sweep along a ray.
    #[arg(long)]
    sweep: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    B,
    C,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Common {
    /// JSON spec file, or a report whose input block is reused.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c_im: Option<f64>,
    /// Radius; repeatable. Replaces the radii of a spec file.
    #[arg(long = "v", allow_hyphen_values = true)]
    v: Vec<f64>,
    #[arg(long)]
    samples: Option<usize>,
    /// JSON file with tolerances; missing keys keep their defaults.
    #[arg(long)]
    tol_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl Common {
    fn inline_given(&self) -> bool {
        [self.a_re, self.a_im, self.b_re, self.b_im, self.c_re, self.c_im].iter().any(Option::is_some)
            || self.n.is_some()
            || self.m.is_some()
    }

    /// Flags override the spec file, which overrides defaults.
    fn input(&self) -> CliResult<Input> {
        let mut input = match &self.spec {
            Some(path) => {
                if self.inline_given() {
                    return Err(CliError::Validation(
                        "--spec cannot be combined with inline coefficient flags".into(),
                    ));
                }
                load_input(path)?
            }
            None => {
                let (Some(n), Some(m)) = (self.n, self.m) else {
                    return Err(CliError::Validation("give --spec FILE or both --n and --m".into()));
                };
                let z = |re: Option<f64>, im: Option<f64>| Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0));
                Input {
                    n,
                    m,
                    a: Complex64::new(self.a_re.unwrap_or(1.0), self.a_im.unwrap_or(0.0)),
                    b: z(self.b_re, self.b_im),
                    c: z(self.c_re, self.c_im),
                    v: Vec::new(),
                    samples: DEFAULT_SAMPLES,
                    tolerances: Default::default(),
                    with: None,
                    expect_rho: None,
                    sweep: false,
                }
            }
        };
        if !self.v.is_empty() {
            input.v = self.v.clone();
        }
        if let Some(s) = self.samples {
            input.samples = s;
        }
        if let Some(path) = &self.tol_file {
            input.tolerances = load_tolerances(path)?;
        }
        Ok(input)
    }
}

fn with_second(mut input: Input, with: &Option<PathBuf>) -> CliResult<Input> {
    if let Some(path) = with {
        input.with = Some(load_spec(path)?);
    }
    Ok(input)
}

fn with_rho(mut input: Input, rho: &RhoArgs) -> Input {
    if rho.expect_rho.is_some() {
        input.expect_rho = rho.expect_rho;
    }
    input.sweep |= rho.sweep;
    input
}

/// Emits a report and turns the first failed section into the exit status.
fn finish(analysis: Analysis, common: &Common, summary_to_stdout: bool) -> CliResult<()> {
    let (report, failure) = analysis.finish();
    let body = match common.format {
        Format::Text => text::render(&report),
        Format::Structured => output::to_json(&report),
    };
    output::emit(common.out.as_deref(), &body)?;
    if summary_to_stdout && common.out.is_some() {
        output::emit(None, &text::render(&report))?;
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct Verification {
    checked: usize,
    failed: Vec<f64>,
    /// Largest `| |z| - v |` over the checked samples, relative to `max(1, v)`.
    max_gap: f64,
}

#[derive(Serialize)]
struct LocusSummary {
    input: Input,
    kind: LocusKind,
    v: f64,
    fixed: Complex64,
    samples: usize,
    params: Option<TrochoidParams>,
    warnings: Vec<String>,
    verification: Option<Verification>,
}

/// Relative modulus agreement required of verified locus samples.
const VERIFY_TOLERANCE: f64 = 1e-8;
const VERIFY_STRIDE: usize = 32;

fn verify_locus(input: &Input, h: &HarmonicTrinomial, kind: LocusKind, v: f64, curve: &[LocusSample]) -> CliResult<Verification> {
    let tol = input.tolerances;
    let opts = htrinomial::roots::OracleOptions { samples: input.samples, ..Default::default() };
    let mut failed = Vec::new();
    let mut max_gap = 0.0f64;
    let mut checked = 0;
    for s in curve.iter().step_by(VERIFY_STRIDE) {
        let probe = match kind {
            LocusKind::BLocus => HarmonicTrinomial::monic(s.value, h.c(), h.n(), h.m()),
            LocusKind::CLocus => HarmonicTrinomial::monic(h.b(), s.value, h.n(), h.m()),
        }?;
        let roots = find_all_roots_with(&probe, &tol, &opts)?;
        let gap = roots.roots.iter().map(|r| (r.modulus - v).abs()).fold(f64::INFINITY, f64::min) / v.max(1.0);
        max_gap = max_gap.max(gap);
        if !(gap <= VERIFY_TOLERANCE) {
            failed.push(s.theta);
        }
        checked += 1;
    }
    Ok(Verification { checked, failed, max_gap })
}

fn run_locus(common: &Common, kind: KindArg, verify: bool) -> CliResult<()> {
    let input = common.input()?;
    input.validate()?;
    let h = input.spec().trinomial()?.normalized();
    let Some(&v) = input.v.first() else {
        return Err(CliError::Validation("locus needs a radius --v".into()));
    };
    let mut warnings = Vec::new();
    if input.v.len() > 1 {
        warnings.push(format!("only the first radius is used; ignored {:?}", &input.v[1..]));
    }
    let (kind, fixed) = match kind {
        KindArg::B => (LocusKind::BLocus, h.c()),
        KindArg::C => (LocusKind::CLocus, h.b()),
        KindArg::Z => return Err(CliError::Validation("locus kind must be b or c".into())),
    };
    let (curve, params) = match kind {
        LocusKind::BLocus => (b_locus_curve(h.n(), h.m(), fixed, v, input.samples)?, b_locus_params(h.n(), h.m(), fixed, v)),
        LocusKind::CLocus => (c_locus_curve(h.n(), h.m(), fixed, v, input.samples)?, c_locus_params(h.n(), h.m(), fixed, v)),
    };
    let params = match params {
        Ok(p) => Some(p),
        Err(e @ Error::InvalidGeometry(_)) => {
            warnings.push(format!("trochoid parameters omitted: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    let verification = if verify { Some(verify_locus(&input, &h, kind, v, &curve)?) } else { None };
    let failed = verification.as_ref().is_some_and(|x| !x.failed.is_empty());

    let csv = output::locus_csv(&curve);
    let summary = LocusSummary { input: input.clone(), kind, v, fixed, samples: curve.len(), params, warnings, verification };
    let summary_text = match common.format {
        Format::Structured => output::to_json(&summary),
        Format::Text => locus_text(&summary),
    };
    match &common.out {
        Some(path) => {
            output::write_atomic(path, csv.as_bytes())?;
            output::emit(None, &summary_text)?;
        }
        None => {
            output::emit(None, &csv)?;
            eprint!("{summary_text}");
        }
    }
    if failed {
        return Err(CliError::Numerical("some locus samples have no root of modulus v".into()));
    }
    Ok(())
}

fn locus_text(s: &LocusSummary) -> String {
    let name = match s.kind {
        LocusKind::BLocus => "b-locus",
        LocusKind::CLocus => "c-locus",
    };
    let mut out = format!("{name} at v = {} with fixed {}, {} samples\n", s.v, text::complex(s.fixed), s.samples);
    if let Some(p) = &s.params {
        out.push_str(&format!("  R = {:.15}\n  r = {:.15}\n  d = {:.15}\n  phase = {:.15}\n", p.big_r, p.small_r, p.d, p.phase));
    }
    for w in &s.warnings {
        out.push_str(&format!("  warning: {w}\n"));
    }
    if let Some(v) = &s.verification {
        out.push_str(&format!(
            "  verified {} samples, {} failed, largest modulus gap {:.3e}\n",
            v.checked,
            v.failed.len(),
            v.max_gap
        ));
    }
    out
}

fn run_plot(common: &Common, plane: KindArg, circles: &[f64]) -> CliResult<()> {
    let input = common.input()?;
    input.validate()?;
    if let Some(r) = circles.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(CliError::Validation(format!("circle radius must be positive and finite, got {r}")));
    }
    let h = input.spec().trinomial()?.normalized();
    let mut fig = svg::Figure::default();
    let mut extra: Vec<svg::Circle> =
        circles.iter().map(|&radius| svg::Circle { radius, style: svg::CircleStyle::Plain }).collect();
    match plane {
        KindArg::B => {
            let (n, m, c) = (h.n(), h.m(), h.c());
            if c.norm() == 0.0 {
                return Err(Error::DegenerateCoefficient("the b-plane figure needs c nonzero").into());
            }
            for &v in &input.v {
                fig.curves.push(b_locus_curve(n, m, c, v, input.samples)?.iter().map(|s| s.value).collect());
            }
            fig.rays = ray_set(n, m, c)?;
            fig.circles.push(svg::Circle { radius: singular_disk_radius(n, m, c.norm())?, style: svg::CircleStyle::Disk });
            if h.b().norm() > 0.0 {
                fig.markers.push(svg::Marker { at: h.b(), style: svg::MarkerStyle::Coefficient });
            }
            fig.title = format!("b-plane, n = {n}, m = {m}, c = {}", text::complex(c));
        }
        KindArg::C => {
            let (n, m, b) = (h.n(), h.m(), h.b());
            for &v in &input.v {
                fig.curves.push(c_locus_curve(n, m, b, v, input.samples)?.iter().map(|s| s.value).collect());
            }
            if h.c().norm() > 0.0 {
                fig.markers.push(svg::Marker { at: h.c(), style: svg::MarkerStyle::Coefficient });
            }
            fig.title = format!("c-plane, n = {n}, m = {m}, b = {}", text::complex(b));
        }
        KindArg::Z => {
            let opts = htrinomial::roots::OracleOptions { samples: input.samples, ..Default::default() };
            let roots = find_all_roots_with(&h, &input.tolerances, &opts)?;
            fig.markers.extend(roots.roots.iter().map(|r| svg::Marker { at: r.value, style: svg::MarkerStyle::Root }));
            extra.extend(input.v.iter().map(|&radius| svg::Circle { radius, style: svg::CircleStyle::Plain }));
            fig.title = format!("roots of h, n = {}, m = {}", h.n(), h.m());
        }
    }
    fig.circles.extend(extra);
    output::emit(common.out.as_deref(), &fig.render())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Roots(common) => {
            let mut a = Analysis::new(common.input()?, "roots")?;
            a.roots();
            finish(a, &common, false)
        }
        Command::Count(common) => {
            let mut a = Analysis::new(common.input()?, "count")?;
            a.counts();
            finish(a, &common, false)
        }
        Command::Equiv { common, with } => {
            let input = with_second(common.input()?, &with)?;
            if input.with.is_none() {
                return Err(CliError::Validation("equiv needs --with FILE".into()));
            }
            let mut a = Analysis::new(input, "equiv")?;
            a.equivalence();
            finish(a, &common, false)
        }
        Command::Singular { common, rho } => {
            let input = with_rho(common.input()?, &rho);
            let (expect, sweep) = (input.expect_rho, input.sweep);
            let mut a = Analysis::new(input, "singular")?;
            a.singular(expect, sweep);
            finish(a, &common, false)
        }
        Command::Report { common, with, rho } => {
            let input = with_rho(with_second(common.input()?, &with)?, &rho);
            let (expect, sweep) = (input.expect_rho, input.sweep);
            let mut a = Analysis::new(input, "report")?;
            a.profile();
            a.counts();
            a.roots();
            a.uj();
            a.rays();
            a.singular(expect, sweep);
            a.equivalence();
            finish(a, &common, true)
        }
        Command::Locus { common, kind, verify } => run_locus(&common, kind, verify),
        Command::Plot { common, plane, circle } => run_plot(&common, plane, &circle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("htrinomial: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

