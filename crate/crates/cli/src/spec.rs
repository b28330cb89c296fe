//! Trinomial specifications from files or inline flags.

use std::path::Path;

use htrinomial::{HarmonicTrinomial, Tolerances};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const DEFAULT_SAMPLES: usize = 2048;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Coefficients as `[re, im]` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrinomialSpec {
    pub n: u32,
    pub m: u32,
    #[serde(default = "one")]
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl TrinomialSpec {
    pub fn trinomial(&self) -> CliResult<HarmonicTrinomial> {
        Ok(HarmonicTrinomial::new(self.a, self.b, self.c, self.n, self.m)?)
    }
}

/// Everything a command needs besides its own options. Emitted reports echo
/// this block, and loading the echo reproduces the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub n: u32,
    pub m: u32,
    #[serde(default = "one")]
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    #[serde(default)]
    pub v: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Second trinomial for equivalence checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with: Option<TrinomialSpec>,
    /// A quoted singular-disk radius to check against the formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_rho: Option<f64>,
    /// Locate the singular-disk radius by sweeping a ray with the oracle.
    #[serde(default, skip_serializing_if = "is_false")]
    pub sweep: bool,
}

fn is_false(x: &bool) -> bool {
    !*x
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json(path: &Path) -> CliResult<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Loads a spec file, or the `input` block of an emitted report.
pub fn load_input(path: &Path) -> CliResult<Input> {
    let mut value = parse_json(path)?;
    if let Some(inner) = value.get_mut("input") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Loads the trinomial part of a spec file or report.
pub fn load_spec(path: &Path) -> CliResult<TrinomialSpec> {
    Ok(load_input(path)?.spec())
}

pub fn load_tolerances(path: &Path) -> CliResult<Tolerances> {
    let tol: Tolerances = serde_json::from_value(parse_json(path)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    tol.validate()?;
    Ok(tol)
}

impl Input {
    pub fn spec(&self) -> TrinomialSpec {
        TrinomialSpec { n: self.n, m: self.m, a: self.a, b: self.b, c: self.c }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.spec().trinomial()?;
        if let Some(w) = &self.with {
            w.trinomial()?;
        }
        if let Some(v) = self.v.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(CliError::Validation(format!("radius must be positive and finite, got {v}")));
        }
        if self.samples < 16 {
            return Err(CliError::Validation(format!("at least 16 samples required, got {}", self.samples)));
        }
        if let Some(r) = self.expect_rho.filter(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(CliError::Validation(format!("expected rho must be positive and finite, got {r}")));
        }
        self.tolerances.validate()?;
        Ok(())
    }
}
