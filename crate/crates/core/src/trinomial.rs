use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `h(z) = a·z^(n+m) + b·z̄^m + c` with coprime positive exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTrinomial")]
pub struct HarmonicTrinomial {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    n: u32,
    m: u32,
}

#[derive(Deserialize)]
struct RawTrinomial {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    n: u32,
    m: u32,
}

impl TryFrom<RawTrinomial> for HarmonicTrinomial {
    type Error = Error;

    fn try_from(r: RawTrinomial) -> Result<Self> {
        Self::new(r.a, r.b, r.c, r.n, r.m)
    }
}

fn gcd(mut x: u32, mut y: u32) -> u32 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

pub(crate) fn check_finite(z: Complex64, name: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("coefficient {name} is not finite")))
    }
}

pub(crate) fn check_exponents(n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(format!(
            "exponents must be positive, got n = {n}, m = {m}"
        )));
    }
    let g = gcd(n, m);
    if g != 1 {
        return Err(Error::NotCoprime { n, m, gcd: g });
    }
    Ok(())
}

pub(crate) fn check_radius(v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("radius must be positive and finite, got {v}")))
    }
}

impl HarmonicTrinomial {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, n: u32, m: u32) -> Result<Self> {
        check_finite(a, "a")?;
        check_finite(b, "b")?;
        check_finite(c, "c")?;
        check_exponents(n, m)?;
        if a == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCoefficient("leading coefficient a must be nonzero"));
        }
        Ok(Self { a, b, c, n, m })
    }

    /// `z^(n+m) + b·z̄^m + c`.
    pub fn monic(b: Complex64, c: Complex64, n: u32, m: u32) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), b, c, n, m)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree `n + m` of the analytic part.
    pub fn degree(&self) -> u32 {
        self.n + self.m
    }

    /// Upper bound `n + 3m` on the number of roots.
    pub fn root_bound(&self) -> usize {
        (self.n + 3 * self.m) as usize
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.a * z.powu(self.degree()) + self.b * z.conj().powu(self.m) + self.c
    }

    /// `∂h/∂z = a(n+m)z^(n+m-1)`.
    pub fn dz(&self, z: Complex64) -> Complex64 {
        let deg = self.degree();
        self.a * deg as f64 * z.powu(deg - 1)
    }

    /// `∂h/∂z̄ = m·b·z̄^(m-1)`.
    pub fn dzbar(&self, z: Complex64) -> Complex64 {
        self.b * self.m as f64 * z.conj().powu(self.m - 1)
    }

    /// Magnitude of the largest term of `h` at modulus `r`, floored at 1.
    pub fn scale_at(&self, r: f64) -> f64 {
        let deg = self.degree() as i32;
        1f64.max(self.a.norm() * r.powi(deg))
            .max(self.b.norm() * r.powi(self.m as i32))
            .max(self.c.norm())
    }

    /// Divides every coefficient by `a`.
    pub fn normalized(&self) -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: self.b / self.a,
            c: self.c / self.a,
            n: self.n,
            m: self.m,
        }
    }

    pub fn with_b(&self, b: Complex64) -> Result<Self> {
        Self::new(self.a, b, self.c, self.n, self.m)
    }

    pub fn with_c(&self, c: Complex64) -> Result<Self> {
        Self::new(self.a, self.b, c, self.n, self.m)
    }

    pub(crate) fn require_bc(&self) -> Result<()> {
        if self.b == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCoefficient("b must be nonzero"));
        }
        if self.c == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCoefficient("c must be nonzero"));
        }
        Ok(())
    }
}

impl std::fmt::Display for HarmonicTrinomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})·z^{} + ({})·conj(z)^{} + ({})",
            self.a,
            self.degree(),
            self.b,
            self.m,
            self.c
        )
    }
}

/// Numerical tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Largest accepted `|h(z)|` at a root, relative to the term scale.
    pub residual: f64,
    /// Two moduli closer than this are considered equal.
    pub modulus_group: f64,
    /// Angular tolerance in radians.
    pub angular: f64,
    /// Relative exclusion band around regime boundaries.
    pub boundary_band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-10,
            modulus_group: 1e-7,
            angular: 1e-9,
            boundary_band: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("residual", self.residual),
            ("modulus_group", self.modulus_group),
            ("angular", self.angular),
            ("boundary_band", self.boundary_band),
        ];
        for (name, value) in all {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "tolerance {name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}
