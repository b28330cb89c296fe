use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("exponents must be coprime, got gcd({n}, {m}) = {gcd}")]
    NotCoprime { n: u32, m: u32, gcd: u32 },

    #[error("degenerate coefficient: {0}")]
    DegenerateCoefficient(&'static str),

    #[error("side lengths ({0}, {1}, {2}) do not form a triangle")]
    NotATriangle(f64, f64, f64),

    #[error("side lengths ({0}, {1}, {2}) form a degenerate triangle")]
    DegenerateTriangle(f64, f64, f64),

    /// Radius lies inside an excluded band (a root circle or a pivot radius of B).
    #[error("radius {v} is on a boundary ({reason}); nearest admissible radii are {below} and {above}")]
    OnBoundary {
        v: f64,
        reason: &'static str,
        below: f64,
        above: f64,
    },

    #[error("iteration did not converge after {0} steps")]
    NoConvergence(usize),

    #[error("jacobian is singular at the current iterate (condition number {0:e})")]
    SingularJacobian(f64),

    #[error("oracle accepted {found} roots, more than the bound {bound}")]
    OracleIncomplete { found: usize, bound: usize },

    /// The roots found violate the argument principle, so some were missed.
    #[error("roots found have index sum {found}, expected {expected}")]
    IndexSumMismatch { found: i64, expected: i64 },

    #[error("exponent mismatch: ({0}, {1}) vs ({2}, {3})")]
    ExponentMismatch(u32, u32, u32, u32),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("no cusp exists at radius {0}")]
    NoCusp(f64),
}

impl Error {
    /// Numerical failures as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::SingularJacobian(_)
                | Error::OracleIncomplete { .. }
                | Error::IndexSumMismatch { .. }
        )
    }
}
