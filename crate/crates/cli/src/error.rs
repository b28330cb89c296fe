use std::fmt;

/// Failure of a command, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<htrinomial::Error> for CliError {
    fn from(e: htrinomial::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

/// Short machine-readable name of a library error.
pub fn kind(e: &htrinomial::Error) -> &'static str {
    use htrinomial::Error::*;
    match e {
        InvalidInput(_) => "invalid_input",
        NotCoprime { .. } => "not_coprime",
        DegenerateCoefficient(_) => "degenerate_coefficient",
        NotATriangle(..) => "not_a_triangle",
        DegenerateTriangle(..) => "degenerate_triangle",
        OnBoundary { .. } => "on_boundary",
        NoConvergence(_) => "no_convergence",
        SingularJacobian(_) => "singular_jacobian",
        OracleIncomplete { .. } => "oracle_incomplete",
        IndexSumMismatch { .. } => "index_sum_mismatch",
        ExponentMismatch(..) => "exponent_mismatch",
        InvalidGeometry(_) => "invalid_geometry",
        NoCusp(_) => "no_cusp",
    }
}

pub type CliResult<T> = Result<T, CliError>;
