use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One violated invariant found while validating a hypersurface description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    /// Dotted path of the offending field, e.g. `strata[1].link.exponents`.
    pub path: String,
    pub message: String,
}

impl ValidationError {
    pub(crate) fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn join_errors(errors: &[ValidationError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("order must be a positive integer")]
    ZeroOrder,
    #[error("divisor is not realizable as a polynomial: net multiplicity of Phi_{order} is {multiplicity}")]
    NotRealizable { order: u64, multiplicity: i64 },
    #[error("invalid Brieskorn exponents: {0}")]
    InvalidBrieskorn(String),
    #[error("stratum of dimension {s} needs {expected} Brieskorn exponents, got {got}")]
    ExponentCount { s: u32, expected: usize, got: usize },
    #[error("invalid local data: {0}")]
    InvalidLocalData(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("degree {i} outside 1..={n}")]
    DegreeOutOfRange { i: u32, n: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing Euler characteristic of the complement")]
    MissingChi,
    #[error("inconsistent χ(U): rank must be ≥ 0 (got {0})")]
    NegativeRank(i64),
    #[error("χ(F) = {chi} is not divisible by d = {d}")]
    ChiNotDivisible { chi: i64, d: u64 },
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid polynomial encoding: {0}")]
    Encoding(String),
    #[error("invalid hypersurface description: {}", join_errors(.0))]
    Invalid(Vec<ValidationError>),
}
