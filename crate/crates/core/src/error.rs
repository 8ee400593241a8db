use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Hankel series evaluated at t = 0 (logarithmic singularity)")]
    HankelAtZero,
    #[error("Hankel series did not converge within {max_terms} terms at |t| = {modulus}")]
    SeriesNotConverged { max_terms: usize, modulus: f64 },
    #[error("invalid series configuration: {0}")]
    InvalidSeriesCfg(String),
    #[error("kernel evaluated at the origin")]
    KernelAtOrigin,
    #[error("alpha = 0 has no Hankel branch")]
    ZeroAlpha,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("need at least {min} boundary nodes, got {got}")]
    TooFewNodes { min: usize, got: usize },
    #[error("area resolution {got} is below the minimum {min}")]
    ResolutionTooSmall { min: usize, got: usize },
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: f64, y: f64 },
    #[error("point ({x}, {y}) lies in the boundary band of the curve")]
    OnBoundary { x: f64, y: f64 },
    #[error("invalid deletion radius {0}")]
    InvalidDelta(f64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("division by zero at ({x}, {y})")]
    DivisionByZero { x: f64, y: f64 },
    #[error("logarithm of zero at ({x}, {y})")]
    LogOfZero { x: f64, y: f64 },
    #[error("{func} applied to a non-scalar quaternion at ({x}, {y})")]
    NonScalarArgument { func: &'static str, x: f64, y: f64 },
    #[error("density is not purely vectorial at ({x}, {y}): |f0| = {f0}")]
    NonVectorialDensity { x: f64, y: f64, f0: f64 },
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("invalid quadrature specification: {0}")]
    InvalidQuadSpec(String),
    #[error("invalid finite-difference grid: {0}")]
    InvalidGrid(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownIdentifier(String),
    BadNumber(String),
}

/// Syntax error in a density expression; `position` is a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "unexpected token {t:?} at position {}", self.position)
            }
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier {name:?} at position {}", self.position)
            }
            ParseErrorKind::BadNumber(s) => {
                write!(f, "malformed number {s:?} at position {}", self.position)
            }
        }
    }
}
