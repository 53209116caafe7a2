//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong between parsing an equation and writing a report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unsupported degree {0}: only degree 1 and 2 surfaces are accepted")]
    UnsupportedDegree(u32),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("cannot mix `x,y,z` and `x1..xn` variable names in one equation")]
    MixedNaming,

    #[error("nonpolynomial input: division by a non-constant expression")]
    NonConstantDivisor,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not divisible by the given divisor")]
    Indivisible,

    #[error("denominator polynomial is zero")]
    ZeroDenominator,

    #[error("coefficients are all zero: not a hyperplane")]
    NotAPlane,

    #[error("zero gradient: singular point on the surface")]
    SingularPoint,

    #[error("point does not lie on the surface")]
    NotOnSurface,

    #[error("degenerate axis spacing: {0}")]
    DegenerateSpacing(String),

    #[error("linear system is singular: no usable pivot for variable x{col} (rows {rows:?} all vanished)")]
    SingularSystem { col: usize, rows: Vec<usize> },

    #[error("degenerate contact: the contact polynomial vanishes identically (developable or degenerate surface)")]
    DegenerateContact,

    #[error("numerator cleanup failed: residual degree {degree} after stripping {stripped}")]
    CleanupFailure { degree: u32, stripped: String },

    #[error("degenerate boundary: the eliminated equation vanishes identically (empty or measure-zero region)")]
    EmptyBoundary,

    #[error("report and curve come from different surfaces or spacings")]
    SurfaceMismatch,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
