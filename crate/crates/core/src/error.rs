use thiserror::Error;

/// Errors raised by the library. Mathematical outcomes that are part of a
/// normal answer (an inconsistent linear system, a failed law) are reported
/// through return values instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid scalar {0:?}: expected an integer or p/q (no decimals)")]
    Scalar(String),

    #[error("wrong differential: {0}")]
    WrongDifferential(&'static str),

    #[error("cochains of degree ({0},{1}) are not composable; both need at least one algebra argument")]
    NotComposable(usize, usize),

    #[error("deformation has no infinitesimal: {0}")]
    NoInfinitesimal(&'static str),

    #[error("deformation does not satisfy its defining equations: {0}")]
    InvalidDeformation(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("degree {degree} exceeds the cap {cap} (total cochain space has dimension {dim})")]
    DegreeCap { degree: usize, cap: usize, dim: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
