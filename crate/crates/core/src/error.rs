use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    #[error("inadmissible parameter {param} for N = {n}: {reason}")]
    InadmissibleParameter { n: u32, param: String, reason: String },

    #[error("no torsion coset candidate matches the point (best relative residual 2^{best_log2:.1})")]
    NoTorsionMatch { best_log2: f64 },

    #[error("series truncated at n = {available}, need n > {needed} for the requested precision")]
    InsufficientTruncation { needed: usize, available: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("quadrature did not converge after {levels} levels (last difference 2^{last_log2:.1})")]
    QuadratureDiverged { levels: u32, last_log2: f64 },

    #[error("ambiguous recognition: {0}")]
    AmbiguousRecognition(String),

    #[error("the two evaluation routes for R disagree (difference 2^{log2_diff:.1}, tolerance 2^{log2_tol:.1})")]
    PathDisagreement { log2_diff: f64, log2_tol: f64 },

    #[error("element is not invertible in the cyclotomic field")]
    NotInvertible,
}
