use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unsupported path: {0}")]
    Unsupported(String),
    #[error("series did not converge after {terms} terms (partial sum {partial})")]
    NonConvergence { terms: usize, partial: f64 },
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("ladder degenerate at nu = {nu}, s = {s}")]
    Degenerate { nu: i64, s: i64 },
    #[error("unresolved coefficient H(nu = {nu}; k = {k})")]
    Unresolved { nu: u32, k: i64 },
    #[error("accuracy target missed: best {best}, estimated error {err}")]
    Accuracy { best: f64, err: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown constant: {0}")]
    UnknownConstant(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;
