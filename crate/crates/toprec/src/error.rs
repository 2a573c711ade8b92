use p5_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrError {
    #[error("(g, n) = ({g}, {n}) is unstable and has no closed form")]
    Unstable { g: usize, n: usize },
    #[error("residue check failed for genus {g}: {what}")]
    ResidueCheck { g: usize, what: String },
    #[error("cache i/o at {path}: {source}")]
    Cache { path: String, source: std::io::Error },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
