use thiserror::Error;

#[derive(Debug, Error)]
pub enum WkbError {
    #[error("order {k}: t-equation and ξ-equation derivations disagree")]
    RouteMismatch { k: i64 },
    #[error("{which} order {k} is singular at ξ = 1/2")]
    Singular { which: String, k: usize },
    #[error("kernel order {k}: {what}")]
    Kernel { k: usize, what: String },
    #[error("W_{n}, cycle {cycle:?}: {what}")]
    Cycle { n: usize, cycle: Vec<usize>, what: String },
    #[error("W_{n} at ħ^{m}: {what}")]
    Series { n: usize, m: i64, what: String },
    #[error(transparent)]
    Algebra(#[from] p5_algebra::AlgebraError),
    #[error(transparent)]
    Recursion(#[from] p5_toprec::TrError),
}
