use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Toprec(#[from] p5_toprec::TrError),
    #[error(transparent)]
    Wkb(#[from] p5_wkb::WkbError),
    #[error(transparent)]
    Numerics(#[from] p5_numerics::NumericsError),
    #[error(transparent)]
    Algebra(#[from] p5_algebra::AlgebraError),
    #[error("output: {0}")]
    Output(String),
}

