use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("integration stopped near s = {last_s}: {reason}")]
    StepCollapse { last_s: f64, reason: String },
    #[error("ODE residual {value:e} above bound {bound:e} at s = {s}")]
    Residual { s: f64, value: f64, bound: f64 },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}
