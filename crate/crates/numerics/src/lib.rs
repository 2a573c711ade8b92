//! Floating-point cross-validation of the gap probability E₂(0,s).
//!
//! Three independent routes are provided: the σ-form Painlevé 5 ODE for σ̂(s)
//! with log τ̂ integrated alongside, the Nyström approximation of the
//! sine-kernel Fredholm determinant, and the truncated large-s series built
//! from the exact σₖ.

mod asymptotic;
mod error;
mod fredholm;
mod gap;
mod ode;
mod output;
mod scalar;
mod series;
mod taylor;

pub use asymptotic::{asymptotic_eval, AsymptoticValue, HbarNormalization};
pub use error::NumericsError;
pub use fredholm::{fredholm_sine, fredholm_sine_estimate, fredholm_sine_with, FredholmValue};
pub use gap::{gap_report, gap_reports, GapConfig, GapDiagnostics, GapReport};
pub use ode::{integrate_sigma_ode, integrate_uniform, p5_residual, uniform_grid, OdeConfig, OdeMethod, OdeSolution};
pub use output::{write_gap_csv, write_ode_csv};
pub use p5_algebra::par::Exec;
pub use scalar::{DoubleDouble, Scalar};
pub use series::{eval_series, log_tau_series, small_s_expansion};
