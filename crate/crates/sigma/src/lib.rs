//! ħ-expansions on the Painlevé-5 side: the σ coefficients, the τ-function
//! coefficients and the Lax-pair auxiliary series.
//!
//! σ(t) = Σ σₖ x^(2k) t^(2−2k), where x² = −(πħ)² is the grading used by the
//! recursion. With the sign `+` in front of (x t σ̈)² the series satisfies
//! (x t σ̈)² + (tσ̇ − σ)(tσ̇ − σ − 4σ̇²) = 0 to every order.

mod lax;
mod qseries;
mod report;
mod sigma;
mod tau;

pub use lax::{cd_coeffs, lax_expansions, lax_residual, HbarConvention, LaxExpansion, LaxResidual};
pub use qseries::QSeries;
pub use report::{discrepancies, tau_latex, Discrepancy, SigmaReport};
pub use sigma::{chazy_residual, printed_recursion, sigma_coeffs, sigma_hat_series, SigmaHatTerm, SigmaSeries};
pub use tau::{tau_coeffs, TauCoefficient};
