//! WKB side of the Painlevé-5 gap problem, written in the Zhukovsky variable
//! ξ = (z+1)²/(4z), where √(ξ(ξ−1)) = (z²−1)/(4z) is rational.

mod charpoly;
mod closed;
mod det;
mod error;
mod hypotheses;
mod kernel;
mod latex;
mod mpoly;
mod orders;
pub mod zhukovsky;

pub use charpoly::{lax_char_poly, printed_alphas, reduced_sigma, vanishing_monodromy_reduction, CharPolyReport, LaxCharPoly, LaxResidues, CHAR_POLY_VARS};
pub use error::WkbError;
pub use mpoly::MPoly;
pub use orders::*;
pub use det::{default_sample_points, det_correlator, det_correlator_at, generic_points, n_cycles, spectral_root, CycleCheck, DetCorrelator};
pub use kernel::{kernel_orders, kernel_orders_from, Channel, KernelOrder, RadicalValue, Tails};
pub use hypotheses::{comparison_s, recursion_value, verify_hypotheses, ComparisonHeader, HypothesesReport, Hypothesis1, Hypothesis2, LeadingExponent, Match};
pub use latex::{ratfun_latex, wkb_latex, wkb_order_latex};
pub use closed::{closed_forms, ClosedFormReport};
