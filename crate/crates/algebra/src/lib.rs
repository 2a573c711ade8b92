//! Exact arithmetic core: rationals, Gaussian rationals, dense univariate
//! polynomials and rational functions, Laurent expansion, and the pole-basis
//! tensors used to store multi-point correlators.

mod algebraic;
mod error;
mod field;
mod gaussian;
mod laurent;
pub mod par;
mod poly;
mod ratfun;
mod rational;
mod tensor;

pub use algebraic::AlgebraicTerm;
pub use error::AlgebraError;
pub use field::Field;
pub use gaussian::GaussianRational;
pub use laurent::Laurent;
pub use poly::Poly;
pub use ratfun::{PartialFraction, RatFun};
pub use rational::{parse_rational, q, qi, rational_to_string, Rational};
pub use tensor::{Pole, PoleBasisTensor};

/// Rational function over ℚ.
pub type QRatFun = RatFun<Rational>;
/// Rational function over ℚ(i).
pub type GRatFun = RatFun<GaussianRational>;
