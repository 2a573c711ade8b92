use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("requested order {order} is below the valuation {valuation}")]
    OrderBelowValuation { order: i64, valuation: i64 },
    #[error("rational function is not proper (numerator degree {num} >= denominator degree {den})")]
    Improper { num: usize, den: usize },
    #[error("denominator has a factor with roots outside the listed poles: {factor}")]
    UnlistedPole { factor: String },
    #[error("s-grade mismatch: {left} vs {right}")]
    GradeMismatch { left: i32, right: i32 },
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("evaluation at a pole")]
    Pole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("half-integer exponents remain: {0}")]
    NotRational(String),
}
