use crate::{GaussianRational, Rational};
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact coefficient field.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + From<Rational>
    + 'static
{
    fn from_i64(n: i64) -> Self {
        Self::from(crate::qi(n))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power, negative exponents allowed for nonzero values.
    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }
}

impl Field for Rational {}
impl Field for GaussianRational {}
