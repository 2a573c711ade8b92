use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};
use twofloat::TwoFloat;

/// Real arithmetic used by the series and Taylor routines.
pub trait Scalar: Num + Signed + Copy + PartialOrd + FromPrimitive + ToPrimitive {
    fn pi() -> Self;

    fn from_f(x: f64) -> Self;

    fn from_u(n: usize) -> Self {
        Self::from_usize(n).expect("small integer")
    }

    fn f64(self) -> f64 {
        self.to_f64().expect("finite")
    }
}

impl Scalar for f64 {
    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn from_f(x: f64) -> Self {
        x
    }
}

/// Double-double (~106-bit) arithmetic.
pub type DoubleDouble = TwoFloat;

impl Scalar for TwoFloat {
    fn pi() -> Self {
        twofloat::consts::PI
    }

    fn from_f(x: f64) -> Self {
        TwoFloat::from(x)
    }
}
