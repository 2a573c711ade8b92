use crate::AlgebraError;
use num_bigint::BigInt;
use num_traits::{One, Signed};

pub type Rational = num_rational::BigRational;

/// `p/q` as a reduced rational.
pub fn q(p: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical string: `p/q`, or `p` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| bad())?;
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if d.is_positive() {
                Ok(Rational::new(n, d))
            } else if d.is_negative() {
                Ok(Rational::new(-n, -d))
            } else {
                Err(AlgebraError::DivisionByZero)
            }
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
