use crate::{AlgebraError, GRatFun, GaussianRational};
use num_traits::{One, Zero};
use std::fmt;

/// `coeff · z^(ez/2) (z−1)^(em/2) (z+1)^(ep/2) · rat(z)` with doubled
/// half-integer exponents.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraicTerm {
    pub coeff: GaussianRational,
    pub half_exp_z: i32,
    pub half_exp_zm1: i32,
    pub half_exp_zp1: i32,
    pub rat: GRatFun,
}

impl AlgebraicTerm {
    pub fn new(coeff: GaussianRational, exps: (i32, i32, i32), rat: GRatFun) -> Self {
        Self { coeff, half_exp_z: exps.0, half_exp_zm1: exps.1, half_exp_zp1: exps.2, rat }
    }

    pub fn from_ratfun(rat: GRatFun) -> Self {
        Self::new(GaussianRational::one(), (0, 0, 0), rat)
    }

    pub fn exps(&self) -> (i32, i32, i32) {
        (self.half_exp_z, self.half_exp_zm1, self.half_exp_zp1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.coeff.clone() * o.coeff.clone(),
            (
                self.half_exp_z + o.half_exp_z,
                self.half_exp_zm1 + o.half_exp_zm1,
                self.half_exp_zp1 + o.half_exp_zp1,
            ),
            &self.rat * &o.rat,
        )
    }

    pub fn with_rat(&self, rat: GRatFun) -> Self {
        Self { rat, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.rat.is_zero()
    }

    /// True when every exponent is an integer.
    pub fn is_rational(&self) -> bool {
        self.half_exp_z % 2 == 0 && self.half_exp_zm1 % 2 == 0 && self.half_exp_zp1 % 2 == 0
    }

    /// Collapse into a plain rational function; fails while half-integer
    /// exponents remain.
    pub fn collapse(&self) -> Result<GRatFun, AlgebraError> {
        if !self.is_rational() {
            return Err(AlgebraError::NotRational(format!("{:?}", self.exps())));
        }
        let one = GaussianRational::one();
        let f = GRatFun::linear_pow(GaussianRational::zero(), self.half_exp_z / 2)
            * GRatFun::linear_pow(one.clone(), self.half_exp_zm1 / 2)
            * GRatFun::linear_pow(-one, self.half_exp_zp1 / 2);
        Ok((&f * &self.rat).scale(&self.coeff))
    }
}

impl fmt::Display for AlgebraicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) z^({}/2) (z-1)^({}/2) (z+1)^({}/2) * [{}]",
            self.coeff, self.half_exp_z, self.half_exp_zm1, self.half_exp_zp1, self.rat
        )
    }
}
