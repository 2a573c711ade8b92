//! ξ = (z+1)²/(4z), √(ξ(ξ−1)) = (z²−1)/(4z).

use num_traits::{One, Zero};
use p5_algebra::{q, qi, GRatFun, GaussianRational, Poly, Rational};

pub type G = GaussianRational;

pub fn g(r: Rational) -> G {
    G::from(r)
}

pub fn gi(n: i64) -> G {
    G::from(qi(n))
}

pub fn poly(c: &[i64]) -> Poly<G> {
    Poly::new(c.iter().map(|&x| gi(x)).collect())
}

pub fn rf(num: Poly<G>, den: Poly<G>) -> GRatFun {
    GRatFun::new(num, den).expect("nonzero denominator")
}

pub fn z_pow(k: i32) -> GRatFun {
    GRatFun::linear_pow(G::zero(), k)
}

pub fn xi() -> GRatFun {
    rf(poly(&[1, 2, 1]), poly(&[0, 4]))
}

pub fn sqrt_xi() -> GRatFun {
    rf(poly(&[-1, 0, 1]), poly(&[0, 4]))
}

/// dξ/dz = (z²−1)/(4z²)
pub fn dxi() -> GRatFun {
    rf(poly(&[-1, 0, 1]), poly(&[0, 0, 4]))
}

pub fn xi_at(z: &Rational) -> Rational {
    (z + qi(1)) * (z + qi(1)) / (qi(4) * z)
}

pub fn dxi_at(z: &Rational) -> Rational {
    (z * z - qi(1)) / (qi(4) * z * z)
}

/// d/dξ of a function of z.
pub fn d_dxi(f: &GRatFun) -> GRatFun {
    &f.derivative() / &dxi()
}

/// 1/ξ = 4z/(z+1)²
pub fn inv_xi() -> GRatFun {
    rf(poly(&[0, 4]), poly(&[1, 2, 1]))
}

/// 1/(ξ−1) = 4z/(z−1)²
pub fn inv_xi_m1() -> GRatFun {
    rf(poly(&[0, 4]), poly(&[1, -2, 1]))
}

pub fn constant(c: G) -> GRatFun {
    GRatFun::constant(c)
}

pub fn half() -> G {
    g(q(1, 2))
}

pub fn i() -> G {
    G::i()
}

pub fn one() -> G {
    G::one()
}

/// Whether (z²+1) divides the denominator.
pub fn singular_at_half(f: &GRatFun) -> bool {
    let d = f.denom();
    d.eval(&i()).is_zero() || d.eval(&-i()).is_zero()
}
