//! The gap spectral curve in the Zhukovsky parametrization.

use num_traits::{One, Zero};
use p5_algebra::{q, qi, Poly, QRatFun, Rational};

/// ξ(z) = ½ + (z + 1/z)/4, with `y`, `ω` and `φ` carrying one power of `s`.
#[derive(Clone, Debug)]
pub struct GapSpectralCurve {
    pub xi: QRatFun,
    pub y: QRatFun,
    pub omega: QRatFun,
    pub phi: QRatFun,
}

pub const BRANCH_POINTS: [i8; 2] = [1, -1];

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::new(c.iter().map(|&x| qi(x)).collect())
}

fn rf(num: &[i64], den: &[i64]) -> QRatFun {
    QRatFun::new(poly(num), poly(den)).expect("nonzero denominator")
}

impl Default for GapSpectralCurve {
    fn default() -> Self {
        Self::new()
    }
}

impl GapSpectralCurve {
    pub fn new() -> Self {
        let quarter = q(1, 4);
        GapSpectralCurve {
            xi: rf(&[1, 2, 1], &[0, 4]),
            y: rf(&[1, 0, 1], &[-1, 0, 1]),
            omega: rf(&[1, 0, 1], &[0, 0, 1]).scale(&quarter),
            phi: rf(&[-1, 0, 1], &[0, 1]).scale(&quarter),
        }
    }

    /// Degree-of-`s` of `y`, `ω` and `φ`.
    pub const S_GRADE: i32 = 1;

    pub fn conjugate(z: &Rational) -> Rational {
        Rational::one() / z
    }

    /// y²·ξ(ξ−1) − (ξ−½)², which vanishes identically.
    pub fn curve_defect(&self) -> QRatFun {
        let one = QRatFun::one();
        let half = QRatFun::constant(q(1, 2));
        let xi = &self.xi;
        let lhs = &(&(&self.y * &self.y) * xi) * &(xi - &one);
        let c = xi - &half;
        &lhs - &(&c * &c)
    }

    /// dφ/dz − y·dξ/dz, which vanishes identically.
    pub fn primitive_defect(&self) -> QRatFun {
        &self.phi.derivative() - &(&self.y * &self.xi.derivative())
    }

    /// ω − y·dξ/dz, which vanishes identically.
    pub fn omega_defect(&self) -> QRatFun {
        &self.omega - &(&self.y * &self.xi.derivative())
    }

    /// Zeros of dξ/dz among the given candidates.
    pub fn critical_points(&self, candidates: &[Rational]) -> Vec<Rational> {
        let d = self.xi.derivative();
        candidates
            .iter()
            .filter(|z| d.eval(z).map(|v| v.is_zero()).unwrap_or(false))
            .cloned()
            .collect()
    }
}

/// W₂⁽⁰⁾(z₁, z₂) = 1/(z₁ − z₂)².
pub fn w2_0(z1: &Rational, z2: &Rational) -> Option<Rational> {
    let d = z1 - z2;
    if d.is_zero() {
        None
    } else {
        Some(Rational::one() / (&d * &d))
    }
}

/// 𝒦(z₀, z)/ω(z) as a function of `z`; multiply by `s⁻¹`.
pub fn recursion_kernel(z0: &Rational) -> QRatFun {
    let num = poly(&[0, 0, -1, 0, 1]);
    let a = Poly::new(vec![-Rational::one(), z0.clone()]);
    let b = Poly::new(vec![-z0.clone(), Rational::one()]);
    let den = &(&a * &b) * &poly(&[1, 0, 1]);
    QRatFun::new(num, den).expect("nonzero denominator")
}

/// s-grade of [`recursion_kernel`].
pub const KERNEL_S_GRADE: i32 = -1;
