use crate::qseries::QSeries;
use crate::sigma::sigma_coeffs;
use num_traits::{One, Zero};
use p5_algebra::{qi, Field, GaussianRational, Rational};
use serde::Serialize;

type G = GaussianRational;

/// Normalization of the expansion parameter.
///
/// `AppendixB`: coefficients of εᵏ with the Lax system written as
/// iε t ẏ = t y − 2z(y−1)², i.e. −πħ = iε.
/// `Section3`: coefficients of (πħ)ᵏ; obtained by multiplying the order-k
/// coefficient by iᵏ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HbarConvention {
    AppendixB,
    Section3,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LaxExpansion {
    pub convention: HbarConvention,
    /// Highest power of ħ/t kept.
    pub order: usize,
    /// z(t) = Σ zₖ ħ^(2k) t^(1−2k)
    #[serde(serialize_with = "crate::report::ser_qs")]
    pub z_coeffs: Vec<Rational>,
    /// y(t) = Σ yₖ ħᵏ t^(−k)
    pub y_coeffs: Vec<G>,
    /// d/dt log u = Σ uₖ ħ^(2k−1) t^(−2k)
    pub u_log_coeffs: Vec<G>,
    /// μν = Σ Cₙ ħⁿ t^(−n)
    pub c_coeffs: Vec<G>,
    /// μ̇/μ = Σ Dₙ ħⁿ t^(−n−1); entry 0 is D₋₁.
    pub d_coeffs: Vec<G>,
}

impl LaxExpansion {
    pub fn d(&self, n: i64) -> G {
        usize::try_from(n + 1).ok().and_then(|k| self.d_coeffs.get(k).cloned()).unwrap_or_else(G::zero)
    }

    pub fn c(&self, n: i64) -> G {
        usize::try_from(n).ok().and_then(|k| self.c_coeffs.get(k).cloned()).unwrap_or_else(G::zero)
    }

    /// Re-express every coefficient in the requested normalization.
    pub fn in_convention(&self, target: HbarConvention) -> LaxExpansion {
        if target == self.convention {
            return self.clone();
        }
        // AppendixB → Section3 multiplies ħᵏ coefficients by iᵏ; the inverse by (−i)ᵏ.
        let dir = if target == HbarConvention::Section3 { 1 } else { -1 };
        let f = |k: i64| G::i_pow(dir * k);
        let z_coeffs = self
            .z_coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
            .collect();
        let y_coeffs = self.y_coeffs.iter().enumerate().map(|(k, c)| c.clone() * f(k as i64)).collect();
        let u_log_coeffs =
            self.u_log_coeffs.iter().enumerate().map(|(k, c)| c.clone() * f(2 * k as i64 - 1)).collect();
        let c_coeffs = self.c_coeffs.iter().enumerate().map(|(k, c)| c.clone() * f(k as i64)).collect();
        let d_coeffs =
            self.d_coeffs.iter().enumerate().map(|(k, c)| c.clone() * f(k as i64 - 1)).collect();
        LaxExpansion { convention: target, order: self.order, z_coeffs, y_coeffs, u_log_coeffs, c_coeffs, d_coeffs }
    }
}

struct Series {
    z: QSeries,
    z1: QSeries,
    y: QSeries,
    uq: QSeries,
    c: QSeries,
    dq: QSeries,
}

fn g(r: Rational) -> G {
    G::from(r)
}

fn build(order: usize) -> Series {
    let n = order + 3;
    let sigma = sigma_coeffs(n / 2 + 1);
    let mut z = vec![G::zero(); n];
    let mut z1 = vec![G::zero(); n];
    for k in 0..=(n - 1) / 2 {
        let kk = k as i64;
        let zk = -qi(2 - 2 * kk) * sigma.get(k);
        z1[2 * k] = g(qi(1 - 2 * kk) * &zk);
        z[2 * k] = g(zk);
    }
    let z = QSeries::new(z, n);
    let z1 = QSeries::new(z1, n);
    let i = G::i();
    let one = QSeries::constant(G::one(), n);
    // y − 1/y = W = i q Z₁ / Z², branch y₀ = −1
    let w = z1.mul(&z.mul(&z).inv()).shift(1).scale(&i);
    let disc = w.mul(&w).add(&QSeries::constant(G::from_i64(4), n));
    let root = disc.sqrt_with(G::from_i64(2));
    let y = w.sub(&root).scale(&G::from(p5_algebra::q(1, 2)));
    let ym1 = y.sub(&one);
    let yinv = y.inv();
    let ym1sq_over_y = ym1.mul(&ym1).mul(&yinv);
    // q·U = −i Z (y−1)²/y
    let uq = z.mul(&ym1sq_over_y).scale(&-i.clone());
    let c = z.mul(&z).mul(&ym1sq_over_y);
    // q·D = q·U + q (Z₁/Z − q y'/(y−1) − 1)
    let rest = z1.mul(&z.inv()).sub(&y.q_deriv().mul(&ym1.inv())).sub(&one);
    let dq = uq.add(&rest.shift(1));
    Series { z, z1, y, uq, c, dq }
}

/// z, y, log u, μν and μ̇/μ through ħ^order in the Appendix-B normalization.
pub fn lax_expansions(order: usize) -> LaxExpansion {
    let s = build(order);
    let re = |x: &G| {
        debug_assert!(x.is_real());
        x.re.clone()
    };
    LaxExpansion {
        convention: HbarConvention::AppendixB,
        order,
        z_coeffs: (0..=order / 2).map(|k| re(&s.z.coeff(2 * k))).collect(),
        y_coeffs: (0..=order).map(|k| s.y.coeff(k)).collect(),
        u_log_coeffs: (0..=(order + 1) / 2).map(|k| s.uq.coeff(2 * k)).collect(),
        c_coeffs: (0..=order).map(|k| s.c.coeff(k)).collect(),
        d_coeffs: (0..=order + 1).map(|k| s.dq.coeff(k)).collect(),
    }
}

/// (Cₙ, Dₙ) through ħ^order; the D list starts at D₋₁.
pub fn cd_coeffs(order: usize) -> (Vec<G>, Vec<G>) {
    let l = lax_expansions(order);
    (l.c_coeffs, l.d_coeffs)
}

/// Order-by-order residuals of the θ = 0 Lax system and of the σ link.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LaxResidual {
    pub order: usize,
    pub y_equation: bool,
    pub z_equation: bool,
    pub sigma_link: bool,
    pub sigma_derivative: bool,
}

impl LaxResidual {
    pub fn all(&self) -> bool {
        self.y_equation && self.z_equation && self.sigma_link && self.sigma_derivative
    }
}

/// Checks, through q^order:
/// −i q² y' = y − 2Z(y−1)², i q Z₁ = Z²(y − 1/y),
/// σ = −2z² − t z + y z² + z²/y, and zₖ = −(2−2k)σₖ.
pub fn lax_residual(order: usize) -> LaxResidual {
    let s = build(order);
    let n = order + 1;
    let i = G::i();
    let one = QSeries::constant(G::one(), s.y.len());
    let ym1 = s.y.sub(&one);
    let lhs_y = s.y.q_deriv().shift(1).scale(&-i.clone());
    let rhs_y = s.y.sub(&s.z.mul(&ym1).mul(&ym1).scale(&G::from_i64(2)));
    let lhs_z = s.z1.shift(1).scale(&i);
    let rhs_z = s.z.mul(&s.z).mul(&s.y.sub(&s.y.inv()));
    let sigma = sigma_coeffs(n / 2 + 1);
    let z2 = s.z.mul(&s.z);
    let link = z2
        .scale(&G::from_i64(-2))
        .sub(&s.z)
        .add(&z2.mul(&s.y))
        .add(&z2.mul(&s.y.inv()));
    let zero_through = |a: &QSeries, b: &QSeries| (0..n).all(|k| a.coeff(k) == b.coeff(k));
    let sigma_ok = (0..n).all(|k| {
        let expect = if k % 2 == 0 { g(sigma.get(k / 2).clone()) } else { G::zero() };
        link.coeff(k) == expect
    });
    let lax = lax_expansions(order);
    let deriv_ok = lax
        .z_coeffs
        .iter()
        .enumerate()
        .all(|(k, zk)| *zk == -qi(2 - 2 * k as i64) * sigma.get(k));
    LaxResidual {
        order,
        y_equation: zero_through(&lhs_y, &rhs_y),
        z_equation: zero_through(&lhs_z, &rhs_z),
        sigma_link: sigma_ok,
        sigma_derivative: deriv_ok,
    }
}
