use crate::mpoly::MPoly;
use num_traits::Zero;
use p5_algebra::{q, qi, Rational};
use serde::Serialize;

/// Variable order of every polynomial in this module.
pub const CHAR_POLY_VARS: [&str; 4] = ["t", "z", "y", "u"];

type P = MPoly<Rational>;

fn var(i: usize) -> P {
    P::var(4, i)
}

fn c(x: Rational) -> P {
    P::constant(4, x)
}

fn t() -> P {
    var(0)
}
fn z() -> P {
    var(1)
}
fn y() -> P {
    var(2)
}
fn u() -> P {
    var(3)
}
fn y_inv() -> P {
    P::var_pow(4, 2, -1)
}
fn u_inv() -> P {
    P::var_pow(4, 3, -1)
}

/// Partial-fraction data of 𝒟 = (t/2)σ₃ + A₀/ξ + A₁/(ξ−1).
#[derive(Clone, Debug)]
pub struct LaxResidues {
    pub a0: [P; 3],
    pub a1: [P; 3],
}

impl LaxResidues {
    /// Diagonal, upper and lower entries of A₀ and A₁.
    pub fn new(th0: &Rational, th1: &Rational, thi: &Rational) -> Self {
        let h = q(1, 2);
        let z = z();
        let a0 = [
            &z + &c(th0 * &h),
            -&(&u() * &(&z + &c(th0.clone()))),
            &z * &u_inv(),
        ];
        let a1 = [
            -&(&z + &c((th0 + thi) * &h)),
            &(&u() * &y()) * &(&z + &c((th0 - th1 + thi) * &h)),
            -&(&(&u_inv() * &y_inv()) * &(&z + &c((th0 + th1 + thi) * &h))),
        ];
        LaxResidues { a0, a1 }
    }
}

/// Coefficients of π²Y² = α₀ + α₁/ξ² + α₂/(ξ−1)² + α₃/ξ + α₄/(ξ−1) as
/// polynomials in t, z, y^±1, u^±1.
///
/// The right-hand side equals det 𝒟, so the relation is the characteristic
/// equation of (i/π)𝒟.
#[derive(Clone, Debug)]
pub struct LaxCharPoly {
    pub theta: [Rational; 3],
    pub alpha: [P; 5],
}

/// The five coefficients in closed form.
pub fn printed_alphas(th0: &Rational, th1: &Rational, thi: &Rational) -> [P; 5] {
    let h = q(1, 2);
    let z = z();
    let zp = &z + &c((th0 - th1 + thi) * &h);
    let zq = &z + &c((th0 + th1 + thi) * &h);
    let z0 = &z + &c(th0.clone());
    let alpha3 = &(&(-&(&z + &c(th0 * &h))) * &(&(&t() + &z.scale(&qi(2))) + &c(th0 + thi)))
        + &(&(&(&z0 * &y_inv()) * &zq) + &(&(&z * &y()) * &zp));
    let alpha4 = &(&(&z.scale(&qi(2)) + &c(th0 + thi)) * &(&(&z + &t().scale(&h)) + &c(th0 * &h)))
        - &(&(&(&y() * &z) * &zp) + &(&(&z0 * &y_inv()) * &zq));
    [
        (&t() * &t()).scale(&q(-1, 4)),
        c(-(th0 * th0) * q(1, 4)),
        c(-(th1 * th1) * q(1, 4)),
        alpha3,
        alpha4,
    ]
}

/// Partial fractions of det 𝒟.
fn det_alphas(r: &LaxResidues) -> [P; 5] {
    let half_t = t().scale(&q(1, 2));
    let [a0, b0, c0] = &r.a0;
    let [a1, b1, c1] = &r.a1;
    // 1/(ξ(ξ−1)) = 1/(ξ−1) − 1/ξ
    let cross = &(&(a0 * a1).scale(&qi(2)) + &(b0 * c1)) + &(b1 * c0);
    let sq = |a: &P, b: &P, c: &P| &(a * a) + &(b * c);
    [
        -&(&half_t * &half_t),
        -&sq(a0, b0, c0),
        -&sq(a1, b1, c1),
        &cross - &(&half_t * a0).scale(&qi(2)),
        -&(&cross + &(&half_t * a1).scale(&qi(2))),
    ]
}

/// Characteristic-polynomial coefficients of the Lax matrix 𝒟(t, ξ).
///
/// The coefficients are computed as the partial fractions of det 𝒟 and
/// compared against the closed forms; the sum α₃ + α₄ = θ∞t/2 is asserted.
pub fn lax_char_poly(th0: Rational, th1: Rational, thi: Rational) -> LaxCharPoly {
    let r = LaxResidues::new(&th0, &th1, &thi);
    let alpha = det_alphas(&r);
    let printed = printed_alphas(&th0, &th1, &thi);
    for (k, (a, b)) in alpha.iter().zip(&printed).enumerate() {
        assert!(a == b, "alpha_{k}: det {} vs closed form {}", a.render(&CHAR_POLY_VARS), b.render(&CHAR_POLY_VARS));
    }
    let out = LaxCharPoly { theta: [th0, th1, thi], alpha };
    assert!(out.alpha34_identity(), "alpha_3 + alpha_4 != theta_inf t / 2");
    out
}

impl LaxCharPoly {
    pub fn alpha34(&self) -> P {
        &self.alpha[3] + &self.alpha[4]
    }

    pub fn alpha34_identity(&self) -> bool {
        self.alpha34() == t().scale(&(&self.theta[2] * q(1, 2)))
    }

    /// Exact value of αₖ at (t, z, y, u).
    pub fn eval(&self, k: usize, point: [Rational; 4]) -> Rational {
        self.alpha[k].eval(&point)
    }

    pub fn rendered(&self) -> CharPolyReport {
        CharPolyReport {
            theta: self.theta.iter().map(p5_algebra::rational_to_string).collect(),
            variables: CHAR_POLY_VARS.iter().map(|s| s.to_string()).collect(),
            alpha: self.alpha.iter().map(|a| a.render(&CHAR_POLY_VARS)).collect(),
            alpha34_identity: self.alpha34_identity(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharPolyReport {
    pub theta: Vec<String>,
    pub variables: Vec<String>,
    pub alpha: Vec<String>,
    pub alpha34_identity: bool,
}

/// σ = −2z² − tz + yz² + z²/y at vanishing monodromies.
pub fn reduced_sigma() -> P {
    let z2 = &z() * &z();
    &(&z2.scale(&qi(-2)) - &(&t() * &z())) + &(&(&y() * &z2) + &(&z2 * &y_inv()))
}

/// At θ = 0: α₀ = −t²/4, α₁ = α₂ = 0, α₃ = σ, α₄ = −σ.
pub fn vanishing_monodromy_reduction() -> bool {
    let cp = lax_char_poly(Rational::zero(), Rational::zero(), Rational::zero());
    let s = reduced_sigma();
    cp.alpha[0] == (&t() * &t()).scale(&q(-1, 4))
        && cp.alpha[1].is_zero()
        && cp.alpha[2].is_zero()
        && cp.alpha[3] == s
        && cp.alpha[4] == -&s
}
