use crate::error::WkbError;
use crate::zhukovsky::*;
use num_traits::Zero;
use p5_algebra::{AlgebraicTerm, Field, GRatFun, Rational};
use p5_sigma::{lax_expansions, HbarConvention, LaxExpansion};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Which {
    Psi,
    Phi,
    PsiTilde,
    PhiTilde,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::Psi, Which::Phi, Which::PsiTilde, Which::PhiTilde];
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Psi => "psi",
            Which::Phi => "phi",
            Which::PsiTilde => "psi~",
            Which::PhiTilde => "phi~",
        })
    }
}

/// Additive constants of the order-0 terms.
///
/// `Normalized` makes det Ψ = 1: e^{ψ₀} = z(z²−1)^(−1/2), e^{φ₀} = (z²−1)^(−1/2).
/// `Printed` uses ½ln2 + iπ/2 and ½ln2 + iπ on top of the logarithms, which
/// gives e^{ψ₀} = 2iz(z²−1)^(−1/2), e^{φ₀} = −2(z²−1)^(−1/2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ZeroOrderConstants {
    #[default]
    Normalized,
    Printed,
}

/// e^{order 0} as a monomial in z, z−1, z+1.
pub fn zero_order_prefactor(which: Which, constants: ZeroOrderConstants) -> AlgebraicTerm {
    let psi_like = matches!(which, Which::Psi | Which::PhiTilde);
    let coeff = match (constants, psi_like) {
        (ZeroOrderConstants::Normalized, _) => one(),
        (ZeroOrderConstants::Printed, true) => i() * gi(2),
        (ZeroOrderConstants::Printed, false) => gi(-2),
    };
    let ez = if psi_like { 2 } else { 0 };
    AlgebraicTerm::new(coeff, (ez, -1, -1), GRatFun::one())
}

/// One WKB wave function, with t = 1; order k carries t^(−k).
#[derive(Clone, Debug, PartialEq)]
pub struct WkbFunction {
    pub which: Which,
    pub convention: HbarConvention,
    /// Order −1.
    pub leading: GRatFun,
    /// d/dξ of order 0.
    pub zero_order_log_derivative: GRatFun,
    /// orders[k−1] is order k.
    pub orders: Vec<GRatFun>,
}

impl WkbFunction {
    pub fn order(&self, k: usize) -> &GRatFun {
        &self.orders[k - 1]
    }

    pub fn depth(&self) -> usize {
        self.orders.len()
    }

    pub fn prefactor(&self, constants: ZeroOrderConstants) -> AlgebraicTerm {
        zero_order_prefactor(self.which, constants)
    }

    /// Re-express in another normalization of ħ; order k picks up iᵏ.
    pub fn in_convention(&self, target: HbarConvention) -> WkbFunction {
        if target == self.convention {
            return self.clone();
        }
        let dir = if target == HbarConvention::Section3 { 1 } else { -1 };
        let f = |k: i64, r: &GRatFun| r.scale(&G::i_pow(dir * k));
        WkbFunction {
            which: self.which,
            convention: target,
            leading: f(-1, &self.leading),
            zero_order_log_derivative: self.zero_order_log_derivative.clone(),
            orders: self.orders.iter().enumerate().map(|(k, r)| f(k as i64 + 1, r)).collect(),
        }
    }
}

/// ψ, φ, ψ̃, φ̃ through order K together with the ξ-route derivatives.
#[derive(Clone, Debug)]
pub struct WkbOrders {
    pub depth: usize,
    pub psi: WkbFunction,
    pub phi: WkbFunction,
    pub psi_tilde: WkbFunction,
    pub phi_tilde: WkbFunction,
    /// d/dξ ψₖ for k = −1..=K from the ξ-equation.
    pub xi_route: Vec<GRatFun>,
}

impl WkbOrders {
    pub fn get(&self, which: Which) -> &WkbFunction {
        match which {
            Which::Psi => &self.psi,
            Which::Phi => &self.phi,
            Which::PsiTilde => &self.psi_tilde,
            Which::PhiTilde => &self.phi_tilde,
        }
    }
}

/// ψ₋₁ = −i/4 − (i/2)√(ξ(ξ−1))
pub fn psi_minus_one() -> GRatFun {
    &constant(-(i() * g(p5_algebra::q(1, 4)))) - &sqrt_xi().scale(&(i() * half()))
}

/// ψₖ, k = 1..=K, from the t-equation.
///
/// i(n−1)√ψₙ₋₁ = −(n−2)(n−1)ψₙ₋₂ − Σᵢ i(n−2−i)ψᵢψₙ₋₂₋ᵢ − Σₖ (n−2−k)Dₖψₙ₋₂₋ₖ
///               + Dₙ₋₁(ψ₋₁ + iξ/2) − Cₙ,   with ψ₋₁ + iξ/2 = i/(4z).
pub fn t_route(depth: usize, lax: &LaxExpansion) -> Vec<GRatFun> {
    let mut psi: Vec<GRatFun> = vec![GRatFun::zero()];
    let shifted = z_pow(-1).scale(&(i() * g(p5_algebra::q(1, 4))));
    let sq = sqrt_xi();
    for n in 2..=depth + 1 {
        let m = n - 2;
        let mut r = GRatFun::zero();
        if m >= 1 {
            r = &r - &psi[m].scale(&gi((m * (n - 1)) as i64));
        }
        for a in 1..m {
            r = &r - &(&psi[a] * &psi[m - a]).scale(&gi((a * (m - a)) as i64));
        }
        for k in 0..m {
            r = &r - &psi[m - k].scale(&(gi((m - k) as i64) * lax.d(k as i64)));
        }
        r = &(&r + &shifted.scale(&lax.d(n as i64 - 1))) - &constant(lax.c(n as i64));
        let den = sq.scale(&(i() * gi(n as i64 - 1)));
        psi.push(&r / &den);
    }
    psi.split_off(1)
}

type Series = Vec<GRatFun>;

fn ser_mul(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| (0..=m).fold(GRatFun::zero(), |acc, j| &acc + &(&a[j] * &b[m - j])))
        .collect()
}

fn ser_inv(a: &Series) -> Series {
    let inv0 = &GRatFun::one() / &a[0];
    let mut out = vec![inv0.clone()];
    for m in 1..a.len() {
        let s = (1..=m).fold(GRatFun::zero(), |acc, k| &acc + &(&a[k] * &out[m - k]));
        out.push(-(&inv0 * &s));
    }
    out
}

fn ser_d(a: &Series) -> Series {
    a.iter().map(d_dxi).collect()
}

fn const_inv(a: &[G]) -> Vec<G> {
    let inv0 = a[0].inv();
    let mut out = vec![inv0.clone()];
    for m in 1..a.len() {
        let s = (1..=m).fold(G::zero(), |acc, k| acc + a[k].clone() * out[m - k].clone());
        out.push(-(inv0.clone() * s));
    }
    out
}

/// d/dξ ψₖ for k = −1..=K from the ξ-equation
/// qT′ + T² − q(β′/β)T + iq(ᾱ′ − ᾱβ′/β) + ᾱ² + βγ̄ = 0, T = q S′, q = ħ/t.
pub fn xi_route(depth: usize, lax: &LaxExpansion) -> Result<Vec<GRatFun>, WkbError> {
    let n = depth + 2;
    let zc = |m: usize| -> G {
        if m % 2 == 0 {
            lax.z_coeffs.get(m / 2).cloned().map(g).unwrap_or_else(G::zero)
        } else {
            G::zero()
        }
    };
    let ys: Vec<G> = (0..n).map(|m| lax.y_coeffs.get(m).cloned().unwrap_or_else(G::zero)).collect();
    let yinv = const_inv(&ys);
    let diff = &inv_xi() - &inv_xi_m1();
    let z_ser: Series = (0..n).map(|m| constant(zc(m))).collect();
    let alpha: Series = (0..n)
        .map(|m| {
            let base = diff.scale(&zc(m));
            if m == 0 {
                &base + &constant(half())
            } else {
                base
            }
        })
        .collect();
    let beta: Series = (0..n)
        .map(|m| {
            let b = inv_xi_m1().scale(&ys[m]);
            if m == 0 {
                &b - &inv_xi()
            } else {
                b
            }
        })
        .collect();
    let gamma: Series = (0..n)
        .map(|m| {
            let c = -inv_xi_m1().scale(&yinv[m]);
            if m == 0 {
                &c + &inv_xi()
            } else {
                c
            }
        })
        .collect();
    let bg = ser_mul(&ser_mul(&z_ser, &z_ser), &ser_mul(&beta, &gamma));
    let blog = ser_mul(&ser_d(&beta), &ser_inv(&beta));
    let a1: Series = ser_d(&alpha).iter().zip(ser_mul(&alpha, &blog)).map(|(a, b)| a - &b).collect();
    let src: Series = ser_mul(&alpha, &alpha).iter().zip(&bg).map(|(a, b)| a + b).collect();
    let t0 = d_dxi(&psi_minus_one());
    if !(&(&t0 * &t0) + &src[0]).is_zero() {
        return Err(WkbError::RouteMismatch { k: -1 });
    }
    let two_t0 = t0.scale(&gi(2));
    let mut t = vec![t0];
    for m in 1..n {
        let mut acc = d_dxi(&t[m - 1]);
        for a in 1..m {
            acc = &acc + &(&t[a] * &t[m - a]);
        }
        for j in 0..m {
            acc = &acc - &(&blog[j] * &t[m - 1 - j]);
        }
        acc = &(&acc + &a1[m - 1].scale(&i())) + &src[m];
        t.push(-(&acc / &two_t0));
    }
    Ok(t)
}

/// d/dξ log(z(z²−1)^(−1/2)) = −4z/(z²−1)²
pub fn psi_zero_log_derivative() -> GRatFun {
    rf(poly(&[0, -4]), poly(&[-1, 0, 1]).pow(2))
}

/// d/dξ log((z²−1)^(−1/2)) = −4z³/(z²−1)²
pub fn phi_zero_log_derivative() -> GRatFun {
    rf(poly(&[0, 0, 0, -4]), poly(&[-1, 0, 1]).pow(2))
}

fn alternate(v: &[GRatFun]) -> Vec<GRatFun> {
    v.iter().enumerate().map(|(k, r)| if k % 2 == 0 { -r } else { r.clone() }).collect()
}

/// WKB orders of ψ, φ, ψ̃, φ̃ through K, derived from the t-equation and
/// checked against the ξ-equation order by order.
pub fn wkb_orders(depth: usize) -> Result<WkbOrders, WkbError> {
    let lax = lax_expansions(depth + 1);
    let psi = t_route(depth, &lax);
    let xi = xi_route(depth, &lax)?;
    if xi[1] != psi_zero_log_derivative() {
        return Err(WkbError::RouteMismatch { k: 0 });
    }
    for (k, f) in psi.iter().enumerate() {
        if d_dxi(f) != xi[k + 2] {
            return Err(WkbError::RouteMismatch { k: k as i64 + 1 });
        }
    }
    let phi: Vec<GRatFun> = psi.iter().map(GRatFun::substitute_inverse).collect();
    let l = psi_minus_one();
    let half_i = constant(i() * half());
    let conv = HbarConvention::AppendixB;
    let mk = |which, leading, zero, orders| WkbFunction {
        which,
        convention: conv,
        leading,
        zero_order_log_derivative: zero,
        orders,
    };
    Ok(WkbOrders {
        depth,
        psi: mk(Which::Psi, l.clone(), psi_zero_log_derivative(), psi.clone()),
        phi: mk(Which::Phi, &(-&l) - &half_i, phi_zero_log_derivative(), phi.clone()),
        psi_tilde: mk(Which::PsiTilde, &l + &half_i, phi_zero_log_derivative(), alternate(&phi)),
        phi_tilde: mk(Which::PhiTilde, -&l, psi_zero_log_derivative(), alternate(&psi)),
        xi_route: xi,
    })
}

/// ψ₋₁ + φ̃₋₁ = 0 and φ₋₁ + ψ̃₋₁ = 0.
pub fn leading_orders_cancel(w: &WkbOrders) -> bool {
    (&w.psi.leading + &w.phi_tilde.leading).is_zero() && (&w.phi.leading + &w.psi_tilde.leading).is_zero()
}

/// φ̃ₖ = (−1)ᵏψₖ and ψ̃ₖ = (−1)ᵏφₖ.
pub fn parity_relations_hold(w: &WkbOrders) -> bool {
    (1..=w.depth).all(|k| {
        let s = if k % 2 == 0 { gi(1) } else { gi(-1) };
        *w.phi_tilde.order(k) == w.psi.order(k).scale(&s) && *w.psi_tilde.order(k) == w.phi.order(k).scale(&s)
    })
}

/// Leading coefficient of det Ψ, (e^{2ψ₀} − e^{2φ₀}) as a function of z.
pub fn det_leading(constants: ZeroOrderConstants) -> Result<GRatFun, WkbError> {
    let sq = |w| {
        let p = zero_order_prefactor(w, constants);
        p.mul(&p).collapse()
    };
    Ok(&sq(Which::Psi)? - &sq(Which::Phi)?)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityReport {
    pub depth: usize,
    pub regular: bool,
    pub checked: usize,
    /// Numerator of ψ₂ vanishes at ξ = 1/2.
    pub psi2_numerator_vanishes_at_half: bool,
}

/// No order 1..=K of ψ, φ, ψ̃, φ̃ has (z²+1) in its denominator.
pub fn check_regularity(w: &WkbOrders) -> Result<RegularityReport, WkbError> {
    let mut checked = 0;
    for which in Which::ALL {
        for (k, f) in w.get(which).orders.iter().enumerate() {
            if singular_at_half(f) {
                return Err(WkbError::Singular { which: which.to_string(), k: k + 1 });
            }
            checked += 1;
        }
    }
    let vanishes = w.depth >= 2 && {
        let n = w.psi.order(2).numer();
        n.eval(&i()).is_zero() && n.eval(&-i()).is_zero()
    };
    Ok(RegularityReport { depth: w.depth, regular: true, checked, psi2_numerator_vanishes_at_half: vanishes })
}

/// Exponential tail: coefficients of exp(Σₖ fₖ (sign·q)ᵏ), k ≥ 1.
pub fn exp_tail(orders: &[GRatFun], sign: i64, len: usize) -> Vec<GRatFun> {
    let mut out = vec![GRatFun::one()];
    for m in 1..len {
        let mut acc = GRatFun::zero();
        for k in 1..=m.min(orders.len()) {
            let s = if sign < 0 && k % 2 == 1 { -(k as i64) } else { k as i64 };
            acc = &acc + &(&orders[k - 1] * &out[m - k]).scale(&gi(s));
        }
        out.push(acc.scale(&g(Rational::new(1.into(), (m as i64).into()))));
    }
    out
}
