use crate::orders::WkbOrders;
use crate::zhukovsky::*;
use p5_algebra::{q, GRatFun};
use serde::Serialize;

/// Comparison of the first WKB orders with their closed forms in ξ and √(ξ(ξ−1)).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormReport {
    pub psi_minus_one: bool,
    pub psi_zero: bool,
    pub psi_one: bool,
    pub psi_two: bool,
    /// t-route and ξ-route agree for every computed order.
    pub routes_agree: bool,
    pub all: bool,
}

pub fn closed_forms(w: &WkbOrders) -> ClosedFormReport {
    let c = GRatFun::constant;
    let x = xi();
    let sq = sqrt_xi();
    let two_xi_m1 = &x.scale(&gi(2)) - &c(gi(1));
    // ψ₋₁ = −i/4 − (i/2)√(ξ(ξ−1))
    let m1 = &c(-(i() * g(q(1, 4)))) - &sq.scale(&(i() * half()));
    // ψ₀′ = d/dξ [−¼ ln(ξ(ξ−1)) + ½ ln(ξ − ½ + √(ξ(ξ−1)))]
    let dsq = &two_xi_m1 / &sq.scale(&gi(2));
    let a = (&two_xi_m1 / &(&x * &(&x - &c(gi(1))))).scale(&g(q(-1, 4)));
    let b = (&(&c(gi(1)) + &dsq) / &(&(&x - &c(half())) + &sq)).scale(&half());
    let zero = &a + &b;
    // ψ₁ = i/(4√(ξ(ξ−1)))
    let one = &c(i() * g(q(1, 4))) / &sq;
    // ψ₂ = −(2ξ−1)(2ξ−1−2√(ξ(ξ−1)))/(4ξ(ξ−1))
    let num = &two_xi_m1 * &(&two_xi_m1 - &sq.scale(&gi(2)));
    let den = (&x * &(&x - &c(gi(1)))).scale(&gi(4));
    let two = -(&num / &den);
    let psi_minus_one = w.psi.leading == m1;
    let psi_zero = w.psi.zero_order_log_derivative == zero && w.xi_route.get(1) == Some(&zero);
    let psi_one = w.depth >= 1 && *w.psi.order(1) == one;
    let psi_two = w.depth >= 2 && *w.psi.order(2) == two;
    let routes_agree = (1..=w.depth).all(|k| d_dxi(w.psi.order(k)) == w.xi_route[k + 1]);
    ClosedFormReport {
        psi_minus_one,
        psi_zero,
        psi_one,
        psi_two,
        routes_agree,
        all: psi_minus_one && psi_zero && psi_one && psi_two && routes_agree,
    }
}
