//! Taylor-series integration of the σ-form in polynomial shape
//! S(σ″ + Sσ‴) + 4π²Su + 2Sσ′² + 4uσ′ = 0, u = Sσ′ − σ, S = c + h.

use crate::scalar::Scalar;
use crate::series::{horner, integrate_coeffs, small_s_coeffs};

/// (σ̂, σ̂′, σ̂″, log τ̂) at one point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Point<T> {
    pub s: T,
    pub sigma: T,
    pub p: T,
    pub q: T,
    pub log_tau: T,
}

pub(crate) fn series_point<T: Scalar>(s: T, order: usize) -> Point<T> {
    let a = small_s_coeffs::<T>(order);
    let d1: Vec<T> = (1..a.len()).map(|k| T::from_u(k) * a[k]).collect();
    let d2: Vec<T> = (1..d1.len()).map(|k| T::from_u(k) * d1[k]).collect();
    Point { s, sigma: horner(&a, s), p: horner(&d1, s), q: horner(&d2, s), log_tau: horner(&integrate_coeffs(&a), s) }
}

/// Taylor coefficients of σ and log τ about `pt`, through hᴺ.
fn coefficients<T: Scalar>(pt: &Point<T>, n_max: usize) -> (Vec<T>, Vec<T>) {
    let c = pt.s;
    let c2 = c * c;
    let two = T::from_u(2);
    let four = T::from_u(4);
    let four_pi2 = four * T::pi() * T::pi();
    let mut b = vec![T::zero(); n_max + 1];
    b[0] = pt.sigma;
    b[1] = pt.p;
    b[2] = pt.q / two;
    let mut p: Vec<T> = Vec::with_capacity(n_max);
    let mut q: Vec<T> = Vec::with_capacity(n_max);
    let mut r: Vec<T> = Vec::with_capacity(n_max);
    let mut u: Vec<T> = Vec::with_capacity(n_max);
    let mut pp: Vec<T> = Vec::with_capacity(n_max);
    let mut up: Vec<T> = Vec::with_capacity(n_max);
    let prev = |v: &[T], n: usize, back: usize| if n >= back { v[n - back] } else { T::zero() };
    for n in 0..=n_max.saturating_sub(3) {
        p.push(T::from_u(n + 1) * b[n + 1]);
        q.push(T::from_u((n + 1) * (n + 2)) * b[n + 2]);
        u.push(c * p[n] + prev(&p, n, 1) - b[n]);
        pp.push((0..=n).fold(T::zero(), |acc, i| acc + p[i] * p[n - i]));
        up.push((0..=n).fold(T::zero(), |acc, i| acc + u[i] * p[n - i]));
        let sq = c * q[n] + prev(&q, n, 1);
        let su = c * u[n] + prev(&u, n, 1);
        let spp = c * pp[n] + prev(&pp, n, 1);
        let known_r = two * c * prev(&r, n, 1) + prev(&r, n, 2);
        let rn = -(sq + known_r + four_pi2 * su + two * spp + four * up[n]) / c2;
        r.push(rn);
        b[n + 3] = rn / T::from_u((n + 1) * (n + 2) * (n + 3));
    }
    // (S L′)ₙ = σₙ
    let mut l = vec![T::zero(); n_max + 1];
    l[0] = pt.log_tau;
    for n in 0..n_max {
        l[n + 1] = (b[n] - T::from_u(n) * l[n]) / (c * T::from_u(n + 1));
    }
    (b, l)
}

fn radius<T: Scalar>(b: &[T]) -> f64 {
    let scale = b[0].abs().f64().max(1.0);
    let n = b.len() - 1;
    [n - 1, n]
        .iter()
        .map(|&k| {
            let m = b[k].abs().f64();
            if m == 0.0 {
                f64::INFINITY
            } else {
                (scale / m).powf(1.0 / k as f64)
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn advance<T: Scalar>(b: &[T], l: &[T], pt: &Point<T>, h: T) -> Point<T> {
    let d1: Vec<T> = (1..b.len()).map(|k| T::from_u(k) * b[k]).collect();
    let d2: Vec<T> = (1..d1.len()).map(|k| T::from_u(k) * d1[k]).collect();
    Point { s: pt.s + h, sigma: horner(b, h), p: horner(&d1, h), q: horner(&d2, h), log_tau: horner(l, h) }
}

/// Steps from `pt` to `target` with order-`n` Taylor polynomials; the step is
/// tol^{1/n} times the estimated radius of convergence, capped at s/2.
/// Returns the end point and the number of steps.
pub(crate) fn integrate_to<T: Scalar>(mut pt: Point<T>, target: T, n: usize, tol: f64) -> Result<(Point<T>, usize), f64> {
    let shrink = tol.powf(1.0 / n as f64);
    let mut steps = 0;
    while pt.s < target {
        let (b, l) = coefficients(&pt, n);
        let rho = radius(&b).min(pt.s.f64());
        let rem = (target - pt.s).f64();
        let h = 0.5 * shrink * rho;
        if !(h.is_finite() && h > 1e-14 * pt.s.f64()) {
            return Err(pt.s.f64());
        }
        let last = h >= rem * (1.0 - 1e-9);
        let h = if last { target - pt.s } else { T::from_f(h) };
        pt = advance(&b, &l, &pt, h);
        if last {
            pt.s = target;
        }
        steps += 1;
    }
    Ok((pt, steps))
}
