use crate::error::WkbError;
use crate::kernel::{kernel_orders_from, Channel, KernelOrder, Tails};
use crate::orders::{wkb_orders, WkbOrders};
use crate::zhukovsky::*;
use num_traits::Zero;
use p5_algebra::{q, qi, GRatFun, Rational};
use p5_sigma::HbarConvention;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Sample tuples; an n-point function uses the first n entries of each.
pub fn default_sample_points() -> Vec<Vec<Rational>> {
    vec![
        vec![qi(3), qi(5), qi(11), qi(13), qi(17)],
        vec![qi(7), qi(2), qi(-3), qi(6), qi(-10)],
        vec![qi(-4), qi(9), qi(5), qi(-7), qi(8)],
    ]
}

/// Extra generic tuples used only for vanishing checks.
pub fn generic_points() -> Vec<Vec<Rational>> {
    vec![
        vec![q(2, 3), q(-5, 2), q(7, 4), q(13, 5), q(-19, 6)],
        vec![q(-9, 7), q(4, 9), q(17, 3), q(-11, 6), q(23, 8)],
    ]
}

/// Every n-cycle of {0..n−1}, written starting from 0.
pub fn n_cycles(n: usize) -> Vec<Vec<usize>> {
    fn perms(rest: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            let mut c = vec![0];
            c.extend_from_slice(rest);
            out.push(c);
            return;
        }
        for j in k..rest.len() {
            rest.swap(k, j);
            perms(rest, k + 1, out);
            rest.swap(k, j);
        }
    }
    let mut out = Vec::new();
    perms(&mut (1..n).collect(), 0, &mut out);
    out.sort();
    out
}

fn edges(cycle: &[usize]) -> Vec<(usize, usize)> {
    (0..cycle.len()).map(|i| (cycle[i], cycle[(i + 1) % cycle.len()])).collect()
}

/// Symbolic cancellation checks of one cycle.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CycleCheck {
    pub cycle: Vec<usize>,
    /// Σ over edges of ψ₋₁(ξₐ) − ψ₋₁(ξ_b) vanishes as a formal sum.
    pub exponential_cancels: bool,
    /// Every channel assignment leaves integer exponents on every variable.
    pub half_exponents_cancel: bool,
}

fn check_cycle(n: usize, cycle: &[usize]) -> CycleCheck {
    let mut ex = vec![0i64; n];
    for (a, b) in edges(cycle) {
        ex[a] += 1;
        ex[b] -= 1;
    }
    let half = channel_assignments(n).iter().all(|chs| {
        let es = edges(cycle);
        (0..n).all(|v| {
            let out = es.iter().position(|e| e.0 == v).unwrap();
            let inc = es.iter().position(|e| e.1 == v).unwrap();
            chs[out].prefactor().mul(&chs[inc].prefactor()).is_rational()
        })
    });
    CycleCheck { cycle: cycle.to_vec(), exponential_cancels: ex.iter().all(|&e| e == 0), half_exponents_cancel: half }
}

fn channel_assignments(n: usize) -> Vec<Vec<Channel>> {
    (0..1usize << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 0 { Channel::Psi } else { Channel::Phi }).collect())
        .collect()
}

/// Determinantal n-point function through ħ^M, in the Appendix-B normalization
/// with q = ħ/t and t = 1.
#[derive(Clone, Debug)]
pub struct DetCorrelator {
    pub n: usize,
    pub depth: usize,
    pub convention: HbarConvention,
    /// W₁ coefficients of q^m, m = −1..=M (n = 1 only).
    pub one_point: Option<Vec<GRatFun>>,
    pub cycles: Vec<CycleCheck>,
    /// Coefficients at each sample tuple, keyed by the exponent of q.
    pub hbar_orders: BTreeMap<i64, Vec<G>>,
    pub sample_points: Vec<Vec<Rational>>,
    pub leading_exponent: Option<i64>,
    tails: Tails,
    kernels: Vec<KernelOrder>,
    wkb: WkbOrders,
}

impl DetCorrelator {
    /// Only exponents m ≡ n (mod 2) survive.
    pub fn parity_holds(&self) -> bool {
        self.hbar_orders.iter().all(|(m, v)| (m - self.n as i64).rem_euclid(2) == 0 || v.iter().all(Zero::is_zero))
    }

    pub fn leading_order_holds(&self) -> bool {
        self.leading_exponent.is_none_or(|m| m >= self.n as i64 - 2)
    }

    /// Exact ħ-series at a point: exponent → coefficient.
    pub fn eval(&self, zs: &[Rational]) -> Result<BTreeMap<i64, G>, WkbError> {
        if let Some(w1) = &self.one_point {
            let z = g(zs[0].clone());
            return w1
                .iter()
                .enumerate()
                .map(|(k, f)| Ok((k as i64 - 1, f.eval(&z)?)))
                .collect();
        }
        Ok(self.eval_cycles(&zs[..self.n]))
    }

    fn eval_cycles(&self, zs: &[Rational]) -> BTreeMap<i64, G> {
        let n = self.n;
        let len = self.depth + 1;
        let zg: Vec<G> = zs.iter().cloned().map(g).collect();
        let ev = |fs: &[GRatFun], z: &G| -> Vec<G> { fs.iter().map(|f| f.eval(z).expect("regular point")).collect() };
        let e: Vec<Vec<G>> = zg.iter().map(|z| ev(&self.tails.e, z)).collect();
        let f: Vec<Vec<G>> = zg.iter().map(|z| ev(&self.tails.f, z)).collect();
        let mut series: HashMap<(usize, usize, Channel), Vec<G>> = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for c in Channel::BOTH {
                    let s = (0..len)
                        .map(|k| {
                            (0..=k).fold(G::zero(), |acc, i| {
                                let j = k - i;
                                acc + match c {
                                    Channel::Psi => e[a][i].clone() * e[b][j].clone() * sign(j),
                                    Channel::Phi => f[a][i].clone() * f[b][j].clone() * sign(i),
                                }
                            })
                        })
                        .collect();
                    series.insert((a, b, c), s);
                }
            }
        }
        let mut pref: HashMap<(usize, Channel, Channel), G> = HashMap::new();
        for (v, z) in zg.iter().enumerate() {
            for c1 in Channel::BOTH {
                for c2 in Channel::BOTH {
                    let t = c1.prefactor().mul(&c2.prefactor()).collapse().expect("integer exponents");
                    pref.insert((v, c1, c2), t.eval(z).expect("regular point"));
                }
            }
        }
        let xis: Vec<Rational> = zs.iter().map(xi_at).collect();
        let mut total = vec![G::zero(); len];
        for cycle in n_cycles(n) {
            let es = edges(&cycle);
            let den = es.iter().fold(qi(1), |acc, (a, b)| acc * (&xis[*a] - &xis[*b]));
            for chs in channel_assignments(n) {
                let mut coeff = g(den.recip());
                for (c, _) in chs.iter().zip(&es) {
                    coeff = coeff * gi(c.sign());
                }
                for v in 0..n {
                    let out = es.iter().position(|e| e.0 == v).unwrap();
                    let inc = es.iter().position(|e| e.1 == v).unwrap();
                    coeff = coeff * pref[&(v, chs[out], chs[inc])].clone();
                }
                let mut prod = vec![G::zero(); len];
                prod[0] = coeff;
                for (c, (a, b)) in chs.iter().zip(&es) {
                    prod = trunc_mul(&prod, &series[&(*a, *b, *c)]);
                }
                for (t, p) in total.iter_mut().zip(prod) {
                    *t = t.clone() + p;
                }
            }
        }
        let s = if n % 2 == 1 { gi(1) } else { gi(-1) };
        let mut out: BTreeMap<i64, G> =
            total.into_iter().enumerate().map(|(m, v)| (m as i64, v * s.clone())).collect();
        if n == 2 {
            let d = &xis[0] - &xis[1];
            let e0 = out.get_mut(&0).unwrap();
            *e0 = e0.clone() - g((&d * &d).recip());
        }
        out
    }

    pub fn kernels(&self) -> &[KernelOrder] {
        &self.kernels
    }

    pub fn wkb(&self) -> &WkbOrders {
        &self.wkb
    }
}

fn sign(k: usize) -> G {
    if k % 2 == 0 {
        gi(1)
    } else {
        gi(-1)
    }
}

fn trunc_mul(a: &[G], b: &[G]) -> Vec<G> {
    (0..a.len()).map(|m| (0..=m).fold(G::zero(), |acc, j| acc + a[j].clone() * b[m - j].clone())).collect()
}

/// W₁ = ψ′φ̃ − ψ̃′φ = S′_ψ P − S′_ψ̃ Q with P = ψφ̃, Q = ψ̃φ.
fn one_point(w: &WkbOrders, tails: &Tails, depth: usize) -> Vec<GRatFun> {
    let sq = |p: Channel| p.prefactor().mul(&p.prefactor()).collapse().expect("integer exponents");
    let (e2psi, e2phi) = (sq(Channel::Psi), sq(Channel::Phi));
    let pq = |m: usize| -> (GRatFun, GRatFun) {
        let sum = |c: Channel| {
            tails.channel_terms(c, m).iter().fold(GRatFun::zero(), |acc, (a, b)| &acc + &(a * b))
        };
        (&e2psi * &sum(Channel::Psi), &e2phi * &sum(Channel::Phi))
    };
    let pqs: Vec<(GRatFun, GRatFun)> = (0..=depth + 1).map(pq).collect();
    let lead = d_dxi(&w.psi.leading);
    let dpsi: Vec<GRatFun> = w.psi.orders.iter().map(d_dxi).collect();
    let dpsit: Vec<GRatFun> = w.psi_tilde.orders.iter().map(d_dxi).collect();
    (0..=depth + 1)
        .map(|idx| {
            let m = idx as i64 - 1;
            let (p1, q1) = &pqs[idx];
            let mut acc = &lead * &(p1 - q1);
            if m >= 0 {
                let m = m as usize;
                let (p, qq) = &pqs[m];
                acc = &acc + &(&(&w.psi.zero_order_log_derivative * p) - &(&w.psi_tilde.zero_order_log_derivative * qq));
                for k in 1..=m {
                    let (p, qq) = &pqs[m - k];
                    acc = &acc + &(&(&dpsi[k - 1] * p) - &(&dpsit[k - 1] * qq));
                }
            }
            acc
        })
        .collect()
}

/// Wₙ = −δₙ₂/(ξ₁−ξ₂)² + (−1)^{n+1} Σ_{n-cycles τ} Πᵢ K(ξᵢ, ξ_τ(i)), through q^M.
pub fn det_correlator(n: usize, depth: usize) -> Result<DetCorrelator, WkbError> {
    det_correlator_at(n, depth, &default_sample_points())
}

pub fn det_correlator_at(n: usize, depth: usize, samples: &[Vec<Rational>]) -> Result<DetCorrelator, WkbError> {
    assert!(n >= 1);
    let w = wkb_orders(depth + 1)?;
    let tails = Tails::new(&w, depth + 2);
    let kernels = kernel_orders_from(&tails, depth)?;
    let cycles: Vec<CycleCheck> = if n >= 2 { n_cycles(n).iter().map(|c| check_cycle(n, c)).collect() } else { vec![] };
    for c in &cycles {
        if !c.exponential_cancels {
            return Err(WkbError::Cycle { n, cycle: c.cycle.clone(), what: "exponential prefactors survive".into() });
        }
        if !c.half_exponents_cancel {
            return Err(WkbError::Cycle { n, cycle: c.cycle.clone(), what: "half-integer exponents survive".into() });
        }
    }
    let mut det = DetCorrelator {
        n,
        depth,
        convention: HbarConvention::AppendixB,
        one_point: (n == 1).then(|| one_point(&w, &tails, depth)),
        cycles,
        hbar_orders: BTreeMap::new(),
        sample_points: samples.iter().map(|p| p[..n].to_vec()).collect(),
        leading_exponent: None,
        tails,
        kernels,
        wkb: w,
    };
    let mut all: BTreeMap<i64, Vec<G>> = BTreeMap::new();
    for pts in samples.iter().chain(generic_points().iter()) {
        for (m, v) in det.eval(&pts[..n])? {
            all.entry(m).or_default().push(v);
        }
    }
    for (m, v) in &all {
        let wrong_parity = (m - n as i64).rem_euclid(2) != 0;
        let below = *m < n as i64 - 2;
        if (wrong_parity || below) && v.iter().any(|x| !x.is_zero()) {
            let what = if wrong_parity { "wrong-parity coefficient survives" } else { "coefficient below ħ^(n−2) survives" };
            return Err(WkbError::Series { n, m: *m, what: what.into() });
        }
    }
    det.leading_exponent = all.iter().find(|(_, v)| v.iter().any(|x| !x.is_zero())).map(|(m, _)| *m);
    det.hbar_orders = all.into_iter().map(|(m, v)| (m, v[..samples.len()].to_vec())).collect();
    Ok(det)
}

/// ψ′₋₁ = −(i/2)(z²+1)/(z²−1), the leading coefficient of W₁.
pub fn spectral_root() -> GRatFun {
    rf(poly(&[1, 0, 1]), poly(&[-1, 0, 1])).scale(&(-(i() * half())))
}
