use crate::error::WkbError;
use crate::mpoly::MPoly;
use crate::orders::{exp_tail, wkb_orders, zero_order_prefactor, Which, WkbOrders, ZeroOrderConstants};
use crate::zhukovsky::*;
use p5_algebra::{AlgebraicTerm, Field, GRatFun, Poly, Rational};

/// The two products entering the kernel numerator: ψ(ξ₁)φ̃(ξ₂) and ψ̃(ξ₁)φ(ξ₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Psi,
    Phi,
}

impl Channel {
    pub const BOTH: [Channel; 2] = [Channel::Psi, Channel::Phi];

    pub fn sign(self) -> i64 {
        match self {
            Channel::Psi => 1,
            Channel::Phi => -1,
        }
    }

    /// e^{order 0} carried by each argument.
    pub fn prefactor(self) -> AlgebraicTerm {
        let w = match self {
            Channel::Psi => Which::Psi,
            Channel::Phi => Which::PsiTilde,
        };
        zero_order_prefactor(w, ZeroOrderConstants::Normalized)
    }
}

/// Regular parts of the WKB tails: E = exp(Σ ψₖqᵏ), F = exp(Σ φₖqᵏ).
#[derive(Clone, Debug)]
pub struct Tails {
    pub e: Vec<GRatFun>,
    pub f: Vec<GRatFun>,
}

impl Tails {
    pub fn new(w: &WkbOrders, len: usize) -> Self {
        Tails { e: exp_tail(&w.psi.orders, 1, len), f: exp_tail(&w.phi.orders, 1, len) }
    }

    /// Σ_{i+j=k} (−1)ʲ Eᵢ⊗Eⱼ for ψ, Σ (−1)ⁱ Fᵢ⊗Fⱼ for φ.
    pub fn channel_terms(&self, c: Channel, k: usize) -> Vec<(GRatFun, GRatFun)> {
        (0..=k)
            .map(|a| {
                let b = k - a;
                match c {
                    Channel::Psi => (self.e[a].clone(), self.e[b].scale(&sgn(b))),
                    Channel::Phi => (self.f[a].scale(&sgn(a)), self.f[b].clone()),
                }
            })
            .collect()
    }
}

fn sgn(k: usize) -> G {
    if k % 2 == 0 {
        gi(1)
    } else {
        gi(-1)
    }
}

/// Kₖ(ξ₁,ξ₂) = Mₖ(z₁,z₂) / ((ξ₁−ξ₂)√((z₁²−1)(z₂²−1))) with
/// Mₖ = z₁z₂ Σ(−1)ʲEᵢEⱼ − Σ(−1)ⁱFᵢFⱼ.
#[derive(Clone, Debug)]
pub struct KernelOrder {
    pub k: usize,
    pub psi_terms: Vec<(GRatFun, GRatFun)>,
    pub phi_terms: Vec<(GRatFun, GRatFun)>,
    /// Mₖ·(z₁²−1)ᵏ(z₂²−1)ᵏ
    pub numerator: MPoly<G>,
}

/// Value a/√r.
#[derive(Clone, Debug, PartialEq)]
pub struct RadicalValue {
    pub coeff: G,
    pub radicand: Rational,
}

fn cleared(f: &GRatFun, k: usize) -> Result<Poly<G>, String> {
    let p = f * &GRatFun::from_poly(poly(&[-1, 0, 1]).pow(k as u32));
    if p.denom().degree() != Some(0) {
        return Err(format!("denominator {} not a power of z²−1", f.denom()));
    }
    Ok(p.numer().scale(&p.denom().lead().inv()))
}

impl KernelOrder {
    pub fn build(k: usize, tails: &Tails) -> Result<Self, WkbError> {
        let psi_terms = tails.channel_terms(Channel::Psi, k);
        let phi_terms = tails.channel_terms(Channel::Phi, k);
        let err = |what| WkbError::Kernel { k, what };
        let z1z2 = MPoly::monomial(2, vec![1, 1], gi(1));
        let mut numerator = MPoly::zero(2);
        for (terms, c) in [(&psi_terms, Channel::Psi), (&phi_terms, Channel::Phi)] {
            let mut part = MPoly::zero(2);
            for (a, b) in terms {
                let pa = MPoly::from_poly(2, 0, &cleared(a, k).map_err(err)?);
                let pb = MPoly::from_poly(2, 1, &cleared(b, k).map_err(err)?);
                part = &part + &(&pa * &pb);
            }
            numerator = match c {
                Channel::Psi => &numerator + &(&z1z2 * &part),
                Channel::Phi => &numerator - &part,
            };
        }
        Ok(KernelOrder { k, psi_terms, phi_terms, numerator })
    }

    pub fn terms(&self, c: Channel) -> &[(GRatFun, GRatFun)] {
        match c {
            Channel::Psi => &self.psi_terms,
            Channel::Phi => &self.phi_terms,
        }
    }

    /// Kₖ(ξ₂,ξ₁) = (−1)^{k+1} Kₖ(ξ₁,ξ₂).
    pub fn has_exchange_parity(&self) -> bool {
        let s = sgn(self.k);
        self.numerator.swap(0, 1) == self.numerator.scale(&s)
    }

    /// Mₖ(z,z) = δₖ₀(z²−1): K₀ has residue 1 on the diagonal, higher
    /// orders are regular there.
    pub fn diagonal_is_regular(&self) -> bool {
        let d = self.numerator.identify(0, 1);
        let expect = if self.k == 0 {
            MPoly::from_poly(2, 0, &poly(&[-1, 0, 1]))
        } else {
            MPoly::zero(2)
        };
        d == expect
    }

    /// Numerator Mₖ at a point.
    pub fn numerator_at(&self, z1: &Rational, z2: &Rational) -> G {
        let scale = (z1 * z1 - Rational::from_integer(1.into())) * (z2 * z2 - Rational::from_integer(1.into()));
        self.numerator.eval(&[g(z1.clone()), g(z2.clone())]) / g(scale).powi(self.k as i64)
    }

    pub fn eval(&self, z1: &Rational, z2: &Rational) -> RadicalValue {
        let one = Rational::from_integer(1.into());
        let dxi = xi_at(z1) - xi_at(z2);
        RadicalValue {
            coeff: self.numerator_at(z1, z2) / g(dxi),
            radicand: (z1 * z1 - one.clone()) * (z2 * z2 - one),
        }
    }
}

/// K₀..K_M with exchange parity and diagonal behaviour asserted.
pub fn kernel_orders(depth: usize) -> Result<Vec<KernelOrder>, WkbError> {
    let w = wkb_orders(depth.max(1))?;
    kernel_orders_from(&Tails::new(&w, depth + 1), depth)
}

pub fn kernel_orders_from(tails: &Tails, depth: usize) -> Result<Vec<KernelOrder>, WkbError> {
    (0..=depth)
        .map(|k| {
            let ko = KernelOrder::build(k, tails)?;
            if !ko.has_exchange_parity() {
                return Err(WkbError::Kernel { k, what: "exchange parity violated".into() });
            }
            if !ko.diagonal_is_regular() {
                return Err(WkbError::Kernel { k, what: "diagonal singularity does not cancel".into() });
            }
            Ok(ko)
        })
        .collect()
}
