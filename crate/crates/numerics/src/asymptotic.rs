use num_traits::ToPrimitive;
use p5_sigma::{sigma_coeffs, tau_coeffs};
use serde::Serialize;
use std::f64::consts::PI;

/// Value substituted for ħ² in the large-s series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HbarNormalization {
    /// ħ² = −1/π²: the series then solves the σ-form ODE satisfied by the gap probability.
    #[default]
    OdeConsistent,
    /// ħ = −1/π substituted literally.
    Printed,
}

impl HbarNormalization {
    pub fn hbar_sq(self) -> f64 {
        match self {
            HbarNormalization::OdeConsistent => -1.0 / (PI * PI),
            HbarNormalization::Printed => 1.0 / (PI * PI),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AsymptoticValue {
    pub s: f64,
    pub max_g: usize,
    pub normalization: HbarNormalization,
    /// σ̂ truncated after k = G.
    pub sigma_hat: f64,
    /// d/ds log τ̂ from Σ π²ħ^{2g} τ̂_g(s).
    pub dlog_tau: f64,
    /// σ̂ terms k = 0..=G.
    pub terms: Vec<f64>,
    /// |σ̂ term k = G+1|
    pub first_omitted: f64,
}

/// Truncated large-s series of σ̂ and of d/ds log τ̂.
pub fn asymptotic_eval(s: f64, max_g: usize, normalization: HbarNormalization) -> AsymptoticValue {
    let h2 = normalization.hbar_sq();
    let sig = sigma_coeffs(max_g + 1);
    let all: Vec<f64> = (0..=max_g + 1)
        .map(|k| {
            let sk = sig.get(k).to_f64().expect("finite σ_k");
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            sign * PI * PI * sk * (2.0 * s).powi(2 - 2 * k as i32) * h2.powi(k as i32)
        })
        .collect();
    let terms = all[..=max_g].to_vec();
    let dlog_tau = tau_coeffs(max_g)
        .iter()
        .map(|t| {
            let c = t.coeff.to_f64().expect("finite τ̂_g");
            let d = if t.is_log { c / s } else { c * t.s_power as f64 * s.powi(t.s_power - 1) };
            PI * PI * h2.powi(t.g as i32) * d
        })
        .sum();
    AsymptoticValue {
        s,
        max_g,
        normalization,
        sigma_hat: terms.iter().sum(),
        dlog_tau,
        terms,
        first_omitted: all[max_g + 1].abs(),
    }
}
