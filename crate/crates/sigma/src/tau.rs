use crate::sigma::{pow2, sigma_coeffs};
use p5_algebra::{qi, Rational};
use serde::Serialize;

/// coeff · s^sPower, or coeff · ln s when `is_log`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TauCoefficient {
    pub g: usize,
    pub s_power: i32,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub coeff: Rational,
    pub is_log: bool,
}

/// τ̂_g = (−1)^(g−1) (2s)^(2−2g) σ_g / (2−2g) for g ≠ 1, τ̂₁ = σ₁ ln s.
pub fn tau_coeffs(g_max: usize) -> Vec<TauCoefficient> {
    let s = sigma_coeffs(g_max);
    (0..=g_max)
        .map(|g| {
            if g == 1 {
                return TauCoefficient { g, s_power: 0, coeff: s.get(1).clone(), is_log: true };
            }
            let gi = g as i64;
            let sign = if (gi - 1).rem_euclid(2) == 0 { qi(1) } else { qi(-1) };
            let coeff = sign * pow2(2 - 2 * gi) * s.get(g) / qi(2 - 2 * gi);
            TauCoefficient { g, s_power: 2 - 2 * g as i32, coeff, is_log: false }
        })
        .collect()
}
