use crate::asymptotic::{asymptotic_eval, HbarNormalization};
use crate::error::NumericsError;
use crate::fredholm::fredholm_sine_estimate;
use crate::ode::{integrate_sigma_ode, OdeConfig};
use p5_algebra::par::Exec;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapConfig {
    pub ode: OdeConfig,
    pub nodes: usize,
    pub max_g: usize,
    pub normalization: HbarNormalization,
}

impl Default for GapConfig {
    fn default() -> Self {
        GapConfig { ode: OdeConfig::default(), nodes: 64, max_g: 4, normalization: HbarNormalization::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapDiagnostics {
    pub abs_diff_e2: f64,
    pub fredholm_error_estimate: f64,
    pub fredholm_nodes: usize,
    pub ode_residual: f64,
    /// |σ̂_ode − σ̂_asym|
    pub asym_error: Option<f64>,
    pub first_omitted_term: Option<f64>,
    pub asym_within_first_omitted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport {
    pub s: f64,
    pub e2_ode: f64,
    pub e2_fredholm: f64,
    pub sigma_hat_ode: f64,
    pub log_tau_ode: f64,
    /// Absent at s = 0, where the large-s series is singular.
    pub sigma_asym: Option<f64>,
    pub diagnostics: GapDiagnostics,
}

/// One report per s; the ODE runs once over the sorted distinct points and the
/// Fredholm determinants are evaluated independently under `exec`.
pub fn gap_reports(ss: &[f64], cfg: &GapConfig, exec: Exec) -> Result<Vec<GapReport>, NumericsError> {
    if ss.iter().any(|&s| !(s >= 0.0 && s.is_finite())) {
        return Err(NumericsError::Input("s must be finite and non-negative".into()));
    }
    let mut grid: Vec<f64> = ss.iter().cloned().filter(|&s| s > 0.0).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let sol = if grid.is_empty() { None } else { Some(integrate_sigma_ode(&grid, &cfg.ode)?) };
    let fred = exec.map(ss.to_vec(), |s| fredholm_sine_estimate(s, cfg.nodes, Exec::Sequential));
    let mut out = Vec::with_capacity(ss.len());
    for (&s, f) in ss.iter().zip(fred) {
        let (sigma, log_tau, residual) = match &sol {
            Some(sol) if s > 0.0 => {
                let i = sol.index_of(s).expect("grid contains s");
                (sol.sigma_hat[i], sol.log_tau[i], sol.residual[i])
            }
            _ => (0.0, 0.0, 0.0),
        };
        let e2_ode = log_tau.exp();
        for (name, p) in [("e2_ode", e2_ode), ("e2_fredholm", f.value)] {
            if !(p > 0.0 && p <= 1.0 + 1e-12) {
                return Err(NumericsError::Input(format!("{name} = {p} outside (0, 1] at s = {s}")));
            }
        }
        let asym = (s > 0.0).then(|| asymptotic_eval(s, cfg.max_g, cfg.normalization));
        let asym_error = asym.as_ref().map(|a| (sigma - a.sigma_hat).abs());
        out.push(GapReport {
            s,
            e2_ode,
            e2_fredholm: f.value,
            sigma_hat_ode: sigma,
            log_tau_ode: log_tau,
            sigma_asym: asym.as_ref().map(|a| a.sigma_hat),
            diagnostics: GapDiagnostics {
                abs_diff_e2: (e2_ode - f.value).abs(),
                fredholm_error_estimate: f.error_estimate,
                fredholm_nodes: f.nodes,
                ode_residual: residual,
                asym_error,
                first_omitted_term: asym.as_ref().map(|a| a.first_omitted),
                asym_within_first_omitted: asym.as_ref().zip(asym_error).map(|(a, e)| e <= a.first_omitted),
            },
        });
    }
    Ok(out)
}

pub fn gap_report(s: f64, max_g: usize, nodes: usize) -> Result<GapReport, NumericsError> {
    let cfg = GapConfig { nodes, max_g, ..GapConfig::default() };
    Ok(gap_reports(&[s], &cfg, Exec::default())?.remove(0))
}
