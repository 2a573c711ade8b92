use crate::error::NumericsError;
use crate::gap::GapReport;
use crate::ode::OdeSolution;
use serde::Serialize;
use std::io::Write;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OdeRow {
    s: f64,
    sigma_hat: f64,
    sigma_hat_prime: f64,
    log_tau: f64,
    e2_ode: f64,
    residual: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GapRow {
    s: f64,
    sigma_hat: f64,
    log_tau: f64,
    e2_ode: f64,
    e2_fredholm: f64,
    sigma_asym: Option<f64>,
    diff_e2: f64,
    diff_sigma_asym: Option<f64>,
    first_omitted: Option<f64>,
}

pub fn write_ode_csv<W: Write>(sol: &OdeSolution, w: W) -> Result<(), NumericsError> {
    let mut wr = csv::Writer::from_writer(w);
    for i in 0..sol.s_grid.len() {
        wr.serialize(OdeRow {
            s: sol.s_grid[i],
            sigma_hat: sol.sigma_hat[i],
            sigma_hat_prime: sol.sigma_hat_prime[i],
            log_tau: sol.log_tau[i],
            e2_ode: sol.e2(i),
            residual: sol.residual[i],
        })?;
    }
    wr.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_gap_csv<W: Write>(reports: &[GapReport], w: W) -> Result<(), NumericsError> {
    let mut wr = csv::Writer::from_writer(w);
    for r in reports {
        wr.serialize(GapRow {
            s: r.s,
            sigma_hat: r.sigma_hat_ode,
            log_tau: r.log_tau_ode,
            e2_ode: r.e2_ode,
            e2_fredholm: r.e2_fredholm,
            sigma_asym: r.sigma_asym,
            diff_e2: r.diagnostics.abs_diff_e2,
            diff_sigma_asym: r.diagnostics.asym_error,
            first_omitted: r.diagnostics.first_omitted_term,
        })?;
    }
    wr.flush().map_err(csv::Error::from)?;
    Ok(())
}
