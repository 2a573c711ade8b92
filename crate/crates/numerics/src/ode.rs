use crate::error::NumericsError;
use crate::scalar::{DoubleDouble, Scalar};
use crate::taylor::{integrate_to, series_point, Point};
use ode_solvers::{Dopri5, OutputType, System, Vector4};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OdeMethod {
    /// Adaptive Taylor series in double-double arithmetic.
    #[default]
    Taylor,
    /// Adaptive Dormand–Prince 5(4) in f64, in the variable ln s.
    Dopri5,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OdeConfig {
    pub method: OdeMethod,
    /// Start point; values at s ≤ s0 come from the small-s series.
    pub s0: f64,
    /// Local error tolerance of the chosen method.
    pub tol: f64,
    /// Bound on the scaled σ-form residual at every grid point.
    pub residual_bound: f64,
    pub series_order: usize,
    pub taylor_order: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            method: OdeMethod::Taylor,
            s0: 1e-3,
            tol: 1e-28,
            residual_bound: 1e-9,
            series_order: 24,
            taylor_order: 30,
        }
    }
}

impl OdeConfig {
    pub fn dopri5(tol: f64) -> Self {
        OdeConfig { method: OdeMethod::Dopri5, tol, series_order: 12, ..Self::default() }
    }

    fn tolerances(&self) -> (f64, f64) {
        match self.method {
            OdeMethod::Taylor => (self.tol, self.tol),
            OdeMethod::Dopri5 => (self.tol, self.tol * 1e-2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OdeSolution {
    pub method: OdeMethod,
    pub s_grid: Vec<f64>,
    pub sigma_hat: Vec<f64>,
    pub sigma_hat_prime: Vec<f64>,
    pub log_tau: Vec<f64>,
    /// Scaled σ-form residual at each grid point.
    pub residual: Vec<f64>,
    pub tolerances: (f64, f64),
    pub steps: usize,
}

impl OdeSolution {
    pub fn index_of(&self, s: f64) -> Option<usize> {
        self.s_grid.iter().position(|&x| x == s)
    }

    pub fn e2(&self, i: usize) -> f64 {
        self.log_tau[i].exp()
    }

    /// σ̂ < 0 and strictly decreasing on the grid.
    pub fn is_monotone(&self) -> bool {
        self.sigma_hat.iter().all(|&x| x < 0.0) && self.sigma_hat.windows(2).all(|w| w[1] < w[0])
    }

    pub fn max_residual(&self) -> f64 {
        self.residual.iter().cloned().fold(0.0, f64::max)
    }
}

/// (1/π²)(sσ̈)² + 4(sσ̇−σ)(sσ̇−σ+σ̇²/π²), divided by the sum of the magnitudes
/// of its terms.
pub fn p5_residual(s: f64, sigma: f64, p: f64, q: f64) -> f64 {
    let pi2 = PI * PI;
    let u = s * p - sigma;
    let w = s * q;
    let (a, b, c) = (w * w / pi2, 4.0 * u * u, 4.0 * u * p * p / pi2);
    let scale = a.abs() + b.abs() + c.abs();
    if scale == 0.0 {
        0.0
    } else {
        (a + b + c).abs() / scale
    }
}

/// State (σ̂, σ̂′, sσ̂″, log τ̂) in x = ln s; the third component obeys the
/// derivative of the σ-form.
struct SigmaForm;

impl System<f64, Vector4<f64>> for SigmaForm {
    fn system(&self, x: f64, y: &Vector4<f64>, dy: &mut Vector4<f64>) {
        let s = x.exp();
        let (sigma, p, w) = (y[0], y[1], y[2]);
        let u = s * p - sigma;
        dy[0] = s * p;
        dy[1] = w;
        dy[2] = -s * (4.0 * PI * PI * u + 2.0 * p * p) - 4.0 * u * p;
        dy[3] = sigma;
    }
}

fn to_f64(pt: &Point<DoubleDouble>) -> Point<f64> {
    Point { s: pt.s.f64(), sigma: pt.sigma.f64(), p: pt.p.f64(), q: pt.q.f64(), log_tau: pt.log_tau.f64() }
}

fn taylor_points(grid: &[f64], cfg: &OdeConfig) -> Result<(Vec<Point<f64>>, usize), NumericsError> {
    let s0 = DoubleDouble::from_f(cfg.s0);
    let mut cur = series_point(s0, cfg.series_order);
    let mut out = Vec::with_capacity(grid.len());
    let mut steps = 0;
    for &s in grid {
        if s <= cfg.s0 {
            out.push(to_f64(&series_point(DoubleDouble::from_f(s), cfg.series_order)));
            continue;
        }
        let (next, n) = integrate_to(cur, DoubleDouble::from_f(s), cfg.taylor_order, cfg.tol)
            .map_err(|last_s| NumericsError::StepCollapse { last_s, reason: "step size collapsed".into() })?;
        cur = next;
        steps += n;
        out.push(to_f64(&cur));
    }
    Ok((out, steps))
}

fn dopri_points(grid: &[f64], cfg: &OdeConfig) -> Result<(Vec<Point<f64>>, usize), NumericsError> {
    let (rtol, atol) = cfg.tolerances();
    let p0 = series_point(cfg.s0, cfg.series_order);
    let mut y = Vector4::new(p0.sigma, p0.p, p0.s * p0.q, p0.log_tau);
    let mut s_cur = cfg.s0;
    let mut out = Vec::with_capacity(grid.len());
    let mut steps = 0;
    for &s in grid {
        if s <= cfg.s0 {
            out.push(series_point(s, cfg.series_order));
            continue;
        }
        let (x0, x1) = (s_cur.ln(), s.ln());
        let mut stepper = Dopri5::new(SigmaForm, x0, x1, x1 - x0, y, rtol, atol);
        stepper.set_output(OutputType::Sparse);
        let stats = stepper
            .integrate()
            .map_err(|e| NumericsError::StepCollapse { last_s: s_cur, reason: e.to_string() })?;
        steps += stats.accepted_steps as usize;
        y = *stepper
            .y_out()
            .last()
            .ok_or(NumericsError::StepCollapse { last_s: s_cur, reason: "no output".into() })?;
        s_cur = s;
        out.push(Point { s, sigma: y[0], p: y[1], q: y[2] / s, log_tau: y[3] });
    }
    Ok((out, steps))
}

/// Integrates σ̂ from s0 through an ascending grid of positive points.
pub fn integrate_sigma_ode(grid: &[f64], cfg: &OdeConfig) -> Result<OdeSolution, NumericsError> {
    if grid.iter().any(|&s| !(s > 0.0 && s.is_finite())) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(NumericsError::Input("grid must be ascending, finite and positive".into()));
    }
    if !(cfg.tol > 0.0 && cfg.tol < 1.0) || !(cfg.s0 > 0.0) {
        return Err(NumericsError::Input("need 0 < tol < 1 and s0 > 0".into()));
    }
    let (points, steps) = match cfg.method {
        OdeMethod::Taylor => taylor_points(grid, cfg)?,
        OdeMethod::Dopri5 => dopri_points(grid, cfg)?,
    };
    let mut sol = OdeSolution {
        method: cfg.method,
        s_grid: grid.to_vec(),
        sigma_hat: Vec::with_capacity(grid.len()),
        sigma_hat_prime: Vec::with_capacity(grid.len()),
        log_tau: Vec::with_capacity(grid.len()),
        residual: Vec::with_capacity(grid.len()),
        tolerances: cfg.tolerances(),
        steps,
    };
    for pt in points {
        let r = p5_residual(pt.s, pt.sigma, pt.p, pt.q);
        if r > cfg.residual_bound {
            return Err(NumericsError::Residual { s: pt.s, value: r, bound: cfg.residual_bound });
        }
        sol.sigma_hat.push(pt.sigma);
        sol.sigma_hat_prime.push(pt.p);
        sol.log_tau.push(pt.log_tau);
        sol.residual.push(r);
    }
    Ok(sol)
}

pub fn uniform_grid(s_max: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| s_max * i as f64 / n as f64).collect()
}

/// `n` equally spaced points on (0, s_max].
pub fn integrate_uniform(s_max: f64, n: usize, tol: f64) -> Result<OdeSolution, NumericsError> {
    integrate_sigma_ode(&uniform_grid(s_max, n), &OdeConfig { tol, ..OdeConfig::default() })
}
