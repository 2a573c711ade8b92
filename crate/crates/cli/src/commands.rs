use crate::config::RunConfig;
use crate::error::CliError;
use crate::render::{csv_lines, q_str, tex_q, Rendered};
use p5_algebra::par::Exec;
use p5_algebra::{q, rational_to_string, Pole, PoleBasisTensor, Rational};
use p5_numerics::{
    fredholm_sine_estimate, gap_reports, integrate_sigma_ode, uniform_grid, write_gap_csv, write_ode_csv, GapConfig,
    HbarNormalization, OdeConfig, OdeMethod,
};
use p5_sigma::{discrepancies, sigma_coeffs, tau_coeffs, tau_latex, Discrepancy, HbarConvention, TauCoefficient};
use p5_toprec::{
    compare_printed_table, correlator_latex, free_energy, free_energy_latex, verify_main_theorem, Convention,
    Correlator, FreeEnergy, Store, TableRow, TableStatus,
};
use p5_wkb::{
    check_regularity, closed_forms, default_sample_points, det_correlator, det_correlator_at, recursion_value,
    verify_hypotheses, wkb_latex, ClosedFormReport, CycleCheck, RegularityReport, WkbError, WkbOrders,
};
use serde::Serialize;

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub config: RunConfig,
    pub exec: Exec,
    pub kernel: Convention,
    pub use_cache: bool,
}

impl Context {
    pub fn store(&self) -> Store {
        Store::with_convention(self.kernel, self.exec, self.use_cache.then(|| self.config.cache_dir.clone()))
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SigmaOut {
    max_k: usize,
    sigma: Vec<String>,
    integral_from_k2: bool,
    discrepancies: Vec<Discrepancy>,
}

pub fn sigma(k: usize) -> Result<Rendered, CliError> {
    let s = sigma_coeffs(k);
    let out = SigmaOut {
        max_k: k,
        sigma: s.coeffs.iter().map(q_str).collect(),
        integral_from_k2: s.is_integral_from(2),
        discrepancies: discrepancies(k),
    };
    let mut pretty: Vec<String> = s.coeffs.iter().enumerate().map(|(i, c)| format!("sigma_{i} = {}", q_str(c))).collect();
    for d in &out.discrepancies {
        pretty.push(format!("note: {}: printed {}, computed {}", d.location, d.printed_value, d.computed_value));
    }
    let latex = s.coeffs.iter().enumerate().map(|(i, c)| format!("\\sigma_{{{i}}}={}", tex_q(c))).collect::<Vec<_>>();
    let csv = csv_lines(&["k", "sigma"], s.coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), q_str(c)]));
    Ok(Rendered::new("sigma", &out, pretty.join("\n"))?.latex(latex.join("\n")).csv(csv))
}

fn tau_csv(t: &[TauCoefficient]) -> String {
    csv_lines(
        &["g", "coeff", "sPower", "isLog"],
        t.iter().map(|c| vec![c.g.to_string(), q_str(&c.coeff), c.s_power.to_string(), c.is_log.to_string()]),
    )
}

fn term_text(coeff: &Rational, s_power: i32, is_log: bool) -> String {
    if is_log {
        format!("{} ln s", q_str(coeff))
    } else {
        format!("{} s^{s_power}", q_str(coeff))
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TauOut {
    max_g: usize,
    tau: Vec<TauCoefficient>,
}

pub fn tau(g: usize) -> Result<Rendered, CliError> {
    let tau = tau_coeffs(g);
    let pretty = tau.iter().map(|t| format!("tau_{} = {}", t.g, term_text(&t.coeff, t.s_power, t.is_log))).collect::<Vec<_>>();
    let r = Rendered::new("tau", &TauOut { max_g: g, tau: tau.clone() }, pretty.join("\n"))?;
    Ok(r.latex(tau_latex(&tau)).csv(tau_csv(&tau)))
}

fn pole_label(p: Pole) -> String {
    if p.is_absent() {
        String::new()
    } else {
        format!("{}{}", if p.eps() > 0 { "+" } else { "-" }, p.order())
    }
}

fn tensor_csv(t: &PoleBasisTensor) -> String {
    let header: Vec<String> = (1..=t.nvars()).map(|i| format!("pole{i}")).chain(["coeff".to_string()]).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_lines(&header, t.terms().map(|(m, c)| m.iter().map(|p| pole_label(*p)).chain([q_str(c)]).collect()))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CorrOut {
    g: usize,
    n: usize,
    convention: &'static str,
    kind: &'static str,
    s_grade: i32,
    symmetric: bool,
    latex: String,
    tensor: Option<PoleBasisTensor>,
}

pub fn tr_corr(ctx: &Context, g: usize, n: usize) -> Result<Rendered, CliError> {
    let store = ctx.store();
    let c = store.correlator(g, n)?;
    let (kind, s_grade, latex, tensor) = match &c {
        Correlator::Omega => ("omega", 1, "\\frac{s(z^2+1)}{4z^2}".to_string(), None),
        Correlator::Bergman => ("bergman", 0, "\\frac{1}{(z_1-z_2)^2}".to_string(), None),
        Correlator::Stable(t) => ("stable", t.s_grade(), correlator_latex(t), Some(t.as_ref().clone())),
    };
    let out = CorrOut {
        g,
        n,
        convention: store.convention().slug(),
        kind,
        s_grade,
        symmetric: tensor.as_ref().is_none_or(PoleBasisTensor::is_symmetric),
        latex: latex.clone(),
        tensor,
    };
    let pretty = match &out.tensor {
        Some(t) if t.nvars() == 1 => format!("W_{n}^({g})(z) = {} * s^{s_grade}", t.to_ratfun()?),
        Some(t) => {
            let terms: Vec<String> = t
                .terms()
                .map(|(m, c)| {
                    let f: Vec<String> = m
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_absent())
                        .map(|(i, p)| format!("(z{}{}1)^-{}", i + 1, if p.eps() > 0 { "-" } else { "+" }, p.order()))
                        .collect();
                    format!("{} {}", q_str(c), f.join(" "))
                })
                .collect();
            format!("W_{n}^({g}) = s^{s_grade} * [{}]", terms.join(" + "))
        }
        None => format!("W_{n}^({g}) = {latex}"),
    };
    let mut r = Rendered::new("tr corr", &out, pretty)?.latex(format!("W_{n}^{{({g})}}={latex}"));
    if let Some(t) = &out.tensor {
        r = r.csv(tensor_csv(t));
    }
    Ok(r)
}

fn free_energy_csv(rows: &[FreeEnergy]) -> String {
    csv_lines(
        &["g", "coeff", "sPower", "isLog"],
        rows.iter().map(|f| vec![f.g.to_string(), q_str(&f.coeff), f.s_power.to_string(), f.is_log.to_string()]),
    )
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FreeEnergyOut {
    max_g: usize,
    convention: &'static str,
    free_energies: Vec<FreeEnergy>,
}

pub fn tr_free_energy(ctx: &Context, g: usize) -> Result<Rendered, CliError> {
    let store = ctx.store();
    let rows = (0..=g).map(|k| free_energy(&store, k)).collect::<Result<Vec<_>, _>>()?;
    let pretty = rows.iter().map(|f| format!("F^({}) = {}", f.g, term_text(&f.coeff, f.s_power, f.is_log))).collect::<Vec<_>>();
    let out = FreeEnergyOut { max_g: g, convention: store.convention().slug(), free_energies: rows.clone() };
    Ok(Rendered::new("tr free-energy", &out, pretty.join("\n"))?.latex(free_energy_latex(&rows)).csv(free_energy_csv(&rows)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Printing {
    value: String,
    location: &'static str,
    matches: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IdentityOut {
    #[serde(flatten)]
    report: p5_toprec::MainTheoremReport,
    convention: &'static str,
    /// The two published values of the g = 5 coefficient against the computed one.
    genus_five_printings: Vec<Printing>,
}

pub fn verify_identity(ctx: &Context, g: usize) -> Result<Rendered, CliError> {
    let store = ctx.store();
    let report = verify_main_theorem(&store, g)?;
    let failures = report.failures();
    let printings = match report.rows.iter().find(|r| r.g == 5) {
        Some(row) => [(q(-6375, 16), "printed tau series"), (q(-6575, 16), "printed free-energy table")]
            .into_iter()
            .map(|(v, location)| Printing {
                value: rational_to_string(&v),
                location,
                matches: v == row.free_energy.coeff && v == row.tau.coeff,
            })
            .collect(),
        None => Vec::new(),
    };
    let mut pretty: Vec<String> = report
        .rows
        .iter()
        .map(|r| {
            let f = &r.free_energy;
            format!("g={}: F = {}  tau = {}  {}", r.g, term_text(&f.coeff, f.s_power, f.is_log), term_text(&r.tau.coeff, r.tau.s_power, r.tau.is_log), if r.equal { "equal" } else { "DIFFER" })
        })
        .collect();
    for p in &printings {
        pretty.push(format!("g=5 printing {} ({}): {}", p.value, p.location, if p.matches { "matches" } else { "does not match" }));
    }
    let rows: Vec<FreeEnergy> = report.rows.iter().map(|r| r.free_energy.clone()).collect();
    let out = IdentityOut { report, convention: store.convention().slug(), genus_five_printings: printings };
    Ok(Rendered::new("verify identity", &out, pretty.join("\n"))?.latex(free_energy_latex(&rows)).csv(free_energy_csv(&rows)).failures(failures))
}

pub fn verify_hypotheses_cmd(n_max: usize, g_max: usize) -> Result<Rendered, CliError> {
    let rep = verify_hypotheses(n_max, g_max, None)?;
    let mut failures = Vec::new();
    if !rep.hypothesis1.pass {
        failures.push("hypothesis 1 (parity, leading order, cycle cancellation)".to_string());
    }
    if !rep.hypothesis2.pass {
        failures.push("hypothesis 2 (regularity at xi = 1/2)".to_string());
    }
    for m in rep.matches.iter().filter(|m| !m.equal) {
        failures.push(format!("W_{}^({}): determinantal and recursion values differ", m.n, m.g));
    }
    let mut pretty = vec![
        format!("hypothesis 1: {}", if rep.hypothesis1.pass { "pass" } else { "FAIL" }),
        format!("hypothesis 2: {}", if rep.hypothesis2.pass { "pass" } else { "FAIL" }),
        format!("hypothesis 3: {}", rep.hypothesis3),
    ];
    pretty.extend(rep.matches.iter().map(|m| format!("W_{}^({}) at hbar^{}: {}", m.n, m.g, m.hbar_exponent, if m.equal { "equal" } else { "DIFFER" })));
    let csv = csv_lines(
        &["n", "g", "hbarExponent", "equal"],
        rep.matches.iter().map(|m| vec![m.n.to_string(), m.g.to_string(), m.hbar_exponent.to_string(), m.equal.to_string()]),
    );
    Ok(Rendered::new("verify hypotheses", &rep, pretty.join("\n"))?.csv(csv).failures(failures))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoPointCheck {
    /// W₂⁽¹⁾ of the recursion equals the determinantal ħ² coefficient at every sample tuple.
    pub det_equal: bool,
    /// The recursion agrees with the display read with numerator 1.
    pub unit_numerator_equal: bool,
    pub sample_points: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableOut {
    pub convention: &'static str,
    pub rows: Vec<TableRow>,
    pub two_point: TwoPointCheck,
}

/// The published table against the recursion, with W₂⁽¹⁾ checked against the determinantal side.
pub fn table_report(ctx: &Context) -> Result<TableOut, CliError> {
    let store = ctx.store();
    let rows = compare_printed_table(&store)?;
    let eo = Store::with_convention(Convention::EynardOrantin, ctx.exec, None);
    let samples = default_sample_points();
    let det = det_correlator_at(2, 2, &samples)?;
    let mut det_equal = *store.tensor(1, 2)? == *eo.tensor(1, 2)?;
    for pts in det.sample_points.iter() {
        det_equal &= det.eval(pts)?.get(&2) == Some(&recursion_value(&eo, 2, 1, pts)?);
    }
    let two_point = TwoPointCheck {
        det_equal,
        unit_numerator_equal: *store.tensor(1, 2)? == p5_toprec::w2_1_unit_numerator(),
        sample_points: det.sample_points.len(),
    };
    Ok(TableOut { convention: store.convention().slug(), rows, two_point })
}

pub fn verify_table(ctx: &Context) -> Result<Rendered, CliError> {
    let out = table_report(ctx)?;
    let mut failures: Vec<String> = out
        .rows
        .iter()
        .filter(|r| r.status == TableStatus::Mismatch)
        .map(|r| match &r.quotient {
            Some(qt) => format!("W_{}^({}): computed/printed = {qt}", r.n, r.g),
            None => format!("W_{}^({}): differs", r.n, r.g),
        })
        .collect();
    if !out.two_point.det_equal {
        failures.push("W_2^(1): recursion differs from the determinantal value".into());
    }
    let mut pretty: Vec<String> = out
        .rows
        .iter()
        .map(|r| {
            let st = match r.status {
                TableStatus::Match => "match".to_string(),
                TableStatus::Mismatch => "MISMATCH".to_string(),
                TableStatus::Unreadable => format!("unreadable display; determinantal check {}", if out.two_point.det_equal { "equal" } else { "DIFFERS" }),
            };
            format!("W_{}^({}): {st}", r.n, r.g)
        })
        .collect();
    pretty.push(format!("convention: {}", out.convention));
    let latex = out
        .rows
        .iter()
        .map(|r| format!("W_{}^{{({})}}&=&{}\\cr", r.n, r.g, r.computed))
        .collect::<Vec<_>>()
        .join("\n");
    let csv = csv_lines(
        &["n", "g", "status"],
        out.rows.iter().map(|r| vec![r.n.to_string(), r.g.to_string(), format!("{:?}", r.status).to_lowercase()]),
    );
    Ok(Rendered::new("verify table", &out, pretty.join("\n"))?.latex(latex).csv(csv).failures(failures))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WkbFnOut {
    which: String,
    leading: String,
    zero_order_log_derivative: String,
    orders: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WkbOut {
    max_order: usize,
    normalization: HbarConvention,
    functions: Vec<WkbFnOut>,
    closed_forms: ClosedFormReport,
    regularity: Option<RegularityReport>,
}

pub fn wkb(ctx: &Context, k: usize, check: bool) -> Result<Rendered, CliError> {
    let w: WkbOrders = match p5_wkb::wkb_orders(k) {
        Ok(w) => w,
        Err(e @ WkbError::RouteMismatch { .. }) => {
            return Ok(Rendered::new("wkb", &serde_json::Value::Null, String::new())?.failures(vec![e.to_string()]));
        }
        Err(e) => return Err(e.into()),
    };
    let mut failures = Vec::new();
    let closed = closed_forms(&w);
    if !closed.all {
        failures.push("closed forms of orders -1..2 or route agreement".into());
    }
    let regularity = if check {
        match check_regularity(&w) {
            Ok(r) => Some(r),
            Err(e @ WkbError::Singular { .. }) => {
                failures.push(e.to_string());
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let target = if ctx.config.convention_flags.appendix_b_normalization { HbarConvention::AppendixB } else { HbarConvention::Section3 };
    let fns: Vec<_> = [&w.psi, &w.phi, &w.psi_tilde, &w.phi_tilde].into_iter().map(|f| f.in_convention(target)).collect();
    let out = WkbOut {
        max_order: k,
        normalization: target,
        functions: fns
            .iter()
            .map(|f| WkbFnOut {
                which: f.which.to_string(),
                leading: f.leading.to_string(),
                zero_order_log_derivative: f.zero_order_log_derivative.to_string(),
                orders: f.orders.iter().map(ToString::to_string).collect(),
            })
            .collect(),
        closed_forms: closed,
        regularity,
    };
    let mut pretty = Vec::new();
    for f in &out.functions {
        pretty.push(format!("{}_-1 = {}", f.which, f.leading));
        pretty.push(format!("d/dxi {}_0 = {}", f.which, f.zero_order_log_derivative));
        for (i, o) in f.orders.iter().enumerate() {
            pretty.push(format!("{}_{} = {o}", f.which, i + 1));
        }
    }
    if let Some(r) = &out.regularity {
        pretty.push(format!("regular at xi = 1/2 through order {}: {}", r.depth, r.regular));
    }
    let latex = fns.iter().map(wkb_latex).collect::<Vec<_>>().join("\n");
    Ok(Rendered::new("wkb", &out, pretty.join("\n"))?.latex(latex).failures(failures))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HbarOrderOut {
    exponent: i64,
    values: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DetOut {
    n: usize,
    order: usize,
    normalization: HbarConvention,
    sample_points: Vec<Vec<String>>,
    one_point: Option<Vec<String>>,
    hbar_orders: Vec<HbarOrderOut>,
    cycles: Vec<CycleCheck>,
    parity: bool,
    leading_order: bool,
    leading_exponent: Option<i64>,
}

pub fn det_corr(n: usize, order: usize) -> Result<Rendered, CliError> {
    let d = det_correlator(n, order)?;
    let out = DetOut {
        n,
        order,
        normalization: d.convention,
        sample_points: d.sample_points.iter().map(|p| p.iter().map(q_str).collect()).collect(),
        one_point: d.one_point.as_ref().map(|v| v.iter().map(ToString::to_string).collect()),
        hbar_orders: d
            .hbar_orders
            .iter()
            .map(|(m, v)| HbarOrderOut { exponent: *m, values: v.iter().map(ToString::to_string).collect() })
            .collect(),
        cycles: d.cycles.clone(),
        parity: d.parity_holds(),
        leading_order: d.leading_order_holds(),
        leading_exponent: d.leading_exponent,
    };
    let mut failures = Vec::new();
    if !out.parity {
        failures.push("parity: an hbar power of the wrong parity survives".into());
    }
    if !out.leading_order {
        failures.push(format!("leading order below hbar^{}", n as i64 - 2));
    }
    for c in out.cycles.iter().filter(|c| !(c.exponential_cancels && c.half_exponents_cancel)) {
        failures.push(format!("cycle {:?} does not cancel", c.cycle));
    }
    let mut pretty = vec![format!("W_{n} through hbar^{order}, leading exponent {:?}", out.leading_exponent)];
    for h in &out.hbar_orders {
        pretty.push(format!("hbar^{}: {}", h.exponent, h.values.join(", ")));
    }
    let csv = csv_lines(
        &["exponent", "sample", "value"],
        out.hbar_orders.iter().flat_map(|h| h.values.iter().enumerate().map(move |(i, v)| vec![h.exponent.to_string(), i.to_string(), format!("\"{v}\"")])),
    );
    Ok(Rendered::new("det corr", &out, pretty.join("\n"))?.csv(csv).failures(failures))
}

fn csv_string(write: impl FnOnce(&mut Vec<u8>) -> Result<(), p5_numerics::NumericsError>) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    String::from_utf8(buf).map_err(|e| CliError::Output(e.to_string()))
}

pub fn ode(s_max: f64, tol: f64, grid: usize, method: OdeMethod) -> Result<Rendered, CliError> {
    if !(s_max.is_finite() && s_max > 0.0) {
        return Err(CliError::Usage(format!("--s-max must be positive, got {s_max}")));
    }
    if grid == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    let cfg = match method {
        OdeMethod::Taylor => OdeConfig { tol, ..OdeConfig::default() },
        OdeMethod::Dopri5 => OdeConfig::dopri5(tol),
    };
    let sol = integrate_sigma_ode(&uniform_grid(s_max, grid), &cfg)?;
    let pretty = sol
        .s_grid
        .iter()
        .enumerate()
        .map(|(i, s)| format!("s={s:<8} sigma={:<24} E2={}", sol.sigma_hat[i], sol.e2(i)))
        .collect::<Vec<_>>()
        .join("\n");
    let csv = csv_string(|b| write_ode_csv(&sol, b))?;
    Ok(Rendered::new("ode", &sol, pretty)?.csv(csv))
}

pub fn fredholm(ctx: &Context, s: f64, nodes: usize) -> Result<Rendered, CliError> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(CliError::Usage(format!("--s must be a non-negative number, got {s}")));
    }
    if nodes == 0 {
        return Err(CliError::Usage("--nodes must be at least 1".into()));
    }
    let v = fredholm_sine_estimate(s, nodes, ctx.exec);
    let pretty = format!("det(I - K_sine)[0,{s}] = {} (nodes {}, error estimate {:e})", v.value, v.nodes, v.error_estimate);
    let csv = csv_lines(&["s", "value", "errorEstimate", "nodes"], [vec![s.to_string(), v.value.to_string(), v.error_estimate.to_string(), v.nodes.to_string()]]);
    Ok(Rendered::new("fredholm", &serde_json::json!({ "s": s, "fredholm": v }), pretty)?.csv(csv))
}

pub fn gap(ctx: &Context, s: &[f64], max_g: usize, nodes: usize, normalization: HbarNormalization, tol: f64) -> Result<Rendered, CliError> {
    if s.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(CliError::Usage("--s values must be non-negative numbers".into()));
    }
    if nodes == 0 {
        return Err(CliError::Usage("--nodes must be at least 1".into()));
    }
    let cfg = GapConfig { ode: OdeConfig { tol, ..OdeConfig::default() }, nodes, max_g, normalization };
    let reports = gap_reports(s, &cfg, ctx.exec)?;
    let pretty = reports
        .iter()
        .map(|r| {
            let asym = r.sigma_asym.map_or("-".to_string(), |v| v.to_string());
            format!("s={}: E2 ode={} fredholm={} |diff|={:e} sigma ode={} asym={asym}", r.s, r.e2_ode, r.e2_fredholm, r.diagnostics.abs_diff_e2, r.sigma_hat_ode)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let csv = csv_string(|b| write_gap_csv(&reports, b))?;
    let out = serde_json::json!({ "maxG": max_g, "nodes": nodes, "normalization": normalization, "reports": reports });
    Ok(Rendered::new("gap", &out, pretty)?.csv(csv))
}
