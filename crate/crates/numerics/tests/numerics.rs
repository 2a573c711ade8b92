use approx::assert_relative_eq;
use p5_numerics::*;
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn small_s_leading_coefficients() {
    assert_eq!(small_s_expansion(2), vec![0.0, -1.0, -1.0]);
    // E₂(0,s) = 1 − s + π²s⁴/36 + O(s⁵) gives σ̂ = s (log E₂)′
    let a = small_s_expansion(4);
    assert_eq!(a[3], -1.0);
    assert_relative_eq!(a[4], PI * PI / 9.0 - 1.0, max_relative = 1e-14);
    assert_eq!(small_s_expansion(0).len(), 3);
}

#[test]
fn small_s_series_against_ode() {
    let s = 1e-2;
    let sol = integrate_sigma_ode(&[s], &OdeConfig { s0: 1e-4, ..OdeConfig::default() }).unwrap();
    assert_relative_eq!(sol.sigma_hat[0], eval_series(&small_s_expansion(8), s), max_relative = 1e-13);
    assert_relative_eq!(sol.log_tau[0], eval_series(&log_tau_series(8), s), max_relative = 1e-13);
}

#[test]
fn values_at_start_point() {
    let sol = integrate_sigma_ode(&[1e-3], &OdeConfig::default()).unwrap();
    assert!((sol.sigma_hat[0] + 0.001001).abs() < 1e-9);
    assert!((sol.log_tau[0] + 0.0010005).abs() < 1e-8);
    let rel = (sol.sigma_hat[0] - (-1e-3 - 1e-6)).abs() / 1e-3;
    assert!(rel < 1e-4);
}

#[test]
fn leading_growth() {
    let sol = integrate_sigma_ode(&[4.0], &OdeConfig::default()).unwrap();
    let ratio = sol.sigma_hat[0] / (-PI * PI * 16.0 / 4.0);
    assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn residual_and_monotonicity() {
    for cfg in [OdeConfig::default(), OdeConfig::dopri5(1e-12)] {
        let sol = integrate_sigma_ode(&uniform_grid(6.0, 60), &cfg).unwrap();
        assert!(sol.max_residual() < 1e-9, "{:?}", cfg.method);
        assert!(sol.is_monotone());
    }
}

#[test]
fn taylor_and_dopri5_agree() {
    let grid = uniform_grid(4.0, 8);
    let t = integrate_sigma_ode(&grid, &OdeConfig::default()).unwrap();
    let d = integrate_sigma_ode(&grid, &OdeConfig::dopri5(1e-13)).unwrap();
    for i in 0..grid.len() {
        assert_relative_eq!(t.sigma_hat[i], d.sigma_hat[i], max_relative = 1e-9);
        assert_relative_eq!(t.log_tau[i], d.log_tau[i], max_relative = 1e-9);
    }
}

#[test]
fn derivative_consistency_by_finite_differences() {
    let h = 1e-4;
    for s in [0.3, 1.0, 2.5] {
        let sol = integrate_sigma_ode(&[s - h, s, s + h], &OdeConfig::default()).unwrap();
        let d = (sol.log_tau[2] - sol.log_tau[0]) / (2.0 * h);
        assert!((s * d - sol.sigma_hat[1]).abs() < 1e-7, "s = {s}");
        let dd = (sol.sigma_hat[2] - sol.sigma_hat[0]) / (2.0 * h);
        assert!((dd - sol.sigma_hat_prime[1]).abs() < 1e-6);
    }
}

#[test]
fn bad_grid_rejected() {
    assert!(matches!(integrate_sigma_ode(&[1.0, 0.5], &OdeConfig::default()), Err(NumericsError::Input(_))));
    assert!(matches!(integrate_sigma_ode(&[-1.0], &OdeConfig::default()), Err(NumericsError::Input(_))));
    let cfg = OdeConfig { tol: 0.0, ..OdeConfig::default() };
    assert!(integrate_sigma_ode(&[1.0], &cfg).is_err());
}

#[test]
fn fredholm_trivial_and_small() {
    assert_eq!(fredholm_sine(0.0, 8), 1.0);
    let oracle = eval_series(&log_tau_series(10), 0.01).exp();
    let v = fredholm_sine(0.01, 64);
    assert!((v - oracle).abs() < 1e-12);
    assert!((v - 0.990000).abs() < 1e-6);
}

#[test]
fn fredholm_node_doubling() {
    for s in [0.5, 2.0, 4.0] {
        let f = fredholm_sine_estimate(s, 32, Exec::Sequential);
        assert!(f.error_estimate < 1e-12, "s = {s}: {f:?}");
        assert_eq!(f.nodes, 32);
    }
}

#[test]
fn dual_oracle_agreement() {
    let grid: Vec<f64> = (1..=40).map(|i| 0.1 * i as f64).collect();
    let sol = integrate_sigma_ode(&grid, &OdeConfig::default()).unwrap();
    for (i, &s) in grid.iter().enumerate() {
        let tol = if s <= 2.0 { 1e-8 } else { 1e-6 };
        let f = fredholm_sine(s, 64);
        assert!((sol.e2(i) - f).abs() < tol, "s = {s}");
        assert!((sol.e2(i) / f - 1.0).abs() < 1e-9, "s = {s}");
    }
}

#[test]
fn asymptotic_examples() {
    let a = asymptotic_eval(10.0, 4, HbarNormalization::OdeConsistent);
    let lead = -PI * PI * 25.0;
    assert_eq!(a.terms[0], lead);
    assert!(((a.sigma_hat - lead) / lead).abs() < 0.01);
    for n in [HbarNormalization::OdeConsistent, HbarNormalization::Printed] {
        let g0 = asymptotic_eval(2.0, 0, n);
        assert_relative_eq!(g0.dlog_tau, -PI * PI * 2.0 / 4.0, max_relative = 1e-15);
    }
}

#[test]
fn printed_normalization_misses_by_half() {
    let sol = integrate_sigma_ode(&[6.0], &OdeConfig::default()).unwrap();
    let printed = asymptotic_eval(6.0, 4, HbarNormalization::Printed);
    let consistent = asymptotic_eval(6.0, 4, HbarNormalization::OdeConsistent);
    assert!(((sol.sigma_hat[0] - printed.sigma_hat) + 0.5).abs() < 1e-3);
    assert!((sol.sigma_hat[0] - consistent.sigma_hat).abs() < 1e-6);
}

#[test]
fn asymptotic_error_near_first_omitted_term() {
    let ss = [3.0, 4.0, 6.0];
    let sol = integrate_sigma_ode(&ss, &OdeConfig::default()).unwrap();
    for (i, &s) in ss.iter().enumerate() {
        let a = asymptotic_eval(s, 4, HbarNormalization::OdeConsistent);
        let ratio = (sol.sigma_hat[i] - a.sigma_hat).abs() / a.first_omitted;
        assert!(ratio < 2.0, "s = {s}: {ratio}");
    }
}

#[test]
fn divergent_series_signature() {
    let ss = [1.0, 2.0, 3.0];
    let sol = integrate_sigma_ode(&ss, &OdeConfig::default()).unwrap();
    let mut last_min = f64::INFINITY;
    for (i, &s) in ss.iter().enumerate() {
        let errs: Vec<f64> = (0..=8)
            .map(|g| (sol.sigma_hat[i] - asymptotic_eval(s, g, HbarNormalization::OdeConsistent).sigma_hat).abs())
            .collect();
        let (gmin, &emin) = errs.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert!(gmin > 0 && gmin < 8, "s = {s}: {errs:?}");
        assert!(errs[0] > emin && errs[8] > emin);
        assert!(emin < last_min);
        last_min = emin;
    }
}

#[test]
fn gap_report_at_zero() {
    let r = gap_report(0.0, 4, 16).unwrap();
    assert_eq!((r.e2_ode, r.e2_fredholm), (1.0, 1.0));
    assert_eq!(r.sigma_asym, None);
    assert_eq!(r.diagnostics.abs_diff_e2, 0.0);
}

#[test]
fn gap_report_at_one_and_three() {
    let r = gap_report(1.0, 4, 64).unwrap();
    assert!(r.diagnostics.abs_diff_e2 < 1e-8);
    let r = gap_report(3.0, 4, 64).unwrap();
    assert!(r.diagnostics.asym_error.unwrap() < 2.0 * r.diagnostics.first_omitted_term.unwrap());
    let json = serde_json::to_value(&r).unwrap();
    assert!(json["diagnostics"]["firstOmittedTerm"].is_number());
    assert!(json["e2Fredholm"].is_number());
}

#[test]
fn exec_strategies_agree_bitwise() {
    let ss = [0.5, 1.0, 2.0, 0.0, 1.0];
    let cfg = GapConfig::default();
    let a = gap_reports(&ss, &cfg, Exec::Sequential).unwrap();
    let b = gap_reports(&ss, &cfg, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 5);
    assert_eq!(a[1], a[4]);
}

#[test]
fn csv_round_trip() {
    let sol = integrate_uniform(2.0, 4, 1e-28).unwrap();
    let mut buf = Vec::new();
    write_ode_csv(&sol, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,sigmaHat,sigmaHatPrime,logTau,e2Ode,residual");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3][1], sol.sigma_hat[3]);

    let reps = gap_reports(&[0.0, 1.0], &GapConfig::default(), Exec::default()).unwrap();
    let mut buf = Vec::new();
    write_gap_csv(&reps, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("s,sigmaHat,logTau,e2Ode,e2Fredholm,sigmaAsym,diffE2,diffSigmaAsym,firstOmitted\n"));
    assert_eq!(text.lines().nth(1).unwrap(), "0.0,0.0,0.0,1.0,1.0,,0.0,,");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fredholm_monotone_and_bounded(a in 0.0f64..3.5, d in 0.05f64..0.5) {
        let x = fredholm_sine(a, 48);
        let y = fredholm_sine(a + d, 48);
        prop_assert!(y < x);
        prop_assert!(y > 0.0 && x <= 1.0);
    }

    #[test]
    fn dlog_tau_matches_sigma_series(s in 0.5f64..20.0, g in 0usize..7) {
        for n in [HbarNormalization::OdeConsistent, HbarNormalization::Printed] {
            let a = asymptotic_eval(s, g, n);
            prop_assert!((a.dlog_tau - a.sigma_hat / s).abs() <= 1e-12 * (a.sigma_hat / s).abs().max(1.0));
        }
    }

    #[test]
    fn sigma_between_small_and_large_s_shapes(s in 0.01f64..5.0) {
        let sol = integrate_sigma_ode(&[s], &OdeConfig::default()).unwrap();
        let x = sol.sigma_hat[0];
        prop_assert!(sol.residual[0] < 1e-9);
        prop_assert!(x < 0.0 && x > -PI * PI * s * s / 4.0 - s);
        prop_assert!(x < -s);
    }
}
