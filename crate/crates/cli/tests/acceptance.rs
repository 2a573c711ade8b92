use p5_algebra::par::Exec;
use p5_cli::{run, Outcome};
use p5_numerics::{gap_reports, integrate_sigma_ode, GapConfig, OdeConfig};
use p5_toprec::{Correlator, Store};
use p5_wkb::{check_regularity, closed_forms, det_correlator, verify_hypotheses, wkb_orders};
use serde_json::Value;
use std::path::Path;
use std::time::{Duration, Instant};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn p5(args: &[&str]) -> Outcome {
    run(std::iter::once("p5").chain(args.iter().copied()))
}

fn p5_in(cache: &Path, args: &[&str]) -> Outcome {
    let c = cache.display().to_string();
    run(["p5", "--cache", c.as_str()].into_iter().chain(args.iter().copied()))
}

fn result(o: &Outcome) -> Value {
    serde_json::from_str::<Value>(&o.stdout).map(|v| v["result"].clone()).unwrap_or(Value::Null)
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect()).unwrap_or_default()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn sigma_recursion() -> Verdict {
    let (out, dt) = timed(|| (p5(&["--no-cache", "sigma", "--max-k", "4"]), p5(&["--no-cache", "sigma", "--max-k", "50"])));
    let first = strs(&result(&out.0)["sigma"]);
    let values = first == ["1/16", "1/4", "1", "40", "4192"];
    let integral = result(&out.1)["integralFromK2"] == true;
    verdict(
        values && integral && dt < Duration::from_secs(5),
        format!("sigma_0..4 = {}; integral for 2 <= k <= 50: {integral}; {:.2?}", first.join(", "), dt),
    )
}

fn main_identity(cache: &Path) -> Verdict {
    let (five, dt5) = timed(|| p5_in(cache, &["verify", "identity", "--max-g", "5"]));
    let r5 = result(&five);
    let rows = r5["rows"].as_array().cloned().unwrap_or_default();
    let coeff = |g: usize| rows.get(g).and_then(|r| r["freeEnergy"]["coeff"].as_str()).unwrap_or("").to_string();
    let table = coeff(2) == "1/8" && coeff(3) == "-5/8" && coeff(4) == "131/12";
    let matched: Vec<String> = r5["genusFivePrintings"]
        .as_array()
        .map(|a| a.iter().filter(|p| p["matches"] == true).map(|p| format!("{} ({})", p["value"].as_str().unwrap_or(""), p["location"].as_str().unwrap_or(""))).collect())
        .unwrap_or_default();
    let ok5 = five.code == 0 && rows.len() == 6 && r5["allEqual"] == true && table && matched.len() == 1;
    let (eight, dt8) = timed(|| p5_in(cache, &["verify", "identity", "--max-g", "8"]));
    let ok8 = eight.code == 0 && result(&eight)["allEqual"] == true;
    let total = dt5 + dt8;
    verdict(
        ok5 && ok8 && total < Duration::from_secs(600),
        format!(
            "F^(g) = tau_g exactly for g <= 5 ({ok5}) and g <= 8 ({ok8}); g = 5 matches {}; {:.1?} cold",
            matched.join(", "),
            total
        ),
    )
}

fn correlator_table() -> Verdict {
    let o = p5(&["--no-cache", "verify", "table"]);
    let r = result(&o);
    let rows = r["rows"].as_array().cloned().unwrap_or_default();
    let label = |row: &Value| format!("W_{}^({})", row["n"], row["g"]);
    let matched: Vec<String> = rows.iter().filter(|x| x["status"] == "match").map(label).collect();
    let mismatched: Vec<String> = rows
        .iter()
        .filter(|x| x["status"] == "mismatch")
        .map(|x| {
            let kind = match x["quotient"].as_str() {
                Some("(-1)") => "opposite sign",
                Some("(1)*z^2 + (1)") => "printed lacks the factor (z^2+1)",
                _ => "numerator coefficients differ",
            };
            format!("{} ({kind})", label(x))
        })
        .collect();
    let det = r["twoPoint"]["detEqual"] == true;
    verdict(
        mismatched.is_empty() && det && matched.len() == 8,
        format!(
            "exact: {}; differ: {}; W_2^(1) vs determinantal: {}",
            matched.join(" "),
            if mismatched.is_empty() { "none".to_string() } else { mismatched.join(", ") },
            if det { "equal" } else { "differs" },
        ),
    )
}

fn properties() -> Verdict {
    let store = Store::new(Exec::default(), None);
    let mut checked = 0;
    let mut bad = Vec::new();
    let cells: Vec<(usize, usize)> =
        (0..=3).flat_map(|g| (1..=4).map(move |n| (g, n))).chain([(0, 5), (4, 1), (5, 1), (4, 2)]).collect();
    for (g, n) in cells {
        let t = match store.correlator(g, n) {
            Ok(Correlator::Stable(t)) => t,
            Ok(_) => continue,
            Err(e) => {
                bad.push(format!("W_{n}^({g}): {e}"));
                continue;
            }
        };
        checked += 1;
        if t.s_grade() != 2 - 2 * g as i32 - n as i32 {
            bad.push(format!("W_{n}^({g}) grade {}", t.s_grade()));
        }
        if n <= 4 && !t.is_symmetric() {
            bad.push(format!("W_{n}^({g}) not symmetric"));
        }
        let poles_ok = t.terms().all(|(m, _)| m.iter().all(|p| p.is_absent() || (p.eps().abs() == 1 && p.order() >= 1)));
        let ratfun_ok = n != 1 || {
            let f = t.to_ratfun().unwrap();
            let at = |x: i64| f.pole_order(&p5_algebra::qi(x)) as usize;
            f.denom().degree() == Some(at(1) + at(-1))
        };
        if !(poles_ok && ratfun_ok) {
            bad.push(format!("W_{n}^({g}) has a pole away from z = ±1"));
        }
        if g == 0 && (3..=5).contains(&n) && !t.is_zero() {
            bad.push(format!("W_{n}^(0) nonzero"));
        }
    }
    verdict(bad.is_empty(), format!("{checked} stable correlators: grade, symmetry, poles at ±1, W_3..5^(0) = 0; {}", if bad.is_empty() { "no violations".to_string() } else { bad.join("; ") }))
}

fn wkb() -> Verdict {
    let w = match wkb_orders(8) {
        Ok(w) => w,
        Err(e) => return verdict(false, format!("orders through 8: {e}")),
    };
    let c = closed_forms(&w);
    let reg = check_regularity(&w).map(|r| r.regular && r.depth == 8).unwrap_or(false);
    verdict(
        c.all && reg,
        format!(
            "psi_-1 {}, psi_0 {}, psi_1 {}, psi_2 {}; regular at xi = 1/2 through 8: {reg}; t- and xi-routes agree: {}",
            c.psi_minus_one, c.psi_zero, c.psi_one, c.psi_two, c.routes_agree
        ),
    )
}

fn determinantal() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        match det_correlator(n, 4) {
            Ok(d) => {
                let cyc = d.cycles.iter().all(|c| c.exponential_cancels && c.half_exponents_cancel);
                let good = cyc && d.parity_holds() && d.leading_order_holds();
                ok &= good;
                notes.push(format!("n={n}: {} cycles, leading hbar^{:?}", d.cycles.len(), d.leading_exponent.unwrap_or(i64::MIN)));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    match verify_hypotheses(2, 1, None) {
        Ok(h) => {
            let pairs: Vec<String> = h.matches.iter().map(|m| format!("({},{}){}", m.n, m.g, if m.equal { "=" } else { "!=" })).collect();
            let want = [(1, 0), (1, 1), (2, 0), (2, 1)];
            let all = want.iter().all(|(n, g)| h.matches.iter().any(|m| m.n == *n && m.g == *g && m.equal && m.sample_points.len() == 3));
            ok &= all && h.all_passed;
            notes.push(format!("det vs recursion at 3 points: {}", pairs.join(" ")));
        }
        Err(e) => {
            ok = false;
            notes.push(e.to_string());
        }
    }
    verdict(ok, notes.join("; "))
}

fn numerics() -> Verdict {
    let t = Instant::now();
    let cfg = GapConfig { max_g: 4, ..GapConfig::default() };
    let reports = match gap_reports(&[0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0], &cfg, Exec::default()) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let max_diff = reports.iter().filter(|r| r.s <= 2.0).map(|r| r.diagnostics.abs_diff_e2).fold(0.0, f64::max);
    let ratios: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.s >= 3.0)
        .map(|r| (r.s, r.diagnostics.asym_error.unwrap_or(f64::INFINITY) / r.diagnostics.first_omitted_term.unwrap_or(0.0)))
        .collect();
    let small = integrate_sigma_ode(&[1e-3], &OdeConfig { s0: 1e-5, ..OdeConfig::default() });
    let small_rel = small.map(|s| ((s.sigma_hat[0] - (-1e-3 - 1e-6)) / (-1e-3 - 1e-6)).abs()).unwrap_or(f64::INFINITY);
    let dt = t.elapsed();
    let asym_ok = ratios.iter().all(|(_, r)| *r < 10.0);
    let ratio_text: Vec<String> = ratios.iter().map(|(s, r)| format!("s={s}: {r:.2}")).collect();
    verdict(
        max_diff < 1e-8 && small_rel < 1e-4 && asym_ok && dt < Duration::from_secs(60),
        format!(
            "|E2_ode - E2_fredholm| <= {max_diff:.1e} on s = 0.5..2; small-s relative {small_rel:.1e}; \
             G=4 error/first omitted term (hbar^2 = -1/pi^2, order-of-magnitude bound) {}; {:.2?}",
            ratio_text.join(", "),
            dt
        ),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut bad = Vec::new();
    let cases: [&[&str]; 4] = [
        &["tr", "corr", "--g", "3", "--n", "2"],
        &["verify", "identity", "--max-g", "5"],
        &["sigma", "--max-k", "20"],
        &["gap", "--s", "0.5,1,3"],
    ];
    for args in cases {
        let cold = p5_in(dir.path(), args);
        let warm = p5_in(dir.path(), args);
        if cold != warm {
            bad.push(format!("{} warm/cold", args.join(" ")));
        }
        let mut seq: Vec<&str> = vec!["--no-cache", "--sequential"];
        seq.extend(args);
        let reference = p5(&seq);
        if reference.stdout != cold.stdout {
            bad.push(format!("{} cached/uncached", args.join(" ")));
        }
        for t in ["1", "2", "4"] {
            let mut v: Vec<&str> = vec!["--no-cache", "--threads", t];
            v.extend(args);
            if p5(&v) != reference {
                bad.push(format!("{} threads={t}", args.join(" ")));
            }
        }
    }
    verdict(bad.is_empty(), format!("warm/cold cache, sequential and 1/2/4 threads; {}", if bad.is_empty() { "byte-identical".to_string() } else { bad.join("; ") }))
}

/// Criteria expected to fail, with the reason recorded alongside.
const EXPECTED_FAIL: &[usize] = &[3];

fn main() {
    let cache = tempfile::tempdir().expect("tempdir");
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("sigma recursion", Box::new(sigma_recursion)),
        ("F^(g) = tau_g", Box::new(|| main_identity(cache.path()))),
        ("correlator table", Box::new(correlator_table)),
        ("correlator properties", Box::new(properties)),
        ("WKB", Box::new(wkb)),
        ("determinantal side", Box::new(determinantal)),
        ("numerics", Box::new(numerics)),
        ("determinism", Box::new(determinism)),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let v = f();
        println!("{} criterion {k} ({name}): {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if v.pass == EXPECTED_FAIL.contains(&k) {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
