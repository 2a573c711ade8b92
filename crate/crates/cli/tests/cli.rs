use p5_cli::{run, Outcome, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn p5(args: &str) -> Outcome {
    run(std::iter::once("p5").chain(args.split_whitespace()))
}

fn p5_cached(args: &str, cache: &Path) -> Outcome {
    let mut v: Vec<String> = vec!["p5".into(), "--cache".into(), cache.display().to_string()];
    v.extend(args.split_whitespace().map(String::from));
    run(v)
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", o.stdout, o.stderr))
}

fn schema(name: &str) -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, v: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn sigma_example() {
    let o = p5("--no-cache sigma --max-k 4");
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    let sigma: Vec<&str> = v["result"]["sigma"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(sigma, ["1/16", "1/4", "1", "40", "4192"]);
    assert_eq!(v["result"]["integralFromK2"], true);
}

#[test]
fn identity_example() {
    let o = p5("--no-cache verify identity --max-g 5");
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["equal"] == true));
    let printings = v["result"]["genusFivePrintings"].as_array().unwrap();
    let matched: Vec<&str> =
        printings.iter().filter(|p| p["matches"] == true).map(|p| p["value"].as_str().unwrap()).collect();
    assert_eq!(matched, ["-6575/16"]);
}

#[test]
fn gap_at_zero() {
    let o = p5("gap --s 0");
    assert_eq!(o.code, EXIT_OK);
    let r = &json(&o)["result"]["reports"][0];
    assert_eq!(r["e2Ode"], 1.0);
    assert_eq!(r["e2Fredholm"], 1.0);
    assert!(r["sigmaAsym"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "sigma --max-k x",
        "frobnicate",
        "fredholm --s -1",
        "fredholm --s 1 --nodes 0",
        "ode --s-max 0",
        "ode --s-max 1 --tol 0",
        "ode --s-max 1 --format latex",
        "tr corr --g 0 --n 0",
        "det corr --n 0",
        "verify identity --max-g 99",
        "sigma --threads 0",
        "gap --s -2",
    ] {
        let o = p5(&format!("--no-cache {args}"));
        assert_eq!(o.code, EXIT_USAGE, "{args}: {}", o.stdout);
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let o = p5("--help");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("verify"));
}

#[test]
fn table_mismatch_is_a_verification_failure() {
    let o = p5("--no-cache verify table");
    assert_eq!(o.code, EXIT_VERIFY);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let failures: Vec<&str> = v["failures"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert_eq!(failures.len(), 3);
    assert!(failures[0].starts_with("W_1^(1)"));
    assert!(failures[1].starts_with("W_1^(4)"));
    assert!(failures[2].starts_with("W_1^(5)"));
    assert_eq!(v["result"]["twoPoint"]["detEqual"], true);
}

#[test]
fn formats() {
    let latex = p5("--no-cache tr corr --g 1 --n 1 --format latex");
    assert_eq!(latex.stdout, "W_1^{(1)}=\\frac{(z^2+1)}{2s(z^2-1)^2}\n");
    let csv = p5("sigma --max-k 2 --format csv");
    assert_eq!(csv.stdout, "k,sigma\n0,1/16\n1,1/4\n2,1\n");
    let pretty = p5("--no-cache tr free-energy --max-g 2 --format pretty");
    assert!(pretty.stdout.contains("F^(2) = 1/8 s^-2"));
    let ode = p5("ode --s-max 1 --grid 2");
    assert!(ode.stdout.starts_with("s,sigmaHat,sigmaHatPrime,logTau,e2Ode,residual\n"));
    assert_eq!(ode.stdout.lines().count(), 3);
    let fail = p5("--no-cache verify table --format pretty");
    assert!(fail.stdout.contains("FAILED:"));
}

#[test]
fn config_file_supplies_defaults_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.toml");
    std::fs::write(&good, "maxOrder = 3\noutputFormat = \"csv\"\n[conventionFlags]\nappendixBNormalization = true\n").unwrap();
    let o = p5(&format!("--no-cache --config {} sigma", good.display()));
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, "k,sigma\n0,1/16\n1,1/4\n2,1\n3,40\n");
    let flag_wins = p5(&format!("--no-cache --config {} sigma --max-k 1", good.display()));
    assert_eq!(flag_wins.stdout, "k,sigma\n0,1/16\n1,1/4\n");

    let unknown = dir.path().join("bad.toml");
    std::fs::write(&unknown, "maxOrder = 3\ncolour = \"blue\"\n").unwrap();
    let o = p5(&format!("--config {} sigma", unknown.display()));
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("colour"));

    let bad_tol = dir.path().join("tol.json");
    std::fs::write(&bad_tol, r#"{"floatTol": -1}"#).unwrap();
    assert_eq!(p5(&format!("--config {} ode --s-max 1", bad_tol.display())).code, EXIT_USAGE);
}

#[test]
fn section3_normalization_rotates_orders() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"conventionFlags": {"appendixBNormalization": false}}"#).unwrap();
    let b = json(&p5("wkb --max-order 2"));
    let s3 = json(&p5(&format!("--config {} wkb --max-order 2", cfg.display())));
    assert_eq!(b["result"]["normalization"], "AppendixB");
    assert_eq!(s3["result"]["normalization"], "Section3");
    assert_ne!(b["result"]["functions"][0]["orders"][0], s3["result"]["functions"][0]["orders"][0]);
}

#[test]
fn json_outputs_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("sigma", "sigma --max-k 6"),
        ("tau", "tau --max-g 4"),
        ("tr-corr", "tr corr --g 1 --n 3"),
        ("tr-corr", "tr corr --g 0 --n 2"),
        ("tr-free-energy", "tr free-energy --max-g 4"),
        ("verify-identity", "verify identity --max-g 5"),
        ("verify-hypotheses", "verify hypotheses --n-max 2 --g-max 1"),
        ("verify-table", "verify table"),
        ("wkb", "wkb --max-order 4 --check-regularity"),
        ("det-corr", "det corr --n 2 --order 2"),
        ("det-corr", "det corr --n 1 --order 3"),
        ("ode", "ode --s-max 2 --grid 4 --format json"),
        ("fredholm", "fredholm --s 1.5 --nodes 24"),
        ("gap", "gap --s 0,1,3"),
    ] {
        let o = p5_cached(args, dir.path());
        assert!(o.code == EXIT_OK || o.code == EXIT_VERIFY, "{args}: {}", o.stderr);
        let v = json(&o);
        assert_valid("envelope", &v);
        assert_valid(name, &v["result"]);
    }
}

#[test]
fn warm_and_cold_cache_agree_bytewise() {
    let dir = tempfile::tempdir().unwrap();
    for args in ["tr corr --g 3 --n 2", "verify identity --max-g 4", "tr free-energy --max-g 4", "verify table"] {
        let cold = p5_cached(args, dir.path());
        let warm = p5_cached(args, dir.path());
        let none = p5(&format!("--no-cache {args}"));
        assert_eq!(cold, warm, "{args}");
        assert_eq!(cold, none, "{args}");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
}

#[test]
fn thread_count_does_not_change_output() {
    for args in ["tr corr --g 2 --n 3", "gap --s 0.5,2", "fredholm --s 2 --nodes 40", "verify identity --max-g 4"] {
        let seq = p5(&format!("--no-cache --sequential {args}"));
        for t in [1, 2, 4] {
            assert_eq!(seq, p5(&format!("--no-cache --threads {t} {args}")), "{args} with {t} threads");
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_p5");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["--no-cache", "sigma", "--max-k", "4"]), Some(0));
    assert_eq!(code(&["--no-cache", "verify", "table"]), Some(1));
    assert_eq!(code(&["sigma", "--max-k"]), Some(2));
    let out = Command::new(bin).args(["gap", "--s", "0", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("0.0,0.0,0.0,1.0,1.0,"));
}
