use num_traits::Zero;
use p5_algebra::par::Exec;
use p5_algebra::{q, qi, Pole, PoleBasisTensor, Poly, QRatFun, Rational};
use p5_toprec::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn store() -> &'static Store {
    static S: OnceLock<Store> = OnceLock::new();
    S.get_or_init(Store::in_memory)
}

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::new(c.iter().map(|&x| qi(x)).collect())
}

fn z2m1_pow(k: u32) -> Poly<Rational> {
    poly(&[-1, 0, 1]).pow(k)
}

fn ratfun(num: Poly<Rational>, den: Poly<Rational>) -> QRatFun {
    QRatFun::new(num, den).unwrap()
}

fn two_branch(n: usize, c: Rational) -> PoleBasisTensor {
    PoleBasisTensor::from_terms(
        n,
        2 - 2 - n as i32,
        [(vec![Pole::new(1, 2); n], c.clone()), (vec![Pole::new(-1, 2); n], c)],
    )
}

#[test]
fn curve_identities() {
    let c = GapSpectralCurve::new();
    assert!(c.curve_defect().is_zero());
    assert!(c.primitive_defect().is_zero());
    assert!(c.omega_defect().is_zero());
    let cands: Vec<Rational> = (-4..=4).map(qi).chain([q(1, 2), q(-3, 7)]).collect();
    assert_eq!(c.critical_points(&cands), vec![qi(-1), qi(1)]);
    assert_eq!(c.xi.substitute_inverse(), c.xi);
}

#[test]
fn bergman_values() {
    assert_eq!(w2_0(&qi(3), &qi(5)), Some(q(1, 4)));
    assert_eq!(w2_0(&qi(5), &qi(3)), w2_0(&qi(3), &qi(5)));
    assert_eq!(w2_0(&qi(2), &qi(2)), None);
}

#[test]
fn kernel_values() {
    let k = recursion_kernel(&qi(2));
    assert_eq!(k.eval(&qi(3)).unwrap(), q(36, 25));
    assert_eq!(k.pole_order(&qi(2)), 1);
    assert_eq!(k.pole_order(&q(1, 2)), 1);
    assert!(k.eval(&qi(1)).unwrap().is_zero());
    assert!(k.eval(&qi(-1)).unwrap().is_zero());
    assert_eq!(KERNEL_S_GRADE, -1);
}

#[test]
fn unstable_requests() {
    assert!(matches!(store().correlator(0, 1), Ok(Correlator::Omega)));
    assert!(matches!(store().correlator(0, 2), Ok(Correlator::Bergman)));
    assert!(matches!(store().correlator(0, 0), Err(TrError::Unstable { .. })));
    assert!(matches!(store().correlator(1, 0), Err(TrError::Unstable { .. })));
}

#[test]
fn genus_one_one_point() {
    // (z²+1)/(2s(z²−1)²); the printed display carries the opposite sign
    let w = store().tensor(1, 1).unwrap();
    assert_eq!(w.s_grade(), -1);
    assert_eq!(w.to_ratfun().unwrap(), ratfun(poly(&[1, 0, 1]), z2m1_pow(2).scale(&qi(2))));
}

#[test]
fn genus_two_one_point() {
    let w = store().tensor(2, 1).unwrap();
    let num = &poly(&[1, 0, 1]) * &poly(&[1, 0, -11, 0, 1]);
    assert_eq!(w.to_ratfun().unwrap(), ratfun(num, z2m1_pow(4).scale(&qi(-2))));
    assert_eq!(w.s_grade(), -3);
}

#[test]
fn genus_three_one_point() {
    let w = store().tensor(3, 1).unwrap();
    let num = &poly(&[1, 0, 1]) * &poly(&[5, 0, -47, 0, 309, 0, -47, 0, 5]);
    assert_eq!(w.to_ratfun().unwrap(), ratfun(num, z2m1_pow(6)));
}

#[test]
fn genus_four_one_point_carries_z2_plus_one() {
    let w = store().tensor(4, 1).unwrap().to_ratfun().unwrap();
    let inner = poly(&[262, 0, -2841, 0, 15756, 0, -81479, 0, 15756, 0, -2841, 0, 262]);
    let num = &poly(&[1, 0, 1]) * &inner;
    assert_eq!(w, ratfun(num, z2m1_pow(8).scale(&qi(-2))));
    assert_ne!(w, ratfun(inner, z2m1_pow(8).scale(&qi(-2))));
}

#[test]
fn genus_five_one_point() {
    let w = store().tensor(5, 1).unwrap().to_ratfun().unwrap();
    let inner = poly(&[
        1315, 0, -16568, 0, 102133, 0, -434810, 0, 1946095, 0, -434810, 0, 102133, 0, -16568, 0, 1315,
    ]);
    let num = (&poly(&[1, 0, 1]) * &inner).scale(&qi(5));
    assert_eq!(w, ratfun(num, z2m1_pow(10)));
}

#[test]
fn genus_one_multi_point() {
    assert_eq!(*store().tensor(1, 2).unwrap(), two_branch(2, q(1, 2)));
    assert_eq!(*store().tensor(1, 3).unwrap(), two_branch(3, qi(2)));
    assert_eq!(*store().tensor(1, 4).unwrap(), two_branch(4, qi(12)));
    assert_eq!(*store().tensor(1, 5).unwrap(), two_branch(5, qi(96)));
}

#[test]
fn genus_zero_vanishes() {
    for n in 3..=5 {
        assert!(store().tensor(0, n).unwrap().is_zero(), "n = {n}");
    }
}

#[test]
fn free_energies() {
    let expect = [(2, q(1, 8)), (3, q(-5, 8)), (4, q(131, 12)), (5, q(-6575, 16))];
    for (g, c) in expect {
        let f = free_energy(store(), g).unwrap();
        assert_eq!((f.coeff, f.s_power, f.is_log), (c, 2 - 2 * g as i32, false), "g = {g}");
        assert_eq!(f.provenance, Provenance::Computed);
    }
    let f0 = free_energy(store(), 0).unwrap();
    assert_eq!((f0.coeff, f0.s_power, f0.provenance), (q(-1, 8), 2, Provenance::Supplied));
    let f1 = free_energy(store(), 1).unwrap();
    assert!(f1.is_log);
    assert_eq!(f1.coeff, q(1, 4));
}

#[test]
fn main_theorem_through_six() {
    let r = verify_main_theorem(store(), 6).unwrap();
    assert!(r.all_equal, "{:?}", r.failures());
    assert_eq!(r.rows.len(), 7);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["rows"][3]["freeEnergy"]["coeff"], "-5/8");
    assert_eq!(json["rows"][3]["tau"]["coeff"], "-5/8");
}

#[test]
fn conventions_differ_by_parity_of_n() {
    let eo = Store::with_convention(Convention::EynardOrantin, Exec::default(), None);
    for (g, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let sign = if n % 2 == 0 { qi(1) } else { qi(-1) };
        assert_eq!(*eo.tensor(g, n).unwrap(), store().tensor(g, n).unwrap().scale(&sign), "({g},{n})");
    }
    let f2 = free_energy(&eo, 2).unwrap();
    assert_eq!(f2.coeff, q(-1, 8));
}

#[test]
fn sequential_and_parallel_agree() {
    let a = Store::new(Exec::Sequential, None);
    let b = Store::new(Exec::Parallel, None);
    for (g, n) in [(3, 2), (2, 4), (4, 1)] {
        assert_eq!(a.tensor(g, n).unwrap(), b.tensor(g, n).unwrap());
    }
}

#[test]
fn disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cold = Store::new(Exec::default(), Some(dir.path().to_path_buf()));
    let w = cold.tensor(3, 1).unwrap();
    let json = dir.path().join("w_3_1.json");
    let sum = dir.path().join("w_3_1.sha256");
    assert!(json.exists() && sum.exists());
    let body = std::fs::read(&json).unwrap();
    assert_eq!(std::fs::read_to_string(&sum).unwrap(), hex_digest(&body));

    let warm = Store::new(Exec::default(), Some(dir.path().to_path_buf()));
    assert_eq!(warm.tensor(3, 1).unwrap(), w);
    assert_eq!(std::fs::read(&json).unwrap(), body);

    std::fs::write(&json, "{\"nvars\":1,\"sGrade\":-5,\"terms\":[]}").unwrap();
    let healed = Store::new(Exec::default(), Some(dir.path().to_path_buf()));
    assert_eq!(healed.tensor(3, 1).unwrap(), w);
    assert_eq!(std::fs::read(&json).unwrap(), body);
}

#[test]
fn cache_dir_resolution() {
    let flag = std::path::Path::new("/tmp/flagged");
    assert_eq!(resolve_cache_dir(Some(flag)), flag);
    assert_eq!(CACHE_ENV, "P5_CACHE_DIR");
    if std::env::var_os(CACHE_ENV).is_none() {
        assert_eq!(resolve_cache_dir(None), std::path::PathBuf::from(DEFAULT_CACHE_DIR));
    }
}

#[test]
fn latex_layout() {
    let w = store().tensor(2, 1).unwrap();
    assert_eq!(correlator_latex(&w), "-\\frac{(z^2+1)(z^4-11z^2+1)}{2s^3(z^2-1)^4}");
    let w3 = store().tensor(1, 3).unwrap();
    assert!(correlator_latex(&w3).starts_with("\\frac{2}{s^3}\\left("));
    let rows = [(2usize, 1usize, &*w)];
    let tab = correlator_table_latex(&rows);
    assert!(tab.contains("W_1^{(2)}(z)&=&-\\frac"));
    let f = [free_energy(store(), 2).unwrap(), free_energy(store(), 1).unwrap()];
    let fe = free_energy_latex(&f);
    assert!(fe.contains("F^{(2)}&=&\\frac{1}{8s^2}\\cr"));
    assert!(fe.contains("F^{(1)}&=&\\frac{1}{4}\\ln s\\cr"));
}

fn stable_list() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for g in 0..=3 {
        for n in 1..=4 {
            if is_stable(g, n) {
                v.push((g, n));
            }
        }
    }
    v
}

#[test]
fn structural_properties() {
    for (g, n) in stable_list() {
        let w = store().tensor(g, n).unwrap();
        if !w.is_zero() {
            assert_eq!(w.s_grade(), 2 - 2 * g as i32 - n as i32, "grade of ({g},{n})");
        }
        assert!(w.is_symmetric(), "symmetry of ({g},{n})");
        for (poles, _) in w.terms() {
            assert!(poles.iter().all(|p| !p.is_absent()), "({g},{n}) has a regular factor");
        }
        for v in 0..n {
            assert_eq!(w.max_order(v) % 2, 0, "odd top pole in ({g},{n})");
        }
    }
}

#[test]
fn one_point_functions_are_even_and_palindromic() {
    for g in 1..=5 {
        let w = store().tensor(g, 1).unwrap().to_ratfun().unwrap();
        assert_eq!(w.pole_order(&Rational::zero()), 0);
        let c = w.numer().coeffs();
        assert!(c.iter().skip(1).step_by(2).all(Zero::is_zero), "g = {g}");
        let d = c.len() - 1;
        assert!((0..=d).all(|k| c[k] == c[d - k]), "g = {g}");
        let (_, rem) = w.numer().div_rem(&poly(&[1, 0, 1])).unwrap();
        assert!(rem.is_zero(), "g = {g}");
        let back = PoleBasisTensor::from_ratfun(&w, 1 - 2 * g as i32).unwrap();
        assert_eq!(back, *store().tensor(g, 1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_at_rational_points(a in 2i64..40, b in 2i64..40, c in 2i64..40, d in 1i64..9) {
        let pts = [q(a, d), q(-b, d + 1), q(c, 3)];
        let w = store().tensor(2, 3).unwrap();
        let s = q(3, 2);
        let v = w.eval(&pts, &s);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        let swapped = [pts[2].clone(), pts[0].clone(), pts[1].clone()];
        prop_assert_eq!(w.eval(&swapped, &s).unwrap(), v);
    }

    #[test]
    fn free_energy_integrand_residues_cancel(g in 2usize..6) {
        let w = store().tensor(g, 1).unwrap().to_ratfun().unwrap();
        let f = &GapSpectralCurve::new().phi * &w;
        let total = f.residue_at(&qi(1)).unwrap()
            + f.residue_at(&qi(-1)).unwrap()
            + f.residue_at(&Rational::zero()).unwrap()
            + f.residue_at_infinity();
        prop_assert!(total.is_zero());
    }
}
