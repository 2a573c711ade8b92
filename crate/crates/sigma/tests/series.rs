use num_traits::{One, Zero};
use p5_algebra::{q, qi, GaussianRational, Rational};
use p5_sigma::*;
use proptest::prelude::*;

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

#[test]
fn first_sigma_values() {
    let s = sigma_coeffs(4);
    assert_eq!(s.coeffs, vec![q(1, 16), q(1, 4), qi(1), qi(40), qi(4192)]);
    assert_eq!(sigma_coeffs(0).coeffs, vec![q(1, 16)]);
}

#[test]
fn sigma_5_kills_chazy_residual() {
    let s = sigma_coeffs(5);
    assert_eq!(s.get(5), &qi(841600));
    let res = chazy_residual(&s.coeffs, 1);
    assert!(res.iter().all(Zero::is_zero));
}

#[test]
fn printed_recursion_misses_at_sigma_4() {
    let p = printed_recursion(4);
    assert_eq!(p[..4], sigma_coeffs(3).coeffs[..]);
    assert_eq!(p[4], qi(4208));
}

#[test]
fn integral_to_fifty() {
    assert!(sigma_coeffs(50).is_integral_from(2));
}

#[test]
fn tau_examples() {
    let t = tau_coeffs(5);
    assert_eq!((t[0].coeff.clone(), t[0].s_power, t[0].is_log), (q(-1, 8), 2, false));
    assert_eq!((t[1].coeff.clone(), t[1].is_log), (q(1, 4), true));
    assert_eq!((t[4].coeff.clone(), t[4].s_power), (q(131, 12), -6));
    assert_eq!(t[5].coeff, q(-6575, 16));
}

#[test]
fn sigma_hat_examples() {
    let h = sigma_hat_series(2);
    let got: Vec<_> = h.iter().map(|t| (t.coeff.clone(), t.s_power, t.pi_power)).collect();
    assert_eq!(got, vec![(q(-1, 4), 2, 2), (q(1, 4), 0, 2), (q(-1, 4), -2, 2)]);
}

#[test]
fn lax_examples() {
    let lax = lax_expansions(6);
    assert_eq!(lax.z_coeffs[0], q(-1, 8));
    assert_eq!(lax.z_coeffs[3], qi(160));
    assert_eq!(lax.y_coeffs[0], g(qi(-1), Rational::zero()));
    assert_eq!(lax.y_coeffs[1], g(Rational::zero(), qi(-4)));
    assert_eq!(lax.c(0), g(q(-1, 16), Rational::zero()));
    assert_eq!(lax.d(-1), g(Rational::zero(), q(-1, 2)));
    let (c, d) = cd_coeffs(6);
    assert_eq!(c, lax.c_coeffs);
    assert_eq!(d, lax.d_coeffs);
}

#[test]
fn lax_residual_vanishes() {
    let r = lax_residual(10);
    assert!(r.all(), "{r:?}");
}

#[test]
fn convention_round_trip() {
    let lax = lax_expansions(6);
    let back = lax
        .in_convention(HbarConvention::Section3)
        .in_convention(HbarConvention::AppendixB);
    assert_eq!(back.y_coeffs, lax.y_coeffs);
    assert_eq!(back.c_coeffs, lax.c_coeffs);
}

#[test]
fn discrepancy_report() {
    let d = discrepancies(8);
    let locs: Vec<_> = d.iter().map(|x| x.computed_value.as_str()).collect();
    assert!(locs.contains(&"4192"));
    assert!(locs.contains(&"-6575/16"));
    assert!(locs.contains(&"160"));
    let json = serde_json::to_value(SigmaReport::new(5)).unwrap();
    assert_eq!(json["sigma"][4], "4192");
    assert_eq!(json["tau"][4]["coeff"], "131/12");
    assert_eq!(json["tau"][4]["sPower"], -6);
    assert!(json["discrepancies"][0]["printedValue"].is_string());
}

#[test]
fn latex_series() {
    let tex = tau_latex(&tau_coeffs(5));
    assert!(tex.starts_with("\\log \\hat{\\tau}(s)=-\\frac{s^2}{8\\hbar^2}+\\frac{1}{4}\\ln s+\\frac{\\hbar^2}{8s^2}"));
    assert!(tex.contains("+\\frac{131\\hbar^6}{12s^6}"));
    assert!(tex.ends_with("+O(\\hbar^{10})"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_matches_sigma(gn in 0usize..30) {
        prop_assume!(gn != 1);
        let s = sigma_coeffs(gn);
        let t = tau_coeffs(gn);
        let lhs = qi(2 - 2 * gn as i64) * t[gn].coeff.clone();
        let sign = if gn % 2 == 1 { qi(1) } else { qi(-1) };
        let rhs = sign * pow2(2 - 2 * gn as i32) * s.get(gn).clone();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t[gn].s_power, 2 - 2 * gn as i32);
    }

    #[test]
    fn chazy_residual_zero(k in 0usize..25) {
        let s = sigma_coeffs(k);
        prop_assert!(chazy_residual(&s.coeffs, 1).iter().all(Zero::is_zero));
    }

    #[test]
    fn sigma_prefix_stable(a in 0usize..30, b in 0usize..30) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert_eq!(&sigma_coeffs(hi).coeffs[..=lo], &sigma_coeffs(lo).coeffs[..]);
    }

    #[test]
    fn lax_residual_any_order(k in 1usize..9) {
        prop_assert!(lax_residual(k).all());
    }
}

fn pow2(e: i32) -> Rational {
    if e >= 0 { qi(1i64 << e) } else { Rational::one() / qi(1i64 << (-e)) }
}
