use p5_algebra::{parse_rational, q, qi, rational_to_string, GaussianRational, Poly, QRatFun, Rational};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rat(), 0..max_len).prop_map(Poly::new)
}

fn ratfun() -> impl Strategy<Value = QRatFun> {
    (poly(4), poly(4)).prop_filter_map("zero denominator", |(n, d)| QRatFun::new(n, d).ok())
}

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (rat(), rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

proptest! {
    #[test]
    fn rational_round_trips_through_text(r in rat()) {
        prop_assert_eq!(parse_rational(&rational_to_string(&r)).unwrap(), r);
    }

    #[test]
    fn poly_division_identity(a in poly(6), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(5), b in poly(5)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = Poly::gcd(&a, &b);
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn ratfun_field_laws(f in ratfun(), g in ratfun(), h in ratfun()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        if !g.is_zero() {
            prop_assert_eq!(&(&f / &g) * &g, f);
        }
    }

    #[test]
    fn ratfun_is_canonical(f in ratfun()) {
        let d = f.denom();
        prop_assert_eq!(d.lead(), qi(1));
        prop_assert_eq!(Poly::gcd(f.numer(), d).degree(), Some(0));
    }

    #[test]
    fn derivative_is_a_derivation(f in ratfun(), g in ratfun()) {
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_fractions_reassemble(a in rat(), b in rat(), num in poly(3)) {
        prop_assume!(a != b);
        let den = &Poly::linear_root(a.clone()).pow(2) * &Poly::linear_root(b.clone());
        let f = QRatFun::new(num, den).unwrap();
        let terms = f.partial_fractions(&[a, b]).unwrap();
        prop_assert_eq!(QRatFun::from_partial_fractions(&terms), f);
    }

    #[test]
    fn gaussian_norm_is_multiplicative(a in gauss(), b in gauss()) {
        let ab = a.clone() * b.clone();
        prop_assert_eq!(ab.norm_sqr(), a.norm_sqr() * b.norm_sqr());
        prop_assert!((a.clone() * a.conj()).is_real());
    }
}
