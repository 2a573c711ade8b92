use p5_algebra::{q, qi, AlgebraError, GaussianRational, Poly, QRatFun, Rational};

fn z() -> QRatFun {
    QRatFun::z()
}

fn c(n: i64) -> QRatFun {
    QRatFun::constant(qi(n))
}

/// (z²+1)/((z−1)²(z+1)²)
fn w11_shape() -> QRatFun {
    let num = &(&z() * &z()) + &c(1);
    let den = &(&z() * &z()) - &c(1);
    &num / &(&den * &den)
}

#[test]
fn canonical_form_is_reduced_and_monic() {
    let f = QRatFun::new(
        Poly::new(vec![qi(-2), qi(0), qi(2)]),
        Poly::new(vec![qi(3), qi(3)]),
    )
    .unwrap();
    // 2(z²−1)/(3(z+1)) = (2/3)(z−1)
    assert_eq!(f.denom(), &Poly::one());
    assert_eq!(f.numer(), &Poly::new(vec![q(-2, 3), q(2, 3)]));
}

#[test]
fn geometric_series() {
    let f = &c(1) / &(&c(1) - &z());
    let l = f.laurent_expand(&qi(0), 3).unwrap();
    assert_eq!(l.valuation, 0);
    assert_eq!(l.coeffs, vec![qi(1); 4]);
}

#[test]
fn simple_pole_expansion() {
    let f = &c(1) / &z();
    let l = f.laurent_expand(&qi(0), 0).unwrap();
    assert_eq!(l.valuation, -1);
    assert_eq!(l.coeff(-1), qi(1));
    assert_eq!(l.coeff(0), qi(0));
}

#[test]
fn double_pole_at_branch_point() {
    let l = w11_shape().laurent_expand(&qi(1), -1).unwrap();
    assert_eq!(l.valuation, -2);
    assert_eq!(l.coeff(-2), q(1, 2));
    assert_eq!(l.coeff(-1), qi(0));
}

#[test]
fn order_below_valuation_is_rejected() {
    let err = w11_shape().laurent_expand(&qi(1), -3).unwrap_err();
    assert_eq!(err, AlgebraError::OrderBelowValuation { order: -3, valuation: -2 });
}

#[test]
fn residues() {
    assert_eq!((&c(1) / &z()).residue_at(&qi(0)).unwrap(), qi(1));
    let f = &c(1) / &(&(&z() * &z()) - &c(1));
    assert_eq!(f.residue_at(&qi(1)).unwrap(), q(1, 2));
    assert_eq!(w11_shape().residue_at(&qi(1)).unwrap(), qi(0));
    assert_eq!(z().residue_at(&qi(5)).unwrap(), qi(0));
}

#[test]
fn residue_theorem_on_proper_function() {
    let f = &(&z() + &c(3)) / &(&(&z() - &c(2)) * &(&z() * &z()));
    let total: Rational = [qi(0), qi(2)].iter().map(|p| f.residue_at(p).unwrap()).sum();
    assert_eq!(total + f.residue_at_infinity(), qi(0));
}

#[test]
fn partial_fraction_examples() {
    let pf = w11_shape().partial_fractions(&[qi(1), qi(-1)]).unwrap();
    let got: Vec<(Rational, u32, Rational)> =
        pf.iter().map(|t| (t.point.clone(), t.order, t.coeff.clone())).collect();
    assert_eq!(got, vec![(qi(1), 2, q(1, 2)), (qi(-1), 2, q(1, 2))]);
    let pf = (&c(1) / &z()).partial_fractions(&[qi(0)]).unwrap();
    assert_eq!(pf.len(), 1);
    assert_eq!((pf[0].order, pf[0].coeff.clone()), (1, qi(1)));
    assert!(matches!(
        (&z() * &z()).partial_fractions(&[qi(1)]),
        Err(AlgebraError::Improper { .. })
    ));
}

#[test]
fn unlisted_pole_names_the_factor() {
    let f = &c(1) / &(&(&z() * &z()) + &c(1));
    match f.partial_fractions(&[qi(1), qi(-1)]) {
        Err(AlgebraError::UnlistedPole { factor }) => assert!(factor.contains("z^2")),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn inverse_substitution_examples() {
    let z2 = &z() * &z();
    assert_eq!(z2.substitute_inverse(), &c(1) / &z2);
    let f = &(&z2 + &c(1)) / &(&z2 - &c(1));
    assert_eq!(f.substitute_inverse(), -&f);
    assert_eq!(c(7).substitute_inverse(), c(7));
}

#[test]
fn composition_and_derivative() {
    let xi = &(&(&z() + &c(1)) * &(&z() + &c(1))) / &(&c(4) * &z());
    let d = xi.derivative();
    let expect = &(&(&z() * &z()) - &c(1)) / &(&c(4) * &(&z() * &z()));
    assert_eq!(d, expect);
    let g = &c(1) / &z();
    assert_eq!(xi.compose(&g), xi);
}

#[test]
fn gaussian_strings_round_trip() {
    for s in ["1/2+3/4*i", "-1/2-3*i", "5", "-2/3*i", "1*i", "0"] {
        let g: GaussianRational = s.parse().unwrap();
        assert_eq!(g.to_string(), s);
    }
    let g = GaussianRational::new(q(-1, 2), q(3, 4));
    assert_eq!(g.clone() * g.conj(), GaussianRational::from(g.norm_sqr()));
}
