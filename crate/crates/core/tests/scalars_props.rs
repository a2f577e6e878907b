mod common;

use std::collections::BTreeMap;

use common::{lambda12, nonzero_poly, small_poly, small_scalar};
use proptest::prelude::*;
use qline_core::scalars::{GaussianRational, StarMap};
use qline_core::{Scalar, Var};

fn unit_point() -> BTreeMap<Var, Scalar> {
    // |(3+4i)/5| = 1, so conj(s) = 1/s there.
    let s0 = Scalar::from_gauss(GaussianRational::from_ratio(3, 5) + GaussianRational::from_ratio(4, 5) * GaussianRational::imag_unit());
    BTreeMap::from([(Var::S, s0), (lambda12(), Scalar::from_ratio(2, 3))])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cancel_common_factor(p in small_poly(), r in nonzero_poly()) {
        prop_assert_eq!((&p * &r).div(&r), p);
    }

    #[test]
    fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&(&a - &b) + &b - &a).is_zero());
    }

    #[test]
    fn substitution_commutes_with_arithmetic(a in small_scalar(), b in small_scalar(), num in -5i64..=5, den in 1i64..=4) {
        let bind = BTreeMap::from([(Var::S, Scalar::from_ratio(num, den))]);
        if let (Ok(sa), Ok(sb)) = (a.substitute(&bind), b.substitute(&bind)) {
            prop_assert_eq!((&a + &b).substitute(&bind).unwrap(), &sa + &sb);
            prop_assert_eq!((&a * &b).substitute(&bind).unwrap(), &sa * &sb);
        }
    }

    #[test]
    fn unit_circle_star(a in small_scalar()) {
        let star = StarMap::real();
        let at = unit_point();
        if let (Ok(v), Ok(sv)) = (a.substitute(&at), star.apply(&a).substitute(&at)) {
            let c = v.as_constant().expect("fully substituted");
            prop_assert_eq!(sv, Scalar::from_gauss(c.conj()));
        }
    }

    #[test]
    fn halve_after_double(a in small_scalar()) {
        prop_assert_eq!(a.double_s().halve_s(), Some(a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn star_is_an_involutive_homomorphism(a in small_scalar(), b in small_scalar()) {
        let star = StarMap::real();
        prop_assert_eq!(star.apply(&star.apply(&a)), a.clone());
        prop_assert_eq!(star.apply(&(&a + &b)), star.apply(&a) + star.apply(&b));
        prop_assert_eq!(star.apply(&(&a * &b)), star.apply(&a) * star.apply(&b));
    }
}

#[test]
fn star_inverts_q() {
    let star = StarMap::real();
    assert_eq!(star.apply(&Scalar::q()), Scalar::q().inv());
    assert_eq!(star.apply(&Scalar::imag_unit()), -Scalar::imag_unit());
    let swap = StarMap::with_pairs(&[(1, 2)]);
    assert_eq!(swap.apply(&Scalar::lambda(1, 3)), Scalar::lambda(2, 3));
}
