mod common;

use std::sync::OnceLock;

use common::{ncpoly, point_letters};
use proptest::prelude::*;
use qline_core::linalg::{all_words, Echelon};
use qline_core::pointalg::{lambda_exceptional, lambda_no_rule, lambda_singular_cubic, PointAlgebra, ReductionCoeffs};
use qline_core::poisson::LambdaMatrix;
use qline_core::rewrite::Strategy as Order;
use qline_core::suites::{jacobi_completion, lambda_preset};
use qline_core::{NCPoly, Scalar};

fn coth_algebra() -> &'static (PointAlgebra, Echelon, Echelon) {
    static A: OnceLock<(PointAlgebra, Echelon, Echelon)> = OnceLock::new();
    A.get_or_init(|| {
        let alg = PointAlgebra::real(lambda_preset("coth:2,3", 3).unwrap());
        let (e2, e3) = (alg.ideal_component(2), alg.ideal_component(3));
        (alg, e2, e3)
    })
}

/// Coefficients read off directly from the quadratic relation
/// `[v_j, v_i] = k (v_j^2 - v_i^2 - lambda (v_i - v_j)^2)`, `k = (q^2-1)/(q^2+1)`.
fn coeff_oracle(lam: &Scalar) -> (Scalar, Scalar, Scalar) {
    let q2 = Scalar::q().pow(2);
    let one = Scalar::one();
    let k = (&q2 - &one).div(&(&q2 + &one));
    let kl = &k * lam;
    let den = &one - &kl;
    ((&one + &kl).div(&den), (-(&k * &(&one + lam))).div(&den), (&k * &(&one - lam)).div(&den))
}

fn rational_lambda() -> impl proptest::strategy::Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_is_congruent_and_idempotent(p in ncpoly(point_letters(3), 3, 4)) {
        let (alg, e2, e3) = coth_algebra();
        let nf = alg.normal_form_deg3(&p).unwrap();
        prop_assert_eq!(alg.normal_form_deg3(&nf).unwrap(), nf.clone());
        let diff = p.sub(&nf);
        prop_assert!(diff.component(0).is_zero() && diff.component(1).is_zero());
        prop_assert!(e2.contains(&diff.component(2)));
        prop_assert!(e3.contains(&diff.component(3)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_coefficients_match_the_relation(lam in rational_lambda()) {
        if let Some(c) = ReductionCoeffs::new(&lam) {
            let (a, b, g) = coeff_oracle(&lam);
            prop_assert_eq!(&c.alpha, &a);
            prop_assert_eq!(&c.beta, &b);
            prop_assert_eq!(&c.gamma, &g);
            prop_assert_eq!(&c.beta + &c.gamma, Scalar::one() - &c.alpha);
            let q2 = Scalar::q().pow(2);
            let q4 = q2.pow(2);
            let one = Scalar::one();
            let two = Scalar::from_int(2);
            let closed = (&two * &(&q4 + &one) - &two * &(&lam * &(&q4 - &one)))
                .div(&(&lam * &(&q2 - &one) - (&q2 + &one)).pow(2));
            prop_assert_eq!(c.one_minus_beta_gamma(), closed);
        }
    }
}

#[test]
fn symbolic_reduction_coefficients() {
    let lam = Scalar::lambda(1, 2);
    let c = ReductionCoeffs::new(&lam).unwrap();
    assert_eq!((c.alpha.clone(), c.beta.clone(), c.gamma.clone()), coeff_oracle(&lam));
    assert_eq!(ReductionCoeffs::closed_forms(&lam), Some((c.beta, c.gamma)));
    assert!(ReductionCoeffs::new(&lambda_no_rule()).is_none());
}

#[test]
fn rewriting_orders_agree_on_all_cubic_words() {
    for alg in [
        PointAlgebra::real(lambda_preset("coth:2,3", 3).unwrap()),
        PointAlgebra::real(LambdaMatrix::constant(vec![1, 2, 3], &Scalar::one())),
        PointAlgebra::exceptional(vec![1, 2, 3]),
    ] {
        for w in all_words(&point_letters(3), 3) {
            let p = NCPoly::word(w.clone());
            let a = alg.normal_form_deg3_with(&p, Order::Leftmost).unwrap();
            let b = alg.normal_form_deg3_with(&p, Order::LongestRightmost).unwrap();
            assert_eq!(a, b, "word {w:?}");
            assert_eq!(alg.normal_form_deg3(&a).unwrap(), a);
        }
    }
}

/// Ordered monomials are a degree-3 basis exactly for the eligible
/// parameters. The dimension alone does not see the exclusion values.
#[test]
fn ordered_monomials_track_eligibility() {
    let two = Scalar::from_int(2);
    let mut cases = vec![
        LambdaMatrix::constant(vec![1, 2, 3], &Scalar::one()),
        LambdaMatrix::constant(vec![1, 2, 3], &Scalar::zero()),
        lambda_preset("coth:2,3", 3).unwrap(),
        LambdaMatrix::constant(vec![1, 2, 3], &lambda_exceptional()),
    ];
    for l12 in [lambda_no_rule(), lambda_singular_cubic(), Scalar::from_int(3), Scalar::from_ratio(-1, 2)] {
        cases.push(jacobi_completion(&l12, &two));
    }
    let mut broken = jacobi_completion(&Scalar::from_int(3), &two);
    broken.set(1, 3, Scalar::from_int(7));
    cases.push(broken);
    for lam in cases {
        let alg = PointAlgebra::real(lam.clone());
        assert_eq!(alg.ordered_monomials_independent(3), alg.pbw_eligible(), "{:?}", lam.pairs().iter().map(|&(i, j)| lam.get(i, j).to_string()).collect::<Vec<_>>());
    }
}
