mod common;

use common::{coeff, homogeneous, ncpoly, point_letters};
use proptest::prelude::*;
use qline_core::poisson::{cmul, t, LambdaMatrix, PoissonContext};
use qline_core::uqaction::{act, operator_relation_residues, ActionTable, UqOp};
use qline_core::{Gen, GenKind, NCPoly, Scalar, StarStructure};

fn mixed_letters() -> Vec<Gen> {
    vec![Gen::v(1), Gen::v(2), Gen::new(GenKind::W, 3), Gen::new(GenKind::WStar, 3), Gen::t(4)]
}

fn t_letters() -> Vec<Gen> {
    (1..=3).map(Gen::t).collect()
}

fn lambda3() -> LambdaMatrix {
    let mut m = LambdaMatrix::new(vec![1, 2, 3]);
    m.set(1, 2, Scalar::from_int(2));
    m.set(1, 3, Scalar::lambda(1, 3));
    m.set(2, 3, Scalar::from_ratio(1, 3));
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_is_associative(a in ncpoly(mixed_letters(), 2, 3), b in ncpoly(mixed_letters(), 2, 3), c in ncpoly(mixed_letters(), 2, 3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(a in ncpoly(mixed_letters(), 3, 3), b in ncpoly(mixed_letters(), 3, 3)) {
        for st in [StarStructure::real(), StarStructure::complexified(&[(1, 2)])] {
            prop_assert_eq!(st.apply(&st.apply(&a)), a.clone());
            prop_assert_eq!(st.apply(&a.mul(&b)), st.apply(&b).mul(&st.apply(&a)));
        }
    }

    #[test]
    fn substitution_respects_products(a in ncpoly(point_letters(3), 2, 3), b in ncpoly(point_letters(3), 2, 3), c in coeff()) {
        let map = |g: Gen| (g.index == 2).then(|| NCPoly::gen(Gen::v(1)).scale(&c).add(&NCPoly::gen(Gen::v(3))));
        prop_assert_eq!(a.mul(&b).linear_substitute(&map), a.linear_substitute(&map).mul(&b.linear_substitute(&map)));
    }

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(f in ncpoly(t_letters(), 2, 2), g in ncpoly(t_letters(), 2, 2), h in ncpoly(t_letters(), 2, 2)) {
        let ctx = PoissonContext::new(lambda3());
        let fg = ctx.bracket(&f, &g).unwrap();
        prop_assert!(fg.add(&ctx.bracket(&g, &f).unwrap()).is_zero());
        let lhs = ctx.bracket(&f, &cmul(&g, &h)).unwrap();
        let rhs = cmul(&fg, &h).add(&cmul(&g, &ctx.bracket(&f, &h).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quantum_group_relations_hold(p in ncpoly(point_letters(3), 4, 3)) {
        for r in operator_relation_residues(ActionTable::Point, &p).unwrap() {
            prop_assert!(r.is_zero(), "residue {}", r);
        }
    }

    #[test]
    fn k_scales_by_degree(d in 0usize..=4) {
        let p = NCPoly::monomial(&vec![Gen::v(1); d]).add(&NCPoly::monomial(&vec![Gen::v(2); d]).scale(&Scalar::q()));
        prop_assert_eq!(act(ActionTable::Point, UqOp::K, &p).unwrap(), p.scale(&Scalar::q().powi(-(d as i32))));
    }

    #[test]
    fn k_scales_homogeneous(p in homogeneous(point_letters(3), 3, 4)) {
        prop_assert_eq!(act(ActionTable::Point, UqOp::K, &p).unwrap(), p.scale(&Scalar::q().powi(-3)));
    }
}

#[test]
fn jacobiator_matches_defect_on_generators() {
    let ctx = PoissonContext::new(lambda3());
    let defect = ctx.jacobi_defect(1, 2, 3).unwrap();
    let jac = ctx.jacobiator(&t(1), &t(2), &t(3)).unwrap();
    // Independent: lambda_12 lambda_23 - lambda_12 lambda_13 - lambda_13 lambda_23 + 1.
    let l13 = Scalar::lambda(1, 3);
    let want = Scalar::from_ratio(2, 3) - Scalar::from_int(2) * &l13 - &l13 * Scalar::from_ratio(1, 3) + Scalar::one();
    assert_eq!(defect, want);
    assert!(!jac.is_zero());
}
