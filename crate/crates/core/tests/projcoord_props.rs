mod common;

use std::collections::BTreeSet;

use common::{ncpoly, word};
use proptest::prelude::*;
use qline_core::projcoord::{
    certify_invariant, conjugate_by_y, cross_ratio_table, pair_invariant, MuPair, ProjAlgebra,
};
use qline_core::{Gen, NCPoly, Scalar, Word};

fn laurent_letters() -> Vec<Gen> {
    vec![Gen::x(1), Gen::y(1), Gen::y_inv(1), Gen::x(2), Gen::y(2), Gen::y_inv(2)]
}

fn algebras() -> [ProjAlgebra; 2] {
    let ones = ProjAlgebra::ones(vec![1, 2]).unwrap();
    let mirror = ProjAlgebra::new(vec![1, 2]).unwrap().with_pair(1, 2, MuPair::new(Scalar::one(), Scalar::q()));
    [ones, mirror]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_pairs_cancel(w in word(laurent_letters(), 4), label in 1u32..=2) {
        let wp = NCPoly::word(w.clone());
        for alg in algebras() {
            let want = alg.normal_form(&wp).unwrap();
            for pair in [[Gen::y(label), Gen::y_inv(label)], [Gen::y_inv(label), Gen::y(label)]] {
                let p = NCPoly::word(Word::from_gens(&pair).concat(&w));
                prop_assert_eq!(alg.normal_form(&p).unwrap(), want.clone());
                let p = NCPoly::word(w.concat(&Word::from_gens(&pair)));
                prop_assert_eq!(alg.normal_form(&p).unwrap(), want.clone());
            }
        }
    }

    #[test]
    fn laurent_normal_form_is_idempotent(p in ncpoly(laurent_letters(), 4, 3)) {
        for alg in algebras() {
            let nf = alg.normal_form(&p).unwrap();
            prop_assert_eq!(alg.normal_form(&nf).unwrap(), nf);
        }
    }

    #[test]
    fn normal_form_respects_products(a in ncpoly(laurent_letters(), 2, 2), b in ncpoly(laurent_letters(), 2, 2)) {
        let alg = ProjAlgebra::ones(vec![1, 2]).unwrap();
        let lhs = alg.normal_form(&a.mul(&b)).unwrap();
        let rhs = alg.normal_form(&alg.normal_form(&a).unwrap().mul(&alg.normal_form(&b).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn every_pair_invariant_is_certified() {
    let alg = ProjAlgebra::ones(vec![1, 2, 3, 4]).unwrap();
    for i in 1..=4 {
        for j in 1..=4 {
            if i != j {
                let c = certify_invariant(&alg, i, j).unwrap();
                assert!(c.passed(), "({i}{j}): E {} F {} K {} factorization {}", c.e, c.f, c.k, c.factorization);
            }
        }
    }
}

#[test]
fn pair_invariant_shape() {
    let s = Scalar::s();
    let want = NCPoly::monomial(&[Gen::x(1), Gen::y(2)])
        .scale(&s.inv())
        .sub(&NCPoly::monomial(&[Gen::y(1), Gen::x(2)]).scale(&s));
    assert_eq!(pair_invariant(1, 2), want);
}

#[test]
fn conjugation_examples() {
    let q = Scalar::q();
    let v = |i| NCPoly::gen(Gen::v(i));
    let m = |_, _| q.clone();
    assert_eq!(conjugate_by_y(1, &v(1), &m), v(1).scale(&q.inv()));
    assert_eq!(conjugate_by_y(1, &v(2), &m), v(2).scale(&q.inv()));
    assert_eq!(conjugate_by_y(1, &v(1).sub(&v(2)), &m), v(1).sub(&v(2)).scale(&q.inv()));
}

/// The anharmonic group generated from `C` by `x -> 1/x` and `x -> 1 - x`
/// sits inside the table and is closed under composition; the other six
/// entries are the same functions evaluated at `q^2 C`.
#[test]
fn table_closes_under_composition() {
    let table = cross_ratio_table([1, 2, 3, 4]).unwrap();
    assert_eq!(table.values.len(), 24);
    let c = Scalar::var(table.symbol);
    let mut group: Vec<Scalar> = vec![c.clone()];
    let mut i = 0;
    while i < group.len() {
        for next in [group[i].inv(), Scalar::one() - &group[i]] {
            if !group.contains(&next) {
                group.push(next);
            }
        }
        i += 1;
    }
    assert_eq!(group.len(), 6);
    for f in &group {
        for g in &group {
            assert!(group.contains(&f.subst1(table.symbol, g).unwrap()));
        }
    }
    let twisted: Vec<Scalar> = group.iter().map(|f| f.subst1(table.symbol, &(Scalar::q().pow(2) * &c)).unwrap()).collect();
    let distinct: BTreeSet<String> = table.values.values().map(|v| v.to_string()).collect();
    let expected: BTreeSet<String> = group.iter().chain(&twisted).map(|v| v.to_string()).collect();
    assert_eq!(distinct, expected);
    for v in table.values.values() {
        assert_eq!(table.values.values().filter(|w| *w == v).count(), 2);
    }
}
