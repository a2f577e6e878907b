#![allow(dead_code)]

use proptest::prelude::*;
use qline_core::{Gen, NCPoly, Scalar, Var, Word};

/// Polynomial in `s` and `lambda_{1,2}` with small integer coefficients.
pub fn small_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0u32..=3, 0u32..=2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, a, b)| {
            acc + Scalar::from_int(c) * Scalar::s().pow(a) * Scalar::lambda(1, 2).pow(b)
        })
    })
}

pub fn nonzero_poly() -> impl Strategy<Value = Scalar> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Ratio of two small polynomials.
pub fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), nonzero_poly()).prop_map(|(a, b)| a.div(&b))
}

/// Scalar coefficients for noncommutative polynomials: `+-1`, `+-2`, `q`, `1 - q`.
pub fn coeff() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::one()),
        Just(-Scalar::one()),
        Just(Scalar::from_int(2)),
        Just(Scalar::q()),
        Just(Scalar::one() - Scalar::q()),
        Just(Scalar::lambda(1, 2)),
    ]
}

pub fn word(gens: Vec<Gen>, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(gens), 0..=max_len).prop_map(|g| Word::from_gens(&g))
}

pub fn ncpoly(gens: Vec<Gen>, max_len: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(gens, max_len), coeff()), 1..=max_terms)
        .prop_map(NCPoly::from_terms)
}

/// Homogeneous polynomial of degree `d`.
pub fn homogeneous(gens: Vec<Gen>, d: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((prop::collection::vec(prop::sample::select(gens), d), coeff()), 1..=max_terms)
        .prop_map(|ts| NCPoly::from_terms(ts.into_iter().map(|(g, c)| (Word::from_gens(&g), c))))
}

pub fn point_letters(n: u32) -> Vec<Gen> {
    (1..=n).map(Gen::v).collect()
}

pub fn lambda12() -> Var {
    Var::Lambda(1, 2)
}
