use proptest::prelude::*;
use qline_core::expr::{eval_scalar, num, parse_expr, parse_poly, Alphabet, Context, Expr, ExprError, Name};
use qline_core::{Gen, GenKind, NCPoly, Scalar, Var};

fn name() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Name::Q),
        Just(Name::S),
        Just(Name::I),
        (1u32..4, 4u32..7).prop_map(|(a, b)| Name::Var(Var::Lambda(a, b))),
        (1u32..4, 4u32..7).prop_map(|(a, b)| Name::Var(Var::Mu(a, b))),
        (1u32..5).prop_map(|k| Name::Var(Var::T(k))),
    ]
    .prop_map(Expr::Name)
}

fn letter() -> impl Strategy<Value = Expr> {
    let kinds = vec![GenKind::V, GenKind::X, GenKind::U, GenKind::W, GenKind::WStar, GenKind::T];
    (prop::sample::select(kinds), 1u32..10).prop_map(|(k, i)| Expr::Letter(Gen::new(k, i)))
}

fn leaf(letters: bool) -> BoxedStrategy<Expr> {
    let numbers = (0i64..30, 1i64..6).prop_map(|(n, d)| num(n, d));
    if letters {
        prop_oneof![numbers, name(), letter()].boxed()
    } else {
        prop_oneof![numbers, name()].boxed()
    }
}

fn ast(letters: bool) -> impl Strategy<Value = Expr> {
    leaf(letters).prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner, -3i64..=3).prop_map(move |(x, e)| Expr::Pow(b(x), e)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn print_then_parse_is_identity(e in ast(true)) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e, "text {}", text);
    }

    #[test]
    fn printed_scalars_evaluate_alike(e in ast(false)) {
        let again = parse_expr(&e.to_string()).unwrap();
        match (eval_scalar(&e), eval_scalar(&again)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}

#[test]
fn positions_in_diagnostics() {
    match parse_expr("v1 +\n  v2 v3") {
        Err(ExprError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 6)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_expr("(v1"), Err(ExprError::Syntax { .. })));
    assert!(matches!(parse_expr("v1 $ v2"), Err(ExprError::Syntax { .. })));
}

#[test]
fn inverse_letters_in_coordinates() {
    let ctx = Context::new(Alphabet::Coordinates, Some(vec![1, 2]));
    let p = parse_poly("y1^-2*x2 - q*x1", &ctx).unwrap();
    let want = NCPoly::monomial(&[Gen::y_inv(1), Gen::y_inv(1), Gen::x(2)])
        .sub(&NCPoly::gen(Gen::x(1)).scale(&Scalar::q()));
    assert_eq!(p, want);
    assert!(parse_poly("x1^-1", &ctx).is_err());
    assert!(matches!(parse_poly("y3", &ctx), Err(ExprError::UnknownIndex(3))));
}
