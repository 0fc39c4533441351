//! Printer/parser round trip and order monotonicity of evaluation.

use heckeq_core::expr::{eval, parse, BinOp, Call, Expr};
use heckeq_core::{coeff_frac, FracExp, QArg, StringIndex, Verdict};
use proptest::prelude::*;

fn frac(max: i64) -> impl Strategy<Value = FracExp> {
    (-max..=max, 1i64..=4).prop_map(|(n, d)| FracExp::new(n, d))
}

fn pos_frac() -> impl Strategy<Value = FracExp> {
    (1i64..=9, 1i64..=3).prop_map(|(n, d)| FracExp::new(n, d))
}

fn qarg() -> impl Strategy<Value = QArg> {
    (any::<bool>(), frac(8)).prop_map(|(neg, e)| QArg::new(if neg { -1 } else { 1 }, e))
}

fn index() -> impl Strategy<Value = StringIndex> {
    (1i64..=10, -12i64..=12, 0i64..=10).prop_map(|(n, m, l)| {
        let l = l % (n + 1);
        let m = if (m - l) % 2 == 0 { m } else { m + 1 };
        StringIndex::new(n, m, l).unwrap()
    })
}

fn call() -> impl Strategy<Value = Call> {
    prop_oneof![
        (-9i64..=9, 1i64..=30).prop_map(|(a, m)| Call::J { a, m }),
        (-9i64..=9, 1i64..=30).prop_map(|(a, m)| Call::Jb { a, m }),
        (1i64..=30).prop_map(|m| Call::Jp { m }),
        (qarg(), pos_frac()).prop_map(|(x, m)| Call::Jt { x, m }),
        (1i64..=12).prop_map(|k| Call::Eta { k }),
        (qarg(), pos_frac(), qarg()).prop_map(|(x, m, z)| Call::Am { x, m, z }),
        (1i64..=6, 1i64..=6, 1i64..=6, qarg(), qarg()).prop_map(|(a, b, c, x, y)| Call::F { a, b, c, x, y }),
        index().prop_map(Call::C),
        index().prop_map(Call::S),
        index().prop_map(Call::Kpl),
        (1i64..=5, 1i64..=7, prop::collection::vec(0i64..7, 0..4), prop_oneof![-3i64..=-1, 1i64..=3]).prop_map(
            |(step, modulus, ex, power)| Call::Rp {
                step,
                modulus,
                excluded: ex.into_iter().map(|r| r % modulus).collect(),
                power,
            }
        ),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Expr::Rat(coeff_frac(n, d))),
        qarg().prop_map(Expr::QPow),
        call().prop_map(Expr::Call),
    ]
}

fn op() -> impl Strategy<Value = BinOp> {
    prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div])
}

fn ast() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (op(), inner.clone(), inner.clone()).prop_map(|(o, l, r)| Expr::bin(o, l, r)),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner, -4i64..=4).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
        ]
    })
}

/// Expressions that always evaluate: division and negative powers only touch
/// series with a nonzero constant-free leading term.
fn safe_leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Expr::Rat(coeff_frac(n, d))),
        qarg().prop_map(Expr::QPow),
        (1i64..=6).prop_map(|m| Expr::Call(Call::Jp { m })),
        (1i64..=4).prop_map(|k| Expr::Call(Call::Eta { k })),
        (1i64..=3, 4i64..=8).prop_map(|(a, m)| Expr::Call(Call::J { a, m })),
        (0i64..=3, 1i64..=6).prop_map(|(a, m)| Expr::Call(Call::Jb { a, m })),
        (1i64..=3, 1i64..=3, 1i64..=3, 0i64..=3, 0i64..=3)
            .prop_map(|(a, b, c, x, y)| Expr::Call(Call::F { a, b, c, x: QArg::q(x), y: QArg::neg_q(y) })),
    ]
}

fn invertible_leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (1i64..=6).prop_map(|m| Expr::Call(Call::Jp { m })),
        (1i64..=4).prop_map(|k| Expr::Call(Call::Eta { k })),
        qarg().prop_map(Expr::QPow),
    ]
}

fn safe_ast() -> impl Strategy<Value = Expr> {
    safe_leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul]), inner.clone(), inner.clone())
                .prop_map(|(o, l, r)| Expr::bin(o, l, r)),
            (inner.clone(), invertible_leaf()).prop_map(|(l, r)| Expr::bin(BinOp::Div, l, r)),
            (inner.clone(), 1i64..=3).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            (invertible_leaf(), -3i64..=-1).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
            inner.prop_map(|e| Expr::Neg(Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(e in ast()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text), Ok(e), "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_order_monotone(e in safe_ast(), lo in 2i64..=8, extra in 1i64..=6) {
        let (o1, o2) = (FracExp::int(lo), FracExp::int(lo + extra));
        let a = eval(&e, o1).unwrap();
        let b = eval(&e, o2).unwrap();
        prop_assert_eq!(a.order(), o1);
        prop_assert_eq!(b.order(), o2);
        prop_assert_eq!(b.equal_to_order(&a, o1), Ok(Verdict::Equal), "{}", e);
    }
}
