//! Theta-function identities over random arguments.

use heckeq_core::theta::{is_singular, j, jtheta, JForm};
use heckeq_core::{FracExp, FracSeries, QArg, Verdict};
use proptest::prelude::*;

fn qarg() -> impl Strategy<Value = QArg> {
    (any::<bool>(), -12i64..=12, 1i64..=4).prop_map(|(neg, n, d)| {
        let e = FracExp::new(n, d);
        // keep |exp| <= 3
        let e = if e.abs() > FracExp::int(3) { FracExp::new(n % 4, d) } else { e };
        QArg::new(if neg { -1 } else { 1 }, e)
    })
}

fn modulus() -> impl Strategy<Value = FracExp> {
    prop::sample::select(vec![FracExp::int(1), FracExp::int(2), FracExp::int(3), FracExp::new(1, 2), FracExp::new(3, 2)])
}

fn same(a: &FracSeries, b: &FracSeries, o: FracExp) -> bool {
    a.equal_to_order(b, o) == Ok(Verdict::Equal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sum_form_equals_product_form(x in qarg(), m in modulus()) {
        let o = FracExp::int(40);
        let s = jtheta(x, m, JForm::Sum, o).unwrap();
        let p = jtheta(x, m, JForm::Product, o).unwrap();
        prop_assert!(same(&s, &p, o));
        prop_assert_eq!(s.is_zero(), is_singular(x, m));
    }

    #[test]
    fn quasi_periodicity(x in qarg(), m in 1i64..=3, n in prop::sample::select(vec![-2i64, -1, 1, 2])) {
        let o = FracExp::int(30);
        let lhs = j(x.shift(m * n), m, o);
        let c = QArg::new(if n % 2 == 0 { 1 } else { -1 }, FracExp::int(-m * n * (n - 1) / 2)) * x.pow(-n);
        let rhs = j(x, m, o + c.exp().abs() + FracExp::int(10)).mul_qarg(c);
        prop_assert!(same(&lhs, &rhs, o));
    }

    #[test]
    fn reflection(x in qarg(), m in 1i64..=3) {
        let o = FracExp::int(30);
        prop_assert!(same(&j(x, m, o), &j(x.inv().shift(m), m, o), o));
    }
}
