//! Weight-multiplicity structure of string functions.

use heckeq_core::string::{s_exponent, string_c_triple, string_kp_lattice, string_s_hecke};
use heckeq_core::{FracExp, StringIndex, Verdict};
use num_traits::Signed;
use proptest::prelude::*;

const SUITE_INDICES: [(i64, i64, i64); 12] = [
    (2, 1, 1),
    (4, 2, 0),
    (4, 2, 2),
    (6, 5, 1),
    (8, 6, 2),
    (10, 9, 1),
    (1, 0, 0),
    (6, 1, 3),
    (8, 2, 4),
    (10, 5, 3),
    (10, 1, 5),
    (4, 0, 0),
];

/// `q^{-s} C^N_{m,ℓ}` counts weights, so its coefficients are nonnegative
/// integers on the integer grid.
#[test]
fn multiplicities_are_nonnegative_integers() {
    for (n, m, l) in SUITE_INDICES {
        let idx = StringIndex::new(n, m, l).unwrap();
        let c = string_c_triple(&idx, FracExp::int(20)).unwrap();
        let s = s_exponent(&idx);
        let mut count = 0;
        for (e, k) in c.terms() {
            let shifted = *e - s;
            assert!(shifted.is_integer() && !shifted.is_negative(), "{idx}: exponent {e}");
            assert!(k.is_integer() && !k.is_negative(), "{idx}: coefficient {k} at {e}");
            count += 1;
        }
        assert!(count > 0, "{idx}");
        // the top weight itself has multiplicity one when m ≤ ℓ
        let canon = idx.canonical();
        if canon.m <= canon.l {
            assert_eq!(c.coeff(s), heckeq_core::coeff(1), "{idx}");
        }
    }
}

fn any_index() -> impl Strategy<Value = StringIndex> {
    (1i64..=8, -10i64..=10, 0i64..=8).prop_map(|(n, m, l)| {
        let l = l % (n + 1);
        let m = if (m - l).rem_euclid(2) == 0 { m } else { m + 1 };
        StringIndex::new(n, m, l).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    /// Three unrelated summations agree for any valid index, including `m`
    /// outside `[0, N]`.
    #[test]
    fn three_methods_agree(idx in any_index()) {
        let o = FracExp::int(12);
        let c = string_c_triple(&idx, o).unwrap();
        let s = string_s_hecke(&idx, o).unwrap();
        let k = string_kp_lattice(&idx, o).unwrap();
        prop_assert_eq!(c.equal_to_order(&s, o), Ok(Verdict::Equal));
        prop_assert_eq!(c.equal_to_order(&k, o), Ok(Verdict::Equal));
    }

    #[test]
    fn symmetries_of_the_hecke_form(idx in any_index()) {
        let o = FracExp::int(12);
        let (n, m, l) = (idx.n, idx.m, idx.l);
        let base = string_s_hecke(&idx, o).unwrap();
        for (m2, l2) in [(-m, l), (2 * n - m, l), (n - m, n - l)] {
            let other = string_s_hecke(&StringIndex::new(n, m2, l2).unwrap(), o).unwrap();
            prop_assert_eq!(base.equal_to_order(&other, o), Ok(Verdict::Equal));
        }
    }
}
