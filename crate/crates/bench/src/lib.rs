//! Fixed workloads shared by the benchmarks.

use heckeq_core::hecke::DoubleSumParams;
use heckeq_core::theta::euler;
use heckeq_core::{FracExp, FracSeries, QArg, StringIndex};

/// `J_1` to `order`: a dense series with small integer coefficients.
pub fn dense_series(order: i64) -> FracSeries {
    euler(1, FracExp::int(order))
}

/// The double sum on the left of the level-ten identity `f_{6,6,1}(q^6, q^4, q)`.
pub fn level_ten_sum() -> DoubleSumParams {
    DoubleSumParams::new(6, 6, 1, QArg::q(6), QArg::q(4))
}

pub fn level_ten_index() -> StringIndex {
    StringIndex::new(10, 9, 1).expect("valid index")
}
