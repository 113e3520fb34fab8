//! Exact rationals, backed by `num-rational` (always reduced, positive denominator).

pub use num_rational::BigRational;

use num_bigint::BigInt;

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
