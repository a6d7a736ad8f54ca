//! Exact rational arithmetic.
//!
//! `BigRational` (a reduced ratio of big integers) carries every exact
//! quantity in the engine: harmonic numbers, telescoped coefficients,
//! closed-form coefficients. The arithmetic itself comes from
//! `num-rational`; results are always in lowest terms with a positive
//! denominator, and addition/multiplication chains are bit-exact
//! regardless of evaluation order.

use core::cmp::Ordering;

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Checked division; a zero divisor is a reported error, not a panic.
pub fn rational_div_checked(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    use num_traits::Zero;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Total order on exact rationals.
pub fn rational_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    a.cmp(b)
}

/// `p/q` from machine integers.
pub fn ratio_i64(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
