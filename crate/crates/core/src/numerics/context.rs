//! Precision contexts.

use super::{with_cc, BigReal, RM};
use crate::error::{Error, Result};

/// Default ceiling on requested digits; guards against accidental
/// resource exhaustion (a 10^5-digit request would take hours).
pub const DEFAULT_DIGITS_CEILING: u32 = 10_000;

/// Extra decimal digits of working slack on top of the certified target.
/// Sized to absorb accumulated roundoff across ~10^6-term summations.
const DEFAULT_GUARD_DIGITS: u32 = 15;

/// Carries the working precision for one verification run.
///
/// `working_bits >= ceil((target_digits + guard_digits) * log2(10))`, so a
/// value rounded to `target_digits` at the end is certified as long as the
/// accumulated roundoff stays inside the guard digits. π and ln 2 are
/// computed once at construction and shared immutably; a context is cheap
/// to clone and safe to use from several threads at once.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
    working_bits: usize,
    pi: BigReal,
    ln2: BigReal,
}

/// `ceil(d * log2(10))` computed with a slight upper bound of log2(10) so
/// the invariant holds without floating point.
fn digits_to_bits(d: u64) -> usize {
    (d as u128 * 3_321_929).div_ceil(1_000_000) as usize
}

pub fn make_context(target_digits: u32) -> Result<PrecisionContext> {
    make_context_with_ceiling(target_digits, DEFAULT_DIGITS_CEILING)
}

pub fn make_context_with_ceiling(target_digits: u32, ceiling: u32) -> Result<PrecisionContext> {
    if target_digits == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("target_digits must be at least 1"),
        });
    }
    if target_digits > ceiling {
        return Err(Error::ResourceLimit {
            what: "target_digits",
            requested: target_digits as u64,
            ceiling: ceiling as u64,
        });
    }
    let guard_digits = DEFAULT_GUARD_DIGITS;
    let working_bits = digits_to_bits((target_digits + guard_digits) as u64);
    let pi = BigReal::from_raw(with_cc(|cc| cc.pi(working_bits, RM)), working_bits);
    let ln2 = BigReal::from_raw(with_cc(|cc| cc.ln_2(working_bits, RM)), working_bits);
    Ok(PrecisionContext {
        target_digits,
        guard_digits,
        working_bits,
        pi,
        ln2,
    })
}

impl PrecisionContext {
    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_bits(&self) -> usize {
        self.working_bits
    }

    pub fn pi(&self) -> &BigReal {
        &self.pi
    }

    pub fn ln2(&self) -> &BigReal {
        &self.ln2
    }

    pub fn zero(&self) -> BigReal {
        BigReal::zero(self.working_bits)
    }

    pub fn one(&self) -> BigReal {
        BigReal::one(self.working_bits)
    }

    pub fn real_from_u64(&self, v: u64) -> BigReal {
        BigReal::from_u64(v, self.working_bits)
    }

    pub fn real_from_i64(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.working_bits)
    }

    /// `10^-k` at working precision.
    pub fn pow10_neg(&self, k: u32) -> BigReal {
        let ten = self.real_from_u64(10);
        ten.powi(k as i64).recip()
    }

    /// `10^-target_digits`: the certified-error budget of reported values.
    pub fn target_tolerance(&self) -> BigReal {
        self.pow10_neg(self.target_digits)
    }

    /// `10^-(target_digits + guard_digits/2)`: the tolerance to which
    /// internal iterative schemes are driven, leaving half the guard for
    /// accumulation on top.
    pub fn internal_tolerance(&self) -> BigReal {
        self.pow10_neg(self.target_digits + self.guard_digits / 2)
    }

    /// A context with `factor`-times the target digits, for refinement
    /// (recompute-and-compare) checks.
    pub fn refined(&self, factor: u32) -> Result<PrecisionContext> {
        make_context_with_ceiling(self.target_digits * factor, u32::MAX)
    }
}
