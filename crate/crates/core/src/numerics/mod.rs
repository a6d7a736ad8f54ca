//! Arbitrary-precision arithmetic layer.
//!
//! Everything numeric in this crate computes through [`BigReal`] /
//! [`BigComplex`] at the working precision of a [`PrecisionContext`], or
//! through exact [`BigRational`] arithmetic. The context carries the
//! precision policy: all internal arithmetic runs at `working_bits`, and
//! only final reported values are rounded to `target_digits`.
//!
//! The multiprecision kernel itself is `astro-float`; this module wraps it
//! behind the precision contract and adds exact conversions to and from
//! `num-bigint` integers and decimal scientific notation.

mod complex;
mod context;
pub mod decimal;
mod rational;
mod real;

pub use complex::BigComplex;
pub use context::{make_context, make_context_with_ceiling, PrecisionContext, DEFAULT_DIGITS_CEILING};
pub use rational::{ratio_i64, rational_cmp, rational_div_checked, BigRational};
pub use real::BigReal;

use astro_float::{Consts, RoundingMode};

/// Rounding mode used for every inexact operation.
pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Runs `f` with a mutable handle to the transcendental-constants cache
/// used by the underlying kernel (argument reduction for trig functions,
/// internal ln/pi tables).
///
/// With `std` the cache is thread-local, so concurrent verification tasks
/// never contend; each thread pays the cache warm-up once. Without `std` a
/// fresh cache is built per call, which is slower but keeps the crate free
/// of synchronization primitives.
#[cfg(feature = "std")]
pub(crate) fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    std::thread_local! {
        static CONSTS: core::cell::RefCell<Consts> =
            core::cell::RefCell::new(Consts::new().expect("constants cache allocation"));
    }
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[cfg(not(feature = "std"))]
pub(crate) fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    let mut cc = Consts::new().expect("constants cache allocation");
    f(&mut cc)
}

/// Free-function form of the cached π accessor.
pub fn const_pi(ctx: &PrecisionContext) -> BigReal {
    ctx.pi().clone()
}

/// Free-function form of the cached ln 2 accessor.
pub fn const_ln2(ctx: &PrecisionContext) -> BigReal {
    ctx.ln2().clone()
}
