//! The complex-log rearrangement check
//!
//!   ln((1-z)/(1-iz)) = ½·ln((1-z)²/(1+z²)) + i·arctan(z),   Re z < 0,
//!
//! with principal branches on both sides.

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};

/// Returns |LHS - RHS| of the rearrangement at `z`; callers assert it is
/// below tolerance. Rejects Re z ≥ 0 (the identity's stated domain).
pub fn log_ratio_check(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigReal> {
    if !z.re.is_negative() {
        return Err(Error::Domain {
            func: "log_ratio_check",
            message: alloc::format!("requires Re z < 0, got Re z = {}", z.re),
        });
    }
    let pi = ctx.pi();
    let bits = ctx.working_bits();
    let one = BigComplex::from_real(BigReal::one(bits));
    let iz = BigComplex::new(z.im.neg(), z.re.clone());
    let one_minus_z = one.sub(z);
    let lhs = one_minus_z.div(&one.sub(&iz))?.ln(pi)?;

    let num = one_minus_z.mul(&one_minus_z);
    let den = one.add(&z.mul(z));
    let half_log = num.div(&den)?.ln(pi)?;
    let atan = z.atan(pi)?;
    // ½·half_log + i·atan
    let rhs = BigComplex::new(
        half_log.re.scale2(-1).sub(&atan.im),
        half_log.im.scale2(-1).add(&atan.re),
    );
    Ok(lhs.sub(&rhs).abs())
}
