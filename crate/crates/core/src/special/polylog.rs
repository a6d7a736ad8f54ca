//! Polylogarithms, inverse tangent integrals, Catalan's constant.

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};
use crate::quad::{EvalPoint, IntegrandSpec, Integrator, SingularityClass};

use super::alternating::sum_alternating;
use super::zeta::zeta_int;

/// η(s) = Σ (-1)^(k-1) k^-s (the alternating zeta), s ≥ 1.
pub fn eta_int(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if s < 1 {
        return Err(Error::Domain {
            func: "eta_int",
            message: alloc::format!("s must be at least 1, got {s}"),
        });
    }
    Ok(sum_alternating(
        |k, bits| BigReal::from_u64(k + 1, bits).powi(s as i64).recip(),
        ctx.target_digits() + ctx.guard_digits() / 2,
        ctx.working_bits(),
    ))
}

/// Catalan's constant G = Σ (-1)^k/(2k+1)².
///
/// Always accelerated: the defining series gains two digits per hundredfold
/// work, so term-by-term summation is never used.
pub fn catalan(ctx: &PrecisionContext) -> BigReal {
    sum_alternating(
        |k, bits| {
            let t = BigReal::from_u64(2 * k + 1, bits);
            t.mul(&t).recip()
        },
        ctx.target_digits() + ctx.guard_digits() / 2,
        ctx.working_bits(),
    )
}

/// Inverse tangent integral Ti_n(x) = Σ (-1)^(k+1) x^(2k-1)/(2k-1)^n for
/// |x| ≤ 1; Ti_1 = arctan.
///
/// At |x| = 1 the alternating tail decays only polynomially, so the
/// accelerated scheme is used there; inside the disc the series is summed
/// directly with its first-omitted-term bound (the terms decrease in
/// magnitude, so the truncation error is below the first omitted term).
pub fn ti_n(n: u32, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 1 {
        return Err(Error::Domain {
            func: "ti_n",
            message: alloc::string::String::from("order must be positive"),
        });
    }
    let bits = ctx.working_bits();
    let one = BigReal::one(bits);
    if x.abs() > one {
        return Err(Error::Domain {
            func: "ti_n",
            message: alloc::format!("|x| must be at most 1, got {x}"),
        });
    }
    if n == 1 {
        return Ok(x.atan());
    }
    if x.abs() == one {
        let v = sum_alternating(
            |k, bits| BigReal::from_u64(2 * k + 1, bits).powi(n as i64).recip(),
            ctx.target_digits() + ctx.guard_digits() / 2,
            bits,
        );
        return Ok(if x.is_negative() { v.neg() } else { v });
    }
    // direct alternating series
    let eps_log2 = -(bits as i64 + 8);
    let x2 = x.mul(x);
    let mut pow = x.clone(); // x^(2k-1)
    let mut sum = BigReal::zero(bits);
    let mut k: u64 = 1;
    loop {
        let term = pow.div(&BigReal::from_u64(2 * k - 1, bits).powi(n as i64));
        if term.ilog2_approx().is_none_or(|e| e < eps_log2) {
            break;
        }
        sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        pow = pow.mul(&x2);
        k += 1;
        if k > 40_000_000 {
            break; // unreachable for |x| < 1 at supported precisions
        }
    }
    Ok(sum)
}

/// Li_s(x) for integer s ≥ 2 and real |x| ≤ 1.
///
/// Direct series with a proven geometric tail bound
/// Σ_{k>N} |x|^k/k^s ≤ |x|^(N+1)/((N+1)^s (1-|x|)), valid on the whole
/// open disc; the endpoints reduce to ζ(s) and -η(s).
pub fn polylog_int(s: u32, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain {
            func: "polylog_int",
            message: alloc::format!("order must be at least 2, got {s}"),
        });
    }
    let bits = ctx.working_bits();
    let one = BigReal::one(bits);
    if x.abs() > one {
        return Err(Error::Domain {
            func: "polylog_int",
            message: alloc::format!("|x| must be at most 1, got {x}"),
        });
    }
    if x.is_zero() {
        return Ok(BigReal::zero(bits));
    }
    if x.abs() == one {
        let v = if x.is_positive() {
            zeta_int(s, ctx)?
        } else {
            eta_int(s, ctx)?.neg()
        };
        return Ok(v);
    }
    let eps_log2 = -(bits as i64 + 8);
    // tail ≤ |x|^(N+1)/(1-|x|): certify via exponent arithmetic
    let gap_log2 = one.sub(&x.abs()).ilog2_approx().unwrap_or(0);
    let mut sum = BigReal::zero(bits);
    let mut pow = x.clone();
    let mut k: u64 = 1;
    loop {
        sum = sum.add(&pow.div(&BigReal::from_u64(k, bits).powi(s as i64)));
        let tail_log2 = pow.ilog2_approx().unwrap_or(i64::MIN).saturating_add(
            x.abs().ilog2_approx().unwrap_or(0) - gap_log2,
        );
        if tail_log2 < eps_log2 {
            break;
        }
        pow = pow.mul(x);
        k += 1;
        if k > 40_000_000 {
            return Err(Error::NonConvergence {
                what: "polylog series",
                last: sum.to_sci_string(12),
                previous: alloc::string::String::new(),
            });
        }
    }
    Ok(sum)
}

/// Li₄(z) for complex z off the real ray (1, ∞), via the absolutely
/// convergent kernel representation Li₄(z) = -(1/6)·∫₀¹ z·ln³(x)/(1-z·x) dx.
pub fn li4_offcut(
    z: &BigComplex,
    ctx: &PrecisionContext,
    integrator: &mut Integrator,
) -> Result<BigComplex> {
    li4_offcut_with_work(z, ctx, integrator).map(|(v, _)| v)
}

/// As [`li4_offcut`], also returning the quadrature evaluation count.
pub fn li4_offcut_with_work(
    z: &BigComplex,
    ctx: &PrecisionContext,
    integrator: &mut Integrator,
) -> Result<(BigComplex, u64)> {
    let bits = ctx.working_bits();
    if z.im.is_zero() && z.re > BigReal::one(bits) {
        return Err(Error::Domain {
            func: "li4_offcut",
            message: alloc::format!("z = {} lies on the cut (1, inf)", z.re),
        });
    }
    if z.is_zero() {
        return Ok((BigComplex::zero(bits), 0));
    }
    let one_minus_z = BigComplex::from_real(BigReal::one(bits)).sub(z);
    let zc = z.clone();
    let f = move |p: &EvalPoint| -> Result<BigComplex> {
        // ln x from the distance to 0; near 1 use ln(1-w) = ln_1p(-w)
        let ln_x = if p.dist_b < p.dist_a {
            p.dist_b.neg().ln_1p()?
        } else {
            p.dist_a.ln()?
        };
        let ln3 = ln_x.powi(3);
        // 1 - z·x = (1 - z) + z·w with w = 1 - x: exact near x = 1
        let denom = one_minus_z.add(&zc.mul_real(&p.dist_b));
        zc.mul_real(&ln3).div(&denom)
    };
    let spec = IntegrandSpec::new(f, BigReal::zero(bits), BigReal::one(bits), SingularityClass::LogEndpoint);
    let r = integrator.integrate_complex(&spec)?;
    // -(1/6)·I
    let minus_sixth = BigReal::from_i64(-1, bits).div_u64(6);
    Ok((r.value.mul_real(&minus_sixth), r.evaluations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_context;

    #[test]
    fn li4_half_reference_digits() {
        // direct series with geometric 2^-N tail
        let ctx = make_context(30).unwrap();
        let bits = ctx.working_bits();
        let half = BigReal::from_u64_ratio(1, 2, bits);
        let v = polylog_int(4, &half, &ctx).unwrap();
        let s = v.to_sci_string(19);
        assert_eq!(s, "5.174790616738993863e-1");
    }

    #[test]
    fn polylog_at_one_is_zeta() {
        let ctx = make_context(30).unwrap();
        let one = ctx.one();
        let v = polylog_int(4, &one, &ctx).unwrap();
        let z4 = zeta_int(4, &ctx).unwrap();
        assert!(v.sub(&z4).abs() < ctx.target_tolerance());
    }

    #[test]
    fn polylog_at_zero_and_domain() {
        let ctx = make_context(20).unwrap();
        assert!(polylog_int(2, &ctx.zero(), &ctx).unwrap().is_zero());
        assert!(polylog_int(1, &ctx.one(), &ctx).is_err());
        assert!(polylog_int(4, &ctx.real_from_u64(2), &ctx).is_err());
    }

    #[test]
    fn polylog_monotone_on_unit_interval() {
        let ctx = make_context(15).unwrap();
        for s in [2u32, 3, 4] {
            let mut prev = ctx.zero();
            for i in 1..=9u64 {
                let x = ctx.real_from_u64(i).div_u64(10);
                let v = polylog_int(s, &x, &ctx).unwrap();
                assert!(v > prev, "s = {s}, x = {i}/10");
                prev = v;
            }
        }
    }

    #[test]
    fn ti_values_at_one() {
        let ctx = make_context(30).unwrap();
        // Ti₁(1) = arctan 1 = π/4
        let t1 = ti_n(1, &ctx.one(), &ctx).unwrap();
        assert!(t1.sub(&ctx.pi().scale2(-2)).abs() < ctx.target_tolerance());
        // Ti₂(1) = G
        let t2 = ti_n(2, &ctx.one(), &ctx).unwrap();
        assert!(t2.sub(&catalan(&ctx)).abs() < ctx.target_tolerance());
        // Ti₃(1) = π³/32
        let t3 = ti_n(3, &ctx.one(), &ctx).unwrap();
        let pi3_32 = ctx.pi().powi(3).scale2(-5);
        assert!(t3.sub(&pi3_32).abs() < ctx.target_tolerance());
    }

    #[test]
    fn ti_series_tail_bound() {
        // truncating after N terms differs from the converged value by at
        // most the first omitted term
        let ctx = make_context(25).unwrap();
        let bits = ctx.working_bits();
        for (n, num, den, cut) in [(2u32, 1u64, 2u64, 6usize), (3, 3, 4, 9), (2, 9, 10, 14)] {
            let x = BigReal::from_u64_ratio(num, den, bits);
            let full = ti_n(n, &x, &ctx).unwrap();
            // truncated sum and first omitted term
            let x2 = x.mul(&x);
            let mut pow = x.clone();
            let mut sum = BigReal::zero(bits);
            for k in 1..=cut as u64 {
                let term = pow.div(&BigReal::from_u64(2 * k - 1, bits).powi(n as i64));
                sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
                pow = pow.mul(&x2);
            }
            let omitted = pow.div(
                &BigReal::from_u64(2 * (cut as u64 + 1) - 1, bits).powi(n as i64),
            );
            assert!(full.sub(&sum).abs() <= omitted, "n = {n}, x = {num}/{den}");
        }
    }

    #[test]
    fn catalan_reference_digits() {
        let ctx = make_context(20).unwrap();
        let g = catalan(&ctx);
        assert_eq!(g.to_sci_string(21), "9.15965594177219015055e-1");
    }

    #[test]
    fn catalan_refinement() {
        let a = catalan(&make_context(10).unwrap());
        let b = catalan(&make_context(40).unwrap());
        assert!(a.sub(&b).abs() < make_context(10).unwrap().pow10_neg(10));
    }

    #[test]
    fn li4_offcut_matches_series_inside_disc() {
        let ctx = make_context(30).unwrap();
        let mut q = Integrator::new(&ctx);
        let bits = ctx.working_bits();
        let half = BigComplex::from_real(BigReal::from_u64_ratio(1, 2, bits));
        let v = li4_offcut(&half, &ctx, &mut q).unwrap();
        let series = polylog_int(4, &BigReal::from_u64_ratio(1, 2, bits), &ctx).unwrap();
        assert!(v.re.sub(&series).abs() < ctx.target_tolerance());
        assert!(v.im.abs() < ctx.target_tolerance());
    }

    #[test]
    fn li4_offcut_at_minus_one_is_minus_eta4() {
        // Li₄(-1) = -η(4) = -(7/8)ζ(4)
        let ctx = make_context(30).unwrap();
        let mut q = Integrator::new(&ctx);
        let bits = ctx.working_bits();
        let z = BigComplex::from_real(BigReal::from_i64(-1, bits));
        let v = li4_offcut(&z, &ctx, &mut q).unwrap();
        let eta4 = eta_int(4, &ctx).unwrap();
        assert!(v.re.add(&eta4).abs() < ctx.target_tolerance());
        let z4 = zeta_int(4, &ctx).unwrap();
        let alt = z4.mul_u64(7).scale2(-3).neg();
        assert!(v.re.sub(&alt).abs() < ctx.target_tolerance());
    }

    #[test]
    fn li4_offcut_rejects_the_cut() {
        let ctx = make_context(15).unwrap();
        let mut q = Integrator::new(&ctx);
        let z = BigComplex::from_real(ctx.real_from_u64(2));
        assert!(li4_offcut(&z, &ctx, &mut q).is_err());
    }
}
