//! Riemann zeta at integer argument via Euler–Maclaurin summation.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{BigRational, BigReal, PrecisionContext};

/// Exact Bernoulli numbers B_0..B_n (B_1 = -1/2 convention), from the
/// defining convolution Σ_{k=0..n} C(n+1,k)·B_k = 0.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // C(m+1, k) running binomial
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * BigRational::from_integer(binom.clone());
            }
            // C(m+1, k+1) = C(m+1, k)·(m+1-k)/(k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    b
}

/// ζ(s) for integer s ≥ 2, with |result − ζ(s)| < 10^-target_digits.
///
/// Euler–Maclaurin with an explicit remainder control: for f(x) = x^-s the
/// even derivatives are positive and decreasing, so the remainder after the
/// B_{2J} correction is bounded by the first omitted correction term. N and
/// J are grown until that bound drops under the working tolerance.
pub fn zeta_int(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain {
            func: "zeta_int",
            message: alloc::format!("s must be at least 2, got {s}"),
        });
    }
    let bits = ctx.working_bits();
    // absolute target: ζ(s) ∈ (1, 2], so 2^-(bits+8) absolute suffices
    let eps_log2 = -(bits as i64 + 8);

    let mut n = (bits as u64 / 3).max(8);
    loop {
        if let Some(v) = try_euler_maclaurin(s, n, bits, eps_log2) {
            return Ok(v);
        }
        n *= 2;
        if n > 1_000_000 {
            return Err(Error::NonConvergence {
                what: "zeta Euler-Maclaurin",
                last: alloc::format!("N = {n}"),
                previous: alloc::string::String::new(),
            });
        }
    }
}

fn try_euler_maclaurin(s: u32, n: u64, bits: usize, eps_log2: i64) -> Option<BigReal> {
    let work = bits + 32;
    // Σ_{k=1}^{N-1} k^-s
    let mut sum = BigReal::zero(work);
    for k in 1..n {
        sum = sum.add(&BigReal::from_u64(k, work).powi(s as i64).recip());
    }
    let nf = BigReal::from_u64(n, work);
    let n_pow_s = nf.powi(s as i64);
    // + N^(1-s)/(s-1) + N^-s/2
    sum = sum.add(&nf.div(&n_pow_s).div_u64(s as u64 - 1));
    sum = sum.add(&n_pow_s.recip().scale2(-1));

    // correction terms T_j = B_{2j}/(2j)! · (s)_(2j-1) · N^(-s-2j+1)
    let max_j = 4 * bits; // far beyond need; the loop exits on the bound
    let bern = bernoulli(2 * ((bits / 4).max(16)) + 2);
    // incremental: factor_j = (s)_(2j-1) / (2j)! · N^(-s-2j+1), maintained
    // as a float; rising starts at s for j = 1
    let n_sq = nf.mul(&nf);
    let mut rising = BigReal::from_u64(s as u64, work); // (s)_1
    let mut fact = BigReal::from_u64(2, work); // (2j)! at j = 1
    let mut n_pow = nf.div(&n_pow_s).div(&n_sq); // N^(-s-1)
    let mut prev_mag = i64::MAX;
    for j in 1..max_j {
        if 2 * j + 1 >= bern.len() {
            return None; // need more Bernoulli numbers: enlarge N instead
        }
        let b2j = BigReal::from_rational(&bern[2 * j], work);
        let term = b2j.mul(&rising).mul(&n_pow).div(&fact);
        let mag = term.ilog2_approx().unwrap_or(i64::MIN);
        if mag < eps_log2 {
            // first omitted term below tolerance: remainder certified
            return Some(sum);
        }
        if mag >= prev_mag {
            // asymptotic series started diverging before reaching eps
            return None;
        }
        prev_mag = mag;
        sum = sum.add(&term);
        // advance to j+1
        rising = rising
            .mul_u64(s as u64 + 2 * j as u64 - 1)
            .mul_u64(s as u64 + 2 * j as u64);
        fact = fact.mul_u64(2 * j as u64 + 1).mul_u64(2 * j as u64 + 2);
        n_pow = n_pow.div(&n_sq);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{make_context, ratio_i64};

    #[test]
    fn bernoulli_textbook_values() {
        let b = bernoulli(12);
        assert_eq!(b[0], ratio_i64(1, 1));
        assert_eq!(b[1], ratio_i64(-1, 2));
        assert_eq!(b[2], ratio_i64(1, 6));
        assert_eq!(b[3], ratio_i64(0, 1));
        assert_eq!(b[4], ratio_i64(-1, 30));
        assert_eq!(b[6], ratio_i64(1, 42));
        assert_eq!(b[8], ratio_i64(-1, 30));
        assert_eq!(b[10], ratio_i64(5, 66));
        assert_eq!(b[12], ratio_i64(-691, 2730));
    }

    #[test]
    fn zeta2_is_pi_squared_over_six() {
        let ctx = make_context(30).unwrap();
        let z2 = zeta_int(2, &ctx).unwrap();
        let pi2_6 = ctx.pi().mul(ctx.pi()).div_u64(6);
        assert!(z2.sub(&pi2_6).abs() < ctx.target_tolerance());
    }

    #[test]
    fn zeta4_is_pi_fourth_over_ninety() {
        let ctx = make_context(30).unwrap();
        let z4 = zeta_int(4, &ctx).unwrap();
        let pi4_90 = ctx.pi().powi(4).div_u64(90);
        assert!(z4.sub(&pi4_90).abs() < ctx.target_tolerance());
    }

    #[test]
    fn zeta4_against_zeta2_squared() {
        // ζ(4) = (2/5)·ζ(2)²
        let ctx = make_context(30).unwrap();
        let z2 = zeta_int(2, &ctx).unwrap();
        let z4 = zeta_int(4, &ctx).unwrap();
        let rhs = z2.mul(&z2).mul_u64(2).div_u64(5);
        assert!(z4.sub(&rhs).abs() < ctx.target_tolerance());
    }

    #[test]
    fn rejects_small_s() {
        let ctx = make_context(10).unwrap();
        assert!(zeta_int(1, &ctx).is_err());
        assert!(zeta_int(0, &ctx).is_err());
    }

    #[test]
    fn refinement_consistency() {
        let a = make_context(20).unwrap();
        let b = make_context(40).unwrap();
        for s in [2u32, 3, 4, 7, 10] {
            let va = zeta_int(s, &a).unwrap();
            let vb = zeta_int(s, &b).unwrap();
            assert!(va.sub(&vb).abs() < a.target_tolerance(), "s = {s}");
        }
    }
}
