//! Exact telescoped quantities and the generating-function check.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{ratio_i64, BigRational, BigReal, PrecisionContext};
use crate::special::{ClosedForm, ConstantSymbol};

use super::CentralBinomialAcc;
use crate::special::HarmonicAcc;

/// Exact Fourier-type coefficient c_k = ∫₀¹ (1-t)/(1+t)·t^(k-1) dt,
/// returned as `(q, r)` meaning `c_k = q + r·ln 2`.
///
/// With (1-t)/(1+t) = 2/(1+t) - 1 and A_k = ∫₀¹ t^(k-1)/(1+t) dt
/// = (-1)^(k-1)·(ln 2 - Σ_{j<k} (-1)^(j-1)/j), this is c_k = 2A_k - 1/k.
pub fn fourier_coeff(k: u64) -> Result<(BigRational, BigRational)> {
    if k == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("coefficients start at k = 1"),
        });
    }
    let mut alt = BigRational::zero(); // Σ_{j=1..k-1} (-1)^(j-1)/j
    for j in 1..k {
        let t = BigRational::new(BigInt::from(1), BigInt::from(j));
        alt = if j % 2 == 1 { alt + t } else { alt - t };
    }
    let sign = if k % 2 == 1 { 1i64 } else { -1 };
    let q = ratio_i64(-2 * sign, 1) * alt - BigRational::new(BigInt::from(1), BigInt::from(k));
    let r = ratio_i64(2 * sign, 1);
    Ok((q, r))
}

/// Streaming float c_k via the stable recurrence A_k = 1/(k-1) - A_{k-1},
/// for the pointwise expansion check where 10^5 coefficients are needed.
pub struct FourierCoeffStream {
    a: BigReal,
    k: u64,
    bits: usize,
}

impl FourierCoeffStream {
    pub fn new(ctx: &PrecisionContext) -> Self {
        FourierCoeffStream {
            a: ctx.ln2().clone(),
            k: 0,
            bits: ctx.working_bits(),
        }
    }

    /// Returns c_{k+1} (k advances by one per call).
    pub fn next_coeff(&mut self) -> BigReal {
        self.k += 1;
        if self.k > 1 {
            self.a = BigReal::from_u64(self.k - 1, self.bits).recip().sub(&self.a);
        }
        self.a.scale2(1).sub(&BigReal::from_u64(self.k, self.bits).recip())
    }
}

/// Telescoped closed form of I_k = ∫₀^(π/2) x²·csc(x)·sin(2kx) dx:
/// 3·(Σ_{n≤k} (-1)^(n+1)/(2n-1))·ζ(2) - 4·Σ_{n≤k} (-1)^(n+1)/(2n-1)³,
/// with I₀ = 0 as the empty form.
pub fn lemma2_ik(k: u64) -> ClosedForm {
    let mut p = BigRational::zero();
    let mut q = BigRational::zero();
    for n in 1..=k {
        let odd = BigInt::from(2 * n - 1);
        let t1 = BigRational::new(BigInt::from(1), odd.clone());
        let t3 = BigRational::new(BigInt::from(1), &odd * &odd * &odd);
        if n % 2 == 1 {
            p += t1;
            q += t3;
        } else {
            p -= t1;
            q -= t3;
        }
    }
    ClosedForm::new(alloc::vec![
        (ratio_i64(3, 1) * p, ConstantSymbol::Zeta2),
        (ratio_i64(-4, 1) * q, ConstantSymbol::One),
    ])
}

/// Exact right-hand side of the per-k moment identity
/// ∫₀^(π/2) x²·cos^(2k-1)x dx
///   = (1/4)·b_k·H_k^(2)/k - b_k·H_{2k}^(2)/k + (3/4)·ζ(2)·b_k/k,
/// with b_k = 4^k/C(2k,k).
pub fn lemma4_rhs(k: u64) -> Result<ClosedForm> {
    if k == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("k must be positive"),
        });
    }
    let mut binom = CentralBinomialAcc::new();
    let mut h2k = HarmonicAcc::new(2);
    h2k.step();
    h2k.step();
    let mut hk = HarmonicAcc::new(2);
    hk.step();
    for _ in 1..k {
        binom.step();
        hk.step();
        h2k.step();
        h2k.step();
    }
    let b_over_k = binom.value() / BigRational::from_integer(BigInt::from(k));
    let one_coeff = &b_over_k * (hk.value() * ratio_i64(1, 4) - h2k.value());
    let zeta2_coeff = &b_over_k * ratio_i64(3, 4);
    Ok(ClosedForm::new(alloc::vec![
        (one_coeff, ConstantSymbol::One),
        (zeta2_coeff, ConstantSymbol::Zeta2),
    ]))
}

/// Exact value of the odd-cosine moment ∫₀^(π/2) cos^(2n-1)x dx
/// = (1/2)·4ⁿ/(n·C(2n,n)).
pub fn wallis_exact(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("n must be positive"),
        });
    }
    let mut binom = CentralBinomialAcc::new();
    for _ in 1..n {
        binom.step();
    }
    Ok(binom.value() * BigRational::new(BigInt::from(1), BigInt::from(2 * n)))
}

/// |truncated generating-function series - arcsin(x)/√(1-x²)| at x ∈ (0,1):
/// the series is (1/2)·Σ_{k≤K} b_k·x^(2k-1)/k.
pub fn gf_defect(x: &BigReal, terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let one = BigReal::one(bits);
    if !x.is_positive() || x >= &one {
        return Err(Error::Domain {
            func: "gf_defect",
            message: alloc::format!("x must lie in (0, 1), got {x}"),
        });
    }
    let x2 = x.mul(x);
    // b_k·x^(2k-1) by float recurrence
    let mut coeff = x.scale2(1); // b_1·x = 2x
    let mut sum = BigReal::zero(bits);
    for k in 1..=terms {
        sum = sum.add(&coeff.div_u64(k));
        coeff = coeff.mul(&x2).mul_u64(2 * k + 2).div_u64(2 * k + 1);
    }
    sum = sum.scale2(-1);
    let target = x.asin()?.div(&one.sub(&x2).sqrt()?);
    Ok(sum.sub(&target).abs())
}

/// Smallest cut K whose certified tail bound drops under `tol`, found in
/// one incremental pass, together with that bound. Stepping K directly
/// keeps the bound within a factor x² of `tol`; a coarser search could
/// overshoot to a bound smaller than the roundoff floor of the defect
/// measurement itself, turning an honest pass into a spurious failure.
pub fn gf_cut_for_tolerance(
    x: &BigReal,
    tol: &BigReal,
    ctx: &PrecisionContext,
) -> Result<(u64, BigReal)> {
    let bits = ctx.working_bits();
    let one = BigReal::one(bits);
    if !x.is_positive() || x >= &one {
        return Err(Error::Domain {
            func: "gf_cut_for_tolerance",
            message: alloc::format!("x must lie in (0, 1), got {x}"),
        });
    }
    let x2 = x.mul(x);
    let gap = one.sub(&x2);
    let pad = one.add(&one.scale2(-30));
    let mut coeff = x.scale2(1); // b_{k}·x^(2k-1) at k = 1
    for k in 1..=(1u64 << 20) {
        // t_{k+1} = coeff·x²·(2k+2)/(2k+1) / (2(k+1))
        coeff = coeff.mul(&x2).mul_u64(2 * k + 2).div_u64(2 * k + 1);
        let bound = coeff.scale2(-1).div_u64(k + 1).div(&gap).mul(&pad);
        if &bound < tol {
            return Ok((k, bound));
        }
    }
    Err(Error::NonConvergence {
        what: "generating-function cut search",
        last: alloc::string::String::new(),
        previous: alloc::string::String::new(),
    })
}

/// Certified bound on the omitted generating-function tail: the term ratio
/// is x²·2k/(2k+1) < x², so the tail is below t_{K+1}/(1-x²).
pub fn gf_tail_bound(x: &BigReal, terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.working_bits();
    let one = BigReal::one(bits);
    if !x.is_positive() || x >= &one {
        return Err(Error::Domain {
            func: "gf_tail_bound",
            message: alloc::format!("x must lie in (0, 1), got {x}"),
        });
    }
    let x2 = x.mul(x);
    let mut coeff = x.scale2(1);
    for k in 1..=terms {
        coeff = coeff.mul(&x2).mul_u64(2 * k + 2).div_u64(2 * k + 1);
    }
    let t_next = coeff.scale2(-1).div_u64(terms + 1);
    let pad = one.add(&one.scale2(-30));
    Ok(t_next.div(&one.sub(&x2)).mul(&pad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_context;
    use crate::quad::{EvalPoint, IntegrandSpec, Integrator, SingularityClass};
    use crate::special::{closed_form_value, Constants};

    #[test]
    fn fourier_first_coefficients() {
        // c₁ = 2ln2 - 1 → (-1, 2); c₂ = 3/2 - 2ln2 → (3/2, -2)
        assert_eq!(fourier_coeff(1).unwrap(), (ratio_i64(-1, 1), ratio_i64(2, 1)));
        assert_eq!(fourier_coeff(2).unwrap(), (ratio_i64(3, 2), ratio_i64(-2, 1)));
        assert!(fourier_coeff(0).is_err());
    }

    #[test]
    fn fourier_matches_defining_integral() {
        // quadrature of ∫₀¹ (1-t)/(1+t)·t^(k-1) dt against q + r·ln2
        let ctx = make_context(25).unwrap();
        let bits = ctx.working_bits();
        let mut quad = Integrator::new(&ctx);
        for k in [1u64, 2, 3, 4, 5, 6, 7, 10, 20, 50, 100, 150, 200] {
            let f = move |p: &EvalPoint| -> crate::error::Result<BigReal> {
                let one = BigReal::one(p.x.precision_bits());
                let num = p.dist_b.clone(); // 1 - t
                let den = one.add(&p.x);
                Ok(num.div(&den).mul(&p.x.powi(k as i64 - 1)))
            };
            let spec = IntegrandSpec::new(f, BigReal::zero(bits), BigReal::one(bits), SingularityClass::Smooth);
            let quad_val = quad.integrate(&spec).unwrap().value;
            let (q, r) = fourier_coeff(k).unwrap();
            let exact = BigReal::from_rational(&q, bits)
                .add(&BigReal::from_rational(&r, bits).mul(ctx.ln2()));
            assert!(
                quad_val.sub(&exact).abs() < ctx.target_tolerance(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn fourier_stream_matches_exact() {
        let ctx = make_context(25).unwrap();
        let bits = ctx.working_bits();
        let mut s = FourierCoeffStream::new(&ctx);
        for k in 1..=300u64 {
            let c = s.next_coeff();
            let (q, r) = fourier_coeff(k).unwrap();
            let exact = BigReal::from_rational(&q, bits)
                .add(&BigReal::from_rational(&r, bits).mul(ctx.ln2()));
            assert!(
                c.sub(&exact).abs().ilog2_approx().unwrap_or(i64::MIN) < -(bits as i64) + 16,
                "k = {k}"
            );
        }
    }

    #[test]
    fn telescoped_ik_values() {
        assert!(lemma2_ik(0).is_empty());
        let i1 = lemma2_ik(1);
        assert_eq!(i1.coeff(ConstantSymbol::Zeta2), ratio_i64(3, 1));
        assert_eq!(i1.coeff(ConstantSymbol::One), ratio_i64(-4, 1));
        let i2 = lemma2_ik(2);
        assert_eq!(i2.coeff(ConstantSymbol::Zeta2), ratio_i64(2, 1));
        assert_eq!(i2.coeff(ConstantSymbol::One), ratio_i64(-104, 27));
    }

    #[test]
    fn moment_identity_rhs_at_k1_matches_x2cos() {
        // k = 1 must reduce to ∫ x²cos x = (3/2)ζ(2) - 2
        let rhs = lemma4_rhs(1).unwrap();
        assert_eq!(rhs.coeff(ConstantSymbol::One), ratio_i64(-2, 1));
        assert_eq!(rhs.coeff(ConstantSymbol::Zeta2), ratio_i64(3, 2));
        assert!(lemma4_rhs(0).is_err());
    }

    #[test]
    fn wallis_values() {
        // n = 1: ∫cos x = 1 = (1/2)·4/(1·2)
        assert_eq!(wallis_exact(1).unwrap(), ratio_i64(1, 1));
        // n = 2: ∫cos³ = 2/3 = (1/2)·16/(2·6)
        assert_eq!(wallis_exact(2).unwrap(), ratio_i64(2, 3));
    }

    #[test]
    fn cut_search_matches_from_scratch_bound() {
        let ctx = make_context(30).unwrap();
        let bits = ctx.working_bits();
        for (num, den) in [(1u64, 10u64), (1, 2), (9, 10)] {
            let x = BigReal::from_u64_ratio(num, den, bits);
            let tol = ctx.internal_tolerance();
            let (k, bound) = gf_cut_for_tolerance(&x, &tol, &ctx).unwrap();
            let from_scratch = gf_tail_bound(&x, k, &ctx).unwrap();
            // same formula, same value up to the last few ulps
            assert!(bound.sub(&from_scratch).abs() < bound.scale2(-(bits as i64) + 16));
            assert!(bound < tol);
            // K is minimal: one term earlier the bound still exceeds tol
            if k > 1 {
                assert!(gf_tail_bound(&x, k - 1, &ctx).unwrap() >= tol);
            }
        }
    }

    #[test]
    fn generating_function_defect_small_inside_disc() {
        let ctx = make_context(30).unwrap();
        let bits = ctx.working_bits();
        // x = 1/2 with a generous cut: defect under the certified tail
        let x = BigReal::from_u64_ratio(1, 2, bits);
        let terms = 300;
        let defect = gf_defect(&x, terms, &ctx).unwrap();
        assert!(defect < ctx.target_tolerance());
        // x = 1/10, K = 10: defect < (0.1)^20·constant — explicit tail
        let x = BigReal::from_u64_ratio(1, 10, bits);
        let defect = gf_defect(&x, 10, &ctx).unwrap();
        let bound = gf_tail_bound(&x, 10, &ctx).unwrap();
        assert!(defect <= bound, "defect {defect} vs bound {bound}");
        // and that bound really is ~10^-20-sized
        assert!(bound < ctx.pow10_neg(19));
    }

    #[test]
    fn lemma4_rhs_matches_quadrature_for_k2() {
        // against ∫₀^(π/2) x² cos³x dx
        let ctx = make_context(25).unwrap();
        let consts = Constants::compute(&ctx).unwrap();
        let mut quad = Integrator::new(&ctx);
        let bits = ctx.working_bits();
        let f = |p: &EvalPoint| -> crate::error::Result<BigReal> {
            // cos x = sin(u) with u the distance from π/2
            let c = p.dist_b.sin();
            Ok(p.x.mul(&p.x).mul(&c.powi(3)))
        };
        let spec = IntegrandSpec::new(f, BigReal::zero(bits), ctx.pi().scale2(-1), SingularityClass::Smooth);
        let quad_val = quad.integrate(&spec).unwrap().value;
        let rhs = closed_form_value(&lemma4_rhs(2).unwrap(), &consts);
        assert!(quad_val.sub(&rhs).abs() < ctx.target_tolerance());
    }
}
