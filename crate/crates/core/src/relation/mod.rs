#![allow(clippy::needless_range_loop)] // index-heavy linear algebra

//! Integer-relation detection (PSLQ) and closed-form rediscovery.
//!
//! Given high-precision values v₁..vₙ, PSLQ either finds integers c with
//! Σ cᵢvᵢ = 0 (to working precision) and norm under a bound, or certifies
//! that no relation with norm below the bound exists. [`discover`] runs it
//! on a catalog series value over a basis of constants and converts a
//! found relation back into a candidate closed form, which is then
//! re-verified at half again the precision before being reported.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ledger::Evaluator;
use crate::numerics::{make_context_with_ceiling, BigRational, BigReal, PrecisionContext};
use crate::series::SeriesId;
use crate::special::{closed_form_value, ClosedForm, ConstantSymbol, Constants};

/// Inputs to one PSLQ run.
#[derive(Clone, Debug)]
pub struct RelationProblem {
    values: Vec<BigReal>,
    labels: Vec<String>,
    max_coeff_bits: u32,
}

/// Documented heuristic floor: the working precision in bits should be at
/// least 3 × (expected coefficient bit length) × n. With the default
/// expectation of 8-bit coefficients, a 6-value problem needs ≥ 144 bits
/// (i.e. a ~44-digit context); 60 digits is comfortable.
pub const EXPECTED_COEFF_BITS: u32 = 8;

impl RelationProblem {
    /// Validates the inputs: at least two values, none zero. Duplicate
    /// values are permitted (the run short-circuits to the trivial
    /// relation), but a well-posed problem has pairwise-distinct values at
    /// working precision.
    pub fn new(values: Vec<BigReal>, labels: Vec<String>, max_coeff_bits: u32) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput {
                message: String::from("need at least two values"),
            });
        }
        if values.len() != labels.len() {
            return Err(Error::InvalidInput {
                message: String::from("one label per value"),
            });
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidInput {
                message: String::from("zero values are not allowed"),
            });
        }
        Ok(RelationProblem {
            values,
            labels,
            max_coeff_bits,
        })
    }

    pub fn values(&self) -> &[BigReal] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationStatus {
    Found,
    NoneWithinBound,
}

#[derive(Clone, Debug)]
pub struct RelationResult {
    /// Content-reduced, sign-normalized (first nonzero coefficient
    /// positive); empty when no relation was found.
    pub coefficients: Vec<BigInt>,
    /// |Σ cᵢvᵢ| recomputed against the input values.
    pub residual: BigReal,
    /// Largest |cᵢ|.
    pub norm: BigInt,
    pub status: RelationStatus,
    pub iterations: u64,
}

fn normalize(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &coeffs {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in &mut coeffs {
            *c /= &g;
        }
    }
    if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
    }
    coeffs
}

fn residual_of(coeffs: &[BigInt], values: &[BigReal], bits: usize) -> BigReal {
    let mut acc = BigReal::zero(bits);
    for (c, v) in coeffs.iter().zip(values) {
        acc = acc.add(&BigReal::from_bigint(c, bits).mul(v));
    }
    acc.abs()
}

/// Standard PSLQ with γ = 2/√3, full-precision internal arithmetic, and
/// an iteration cap scaling with n² × precision digits.
pub fn pslq(problem: &RelationProblem, ctx: &PrecisionContext) -> Result<RelationResult> {
    let n = problem.values.len();
    let bits = ctx.working_bits();
    let floor_bits = (3 * EXPECTED_COEFF_BITS as usize) * n;
    if bits < floor_bits {
        return Err(Error::PrecisionExhausted {
            what: "pslq working precision below the documented floor",
        });
    }

    // degenerate duplicates short-circuit to the trivial relation
    let digits = ctx.target_digits() as usize;
    for i in 0..n {
        for j in i + 1..n {
            if problem.values[i].to_sci_string(digits) == problem.values[j].to_sci_string(digits) {
                let mut coeffs = alloc::vec![BigInt::zero(); n];
                coeffs[i] = BigInt::from(1);
                coeffs[j] = BigInt::from(-1);
                let residual = residual_of(&coeffs, &problem.values, bits);
                return Ok(RelationResult {
                    coefficients: normalize(coeffs),
                    residual,
                    norm: BigInt::from(1),
                    status: RelationStatus::Found,
                    iterations: 0,
                });
            }
        }
    }

    // detection threshold: 10^-(working digits - safety margin)
    let working_digits = ctx.target_digits() + ctx.guard_digits();
    let safety = 12u32.min(working_digits / 3);
    let eps = ctx.pow10_neg(working_digits - safety);
    let coeff_bound = BigReal::one(bits).scale2(problem.max_coeff_bits as i64);
    let max_iter = 200 * (n as u64) * (n as u64) * (working_digits as u64);

    // γ = 2/√3
    let gamma = BigReal::from_u64(2, bits).div(&BigReal::from_u64(3, bits).sqrt()?);

    // init: normalized y and the lower-trapezoidal H
    let x: Vec<BigReal> = problem.values.clone();
    let mut s = alloc::vec![BigReal::zero(bits); n];
    let mut acc = BigReal::zero(bits);
    for k in (0..n).rev() {
        acc = acc.add(&x[k].mul(&x[k]));
        s[k] = acc.sqrt()?;
    }
    let t = s[0].clone();
    let mut y: Vec<BigReal> = x.iter().map(|v| v.div(&t)).collect();
    for v in &mut s {
        *v = v.div(&t);
    }
    let mut h = alloc::vec![alloc::vec![BigReal::zero(bits); n - 1]; n];
    for i in 0..n {
        for j in 0..n - 1 {
            h[i][j] = if i < j {
                BigReal::zero(bits)
            } else if i == j {
                s[j + 1].div(&s[j])
            } else {
                y[i].mul(&y[j]).neg().div(&s[j].mul(&s[j + 1]))
            };
        }
    }
    let mut a = identity(n);
    let mut b = identity(n);

    // full initial reduction
    for i in 1..n {
        for j in (0..i.min(n - 1)).rev() {
            reduce_at(&mut y, &mut h, &mut a, &mut b, i, j, bits);
        }
    }

    for iter in 0..max_iter {
        // detect first: after the initial (or the previous iteration's)
        // reduction a small y may already hold a relation in B, and
        // grinding further with noise-level pivots would destroy it
        let mut min_y: Option<usize> = None;
        for (i, v) in y.iter().enumerate() {
            if v.abs() < eps && min_y.is_none_or(|m0| v.abs() < y[m0].abs()) {
                min_y = Some(i);
            }
        }
        if let Some(i) = min_y {
            let coeffs: Vec<BigInt> = b.iter().map(|row| row[i].clone()).collect();
            if coeffs.iter().all(|c| c.is_zero()) {
                return Err(Error::PrecisionExhausted {
                    what: "pslq produced an all-zero candidate",
                });
            }
            let coeffs = normalize(coeffs);
            let norm = coeffs.iter().map(|c| c.abs()).max().expect("nonempty");
            let residual = residual_of(&coeffs, &problem.values, bits);
            // accept only if genuinely small against the inputs
            let scale0 = problem.values.iter().fold(BigReal::zero(bits), |a, v| a.max(&v.abs()));
            if residual > eps.mul(&scale0).mul_u64(1000) {
                return Err(Error::PrecisionExhausted {
                    what: "pslq candidate failed the residual re-check",
                });
            }
            if BigReal::from_bigint(&norm, bits) > coeff_bound {
                return Ok(RelationResult {
                    coefficients: Vec::new(),
                    residual,
                    norm,
                    status: RelationStatus::NoneWithinBound,
                    iterations: iter,
                });
            }
            return Ok(RelationResult {
                coefficients: coeffs,
                residual,
                norm,
                status: RelationStatus::Found,
                iterations: iter,
            });
        }
        // norm lower bound: 1/max|H_jj|; if it exceeds the coefficient
        // bound, no relation within the bound exists
        let mut hmax = BigReal::zero(bits);
        for j in 0..n - 1 {
            hmax = hmax.max(&h[j][j].abs());
        }
        if hmax.is_zero() {
            return Err(Error::PrecisionExhausted {
                what: "pslq H matrix degenerated",
            });
        }
        if hmax.recip() > coeff_bound {
            return Ok(RelationResult {
                coefficients: Vec::new(),
                residual: BigReal::zero(bits),
                norm: BigInt::zero(),
                status: RelationStatus::NoneWithinBound,
                iterations: iter,
            });
        }

        // step 1: pick the row maximizing γ^i·|H_ii|
        let mut m = 0usize;
        let mut best = BigReal::zero(bits);
        let mut scale = BigReal::one(bits);
        for i in 0..n - 1 {
            scale = scale.mul(&gamma);
            let v = scale.mul(&h[i][i].abs());
            if v > best {
                best = v;
                m = i;
            }
        }

        // step 2: exchange
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in &mut b {
            row.swap(m, m + 1);
        }

        // step 3: remove the corner created when m < n-2
        if m + 1 < n - 1 {
            let t0 = h[m][m].mul(&h[m][m]).add(&h[m][m + 1].mul(&h[m][m + 1])).sqrt()?;
            if t0.is_zero() {
                return Err(Error::PrecisionExhausted {
                    what: "pslq corner rotation hit a zero pivot",
                });
            }
            let t1 = h[m][m].div(&t0);
            let t2 = h[m][m + 1].div(&t0);
            for row in h.iter_mut().skip(m) {
                let u = row[m].clone();
                let v = row[m + 1].clone();
                row[m] = t1.mul(&u).add(&t2.mul(&v));
                row[m + 1] = t1.mul(&v).sub(&t2.mul(&u));
            }
        }

        // step 4: reduce the affected block
        for i in m + 1..n {
            for j in (0..=(i - 1).min(m + 1).min(n - 2)).rev() {
                reduce_at(&mut y, &mut h, &mut a, &mut b, i, j, bits);
            }
        }
    }
    Err(Error::PrecisionExhausted {
        what: "pslq iteration cap reached",
    })
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    let mut m = alloc::vec![alloc::vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    m
}

/// One size-reduction step at (i, j): t = round(H_ij/H_jj), then update
/// y, H, A, B exactly (A, B stay integer).
fn reduce_at(
    y: &mut [BigReal],
    h: &mut [Vec<BigReal>],
    a: &mut [Vec<BigInt>],
    b: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    bits: usize,
) {
    if h[j][j].is_zero() {
        return;
    }
    let t_int = h[i][j].div(&h[j][j]).round_to_bigint();
    if t_int.is_zero() {
        return;
    }
    let t = BigReal::from_bigint(&t_int, bits);
    let v = y[j].add(&t.mul(&y[i]));
    y[j] = v;
    for k in 0..=j {
        let v = h[i][k].sub(&t.mul(&h[j][k]));
        h[i][k] = v;
    }
    let n = a.len();
    for k in 0..n {
        let v = &a[i][k] - &t_int * &a[j][k];
        a[i][k] = v;
        let v = &b[k][j] + &t_int * &b[k][i];
        b[k][j] = v;
    }
}

/// Outcome of a closed-form rediscovery run.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub candidate: ClosedForm,
    pub relation: RelationResult,
    /// Residual of the candidate at the higher re-verification precision.
    pub reverify_residual: BigReal,
    pub reverify_digits: u32,
}

/// Re-verifies a candidate closed form for a series at `digits` of
/// precision; returns the residual |series - form| and whether it clears
/// `10^-(0.8·digits)` (comfortably between honest quadrature error and the
/// O(1) residual of any wrong integer coefficient).
pub fn reverify_candidate(
    series: SeriesId,
    candidate: &ClosedForm,
    digits: u32,
) -> Result<(bool, BigReal)> {
    let ctx = make_context_with_ceiling(digits, u32::MAX)?;
    let consts = Constants::compute(&ctx)?;
    let mut ev = Evaluator::new(&ctx, &consts);
    let (value, _) = ev.series_value(series)?;
    let form = closed_form_value(candidate, &consts);
    let residual = value.sub(&form).abs();
    let tol = ctx.pow10_neg(digits * 4 / 5);
    Ok((residual < tol, residual))
}

/// Rediscovers the closed form of a catalog series over the given basis:
/// runs PSLQ on [series value, basis values...], converts a found relation
/// into a ClosedForm by solving for the series and clearing content, then
/// re-verifies the candidate at 1.5× the digits before reporting it.
pub fn discover(
    series: SeriesId,
    basis: &[ConstantSymbol],
    ctx: &PrecisionContext,
    consts: &Constants,
) -> Result<Discovery> {
    if ctx.target_digits() < 50 {
        return Err(Error::InvalidInput {
            message: format!(
                "discovery needs at least 50 digits, got {}",
                ctx.target_digits()
            ),
        });
    }
    if basis.is_empty() {
        return Err(Error::InvalidInput {
            message: String::from("empty basis"),
        });
    }
    let mut ev = Evaluator::new(ctx, consts);
    let (value, _) = ev.series_value(series)?;
    let mut values = alloc::vec![value];
    let mut labels = alloc::vec![String::from(series.name())];
    for sym in basis {
        values.push(consts.value(*sym).clone());
        labels.push(String::from(sym.name()));
    }
    let problem = RelationProblem::new(values, labels, 20)?;
    let relation = pslq(&problem, ctx)?;
    if relation.status != RelationStatus::Found {
        return Err(Error::NonConvergence {
            what: "pslq found no relation within the coefficient bound",
            last: String::new(),
            previous: String::new(),
        });
    }
    let c0 = relation.coefficients[0].clone();
    if c0.is_zero() {
        return Err(Error::NonConvergence {
            what: "relation does not involve the series value",
            last: String::new(),
            previous: String::new(),
        });
    }
    // c0·S + Σ c_j·b_j = 0  →  S = Σ (-c_j/c0)·b_j
    let mut candidate = ClosedForm::empty();
    for (j, sym) in basis.iter().enumerate() {
        let coeff = BigRational::new(-relation.coefficients[j + 1].clone(), c0.clone());
        candidate.add_term(&coeff, *sym);
    }
    let reverify_digits = ctx.target_digits() * 3 / 2;
    let (ok, reverify_residual) = reverify_candidate(series, &candidate, reverify_digits)?;
    if !ok {
        return Err(Error::NonConvergence {
            what: "candidate rejected at re-verification precision",
            last: reverify_residual.to_sci_string(8),
            previous: String::new(),
        });
    }
    Ok(Discovery {
        candidate,
        relation,
        reverify_residual,
        reverify_digits,
    })
}
