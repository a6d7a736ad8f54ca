#![allow(clippy::needless_range_loop)] // index-heavy linear algebra

//! Sequence extrapolation for partial sums with `k^(-3/2)`-type tails.
//!
//! Two schemes:
//!
//! * A Levin-type u-transform. With remainder estimates `ω_n = n·a_n`, the
//!   ratio `R_n/ω_n` of a pure half-power tail has an asymptotic expansion
//!   in integer powers of `1/n`, which is exactly what the transform
//!   eliminates, so it converges quickly for the log-free series. It stalls
//!   on `ln²k` weights.
//! * A Richardson-style fit in the explicit tail basis
//!   `n^(-1/2-m)·ln^r(n)`: solve a small linear system for the limit using
//!   nodes spread geometrically through the available prefix. Slower per
//!   digit but immune to the log factors.
//!
//! The u-transform is tried first; the fit takes over when the
//! u-transform's a-posteriori gauge is worse. Every returned value carries
//! its gauge: the difference between extrapolating from the full prefix
//! and from the half prefix (for the u-transform, combined with the
//! inter-order stall gauge, whichever is larger).

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{BigRational, BigReal, PrecisionContext};

use super::{PartialSums, TailFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccelMethod {
    LevinU,
    RichardsonHalfPower,
}

impl AccelMethod {
    pub fn name(self) -> &'static str {
        match self {
            AccelMethod::LevinU => "levin-u",
            AccelMethod::RichardsonHalfPower => "richardson-halfpower",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AcceleratedValue {
    pub value: BigReal,
    /// A-posteriori error gauge; not a certified bound.
    pub error_gauge: BigReal,
    pub method: AccelMethod,
    pub terms_used: u64,
}

/// Extrapolates the limit of a monotone partial-sum sequence.
pub fn accelerate(
    ps: &PartialSums,
    tail: TailFamily,
    ctx: &PrecisionContext,
) -> Result<AcceleratedValue> {
    let n = ps.n();
    if n < 20 {
        return Err(Error::InvalidInput {
            message: alloc::format!("need at least 20 partial sums, got {n}"),
        });
    }
    let bits = ctx.working_bits();
    // degenerate constant sequence: the limit is that constant
    if ps.values[n - 1].sub(&ps.values[n - 2]).is_zero() {
        return Ok(AcceleratedValue {
            value: ps.last().clone(),
            error_gauge: BigReal::zero(bits),
            method: AccelMethod::LevinU,
            terms_used: n as u64,
        });
    }

    let levin = levin_u_with_gauge(ps, bits);
    let fit = richardson_fit_with_gauge(ps, tail, bits);
    match (levin, fit) {
        (Some(l), Some(f)) => Ok(if l.error_gauge < f.error_gauge { l } else { f }),
        (Some(l), None) => Ok(l),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(Error::NonConvergence {
            what: "series acceleration",
            last: ps.last().to_sci_string(12),
            previous: ps.values[n - 2].to_sci_string(12),
        }),
    }
}

/// Levin u-transform estimate from the first `min(N-1, 48)` terms, with
/// order chosen where successive orders stall.
fn levin_estimate(sums: &[BigReal], bits: usize) -> Option<(BigReal, BigReal)> {
    let kmax = (sums.len() - 1).min(48);
    if kmax < 4 {
        return None;
    }
    // terms a_1.. and remainder estimates ω_j = j·a_j
    let mut omega_inv: Vec<BigReal> = Vec::with_capacity(kmax + 1);
    for j in 1..=kmax + 1 {
        let a = if j == 1 {
            sums[0].clone()
        } else {
            sums[j - 1].sub(&sums[j - 2])
        };
        let w = a.mul_u64(j as u64);
        if w.is_zero() {
            return None;
        }
        omega_inv.push(w.recip());
    }

    let mut best: Option<(BigReal, BigReal)> = None;
    let mut prev: Option<BigReal> = None;
    for order in 3..=kmax {
        let est = levin_order(sums, &omega_inv, order, bits)?;
        if let Some(p) = &prev {
            let gauge = est.sub(p).abs();
            let better = match &best {
                None => true,
                Some((_, g)) => gauge < *g,
            };
            if better {
                best = Some((est.clone(), gauge));
            }
        }
        prev = Some(est);
    }
    best
}

/// Explicit Levin u estimate of the given order with n₀ = 1:
/// weighted K-th differences of S_j/ω_j over 1/ω_j.
fn levin_order(sums: &[BigReal], omega_inv: &[BigReal], order: usize, bits: usize) -> Option<BigReal> {
    let k = order;
    let mut num = BigReal::zero(bits);
    let mut den = BigReal::zero(bits);
    // c_j = (-1)^j C(K,j) ((1+j)/(1+K))^(K-1)
    let mut binom = BigInt::from(1);
    for j in 0..=k {
        let ratio = BigRational::new(BigInt::from(1 + j), BigInt::from(1 + k));
        let mut w = BigReal::from_rational(&ratio, bits).powi(k as i64 - 1);
        w = w.mul(&BigReal::from_bigint(&binom, bits));
        if j % 2 == 1 {
            w = w.neg();
        }
        num = num.add(&w.mul(&sums[j]).mul(&omega_inv[j]));
        den = den.add(&w.mul(&omega_inv[j]));
        // C(K, j+1) = C(K, j)·(K-j)/(j+1)
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    if den.is_zero() {
        return None;
    }
    Some(num.div(&den))
}

fn levin_u_with_gauge(ps: &PartialSums, bits: usize) -> Option<AcceleratedValue> {
    let n = ps.n();
    let (full, stall_gauge) = levin_estimate(&ps.values, bits)?;
    let (half, _) = levin_estimate(&ps.values[..n / 2], bits)?;
    let prefix_gauge = full.sub(&half).abs();
    let gauge = stall_gauge.max(&prefix_gauge);
    Some(AcceleratedValue {
        value: full,
        error_gauge: gauge,
        method: AccelMethod::LevinU,
        terms_used: n as u64,
    })
}

/// Richardson-style fit: S_n = S + Σ c_{m,r}·n^(-1/2-m)·ln^r(n) solved on
/// geometrically spread nodes.
fn richardson_fit(sums: &[BigReal], tail: TailFamily, bits: usize) -> Option<BigReal> {
    let n = sums.len();
    let lp = tail.log_power as usize;
    // depth in half-integer powers; sized so the node set stays inside the
    // prefix with ratio 3/4 spacing
    let depth = if lp == 0 { 6 } else { 4 };
    let unknowns = 1 + depth * (lp + 1);
    // nodes n_i = N·(3/4)^i, descending, distinct
    let mut nodes: Vec<usize> = Vec::with_capacity(unknowns);
    let mut x = n;
    for _ in 0..unknowns {
        if x < 16 {
            return None;
        }
        nodes.push(x);
        x = x * 3 / 4;
    }

    // build the linear system: row per node
    let mut mat: Vec<Vec<BigReal>> = Vec::with_capacity(unknowns);
    let mut rhs: Vec<BigReal> = Vec::with_capacity(unknowns);
    for &ni in &nodes {
        let nf = BigReal::from_u64(ni as u64, bits);
        let inv_sqrt = nf.sqrt().ok()?.recip();
        let ln_n = nf.ln().ok()?;
        let mut row = Vec::with_capacity(unknowns);
        row.push(BigReal::one(bits));
        let mut pw = inv_sqrt.clone(); // n^(-1/2-m)
        for _m in 0..depth {
            let mut lg = BigReal::one(bits);
            for _r in 0..=lp {
                row.push(pw.mul(&lg));
                lg = lg.mul(&ln_n);
            }
            pw = pw.div(&nf);
        }
        mat.push(row);
        rhs.push(sums[ni - 1].clone());
    }
    solve_dense(&mut mat, &mut rhs).map(|sol| sol.into_iter().next().expect("nonempty solution"))
}

fn richardson_fit_with_gauge(
    ps: &PartialSums,
    tail: TailFamily,
    bits: usize,
) -> Option<AcceleratedValue> {
    let n = ps.n();
    let full = richardson_fit(&ps.values, tail, bits)?;
    let half = richardson_fit(&ps.values[..n / 2], tail, bits)?;
    Some(AcceleratedValue {
        error_gauge: full.sub(&half).abs(),
        value: full,
        method: AccelMethod::RichardsonHalfPower,
        terms_used: n as u64,
    })
}

/// Gaussian elimination with partial pivoting; returns the solution vector.
fn solve_dense(mat: &mut [Vec<BigReal>], rhs: &mut [BigReal]) -> Option<Vec<BigReal>> {
    let n = mat.len();
    for col in 0..n {
        // pivot
        let mut piv = col;
        for r in col + 1..n {
            if mat[r][col].abs() > mat[piv][col].abs() {
                piv = r;
            }
        }
        if mat[piv][col].is_zero() {
            return None;
        }
        mat.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].div(&mat[col][col]);
            for c in col..n {
                let v = mat[r][c].sub(&f.mul(&mat[col][c]));
                mat[r][c] = v;
            }
            let v = rhs[r].sub(&f.mul(&rhs[col]));
            rhs[r] = v;
        }
    }
    // back substitution
    let bits = rhs[0].precision_bits();
    let mut sol = alloc::vec![BigReal::zero(bits); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..n {
            acc = acc.sub(&mat[row][c].mul(&sol[c]));
        }
        sol[row] = acc.div(&mat[row][row]);
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_context;
    use crate::series::{sum_direct, SeriesId};

    #[test]
    fn constant_sequence_returns_the_constant() {
        let ctx = make_context(20).unwrap();
        let bits = ctx.working_bits();
        let c = BigReal::from_u64_ratio(7, 3, bits);
        let ps = PartialSums {
            id: SeriesId::L1III,
            values: alloc::vec![c.clone(); 30],
        };
        let r = accelerate(&ps, TailFamily { log_power: 0 }, &ctx).unwrap();
        assert_eq!(r.value, c);
        assert!(r.error_gauge.is_zero());
    }

    #[test]
    fn l1_iii_reaches_eight_digits_at_two_thousand_terms() {
        let ctx = make_context(30).unwrap();
        let ps = sum_direct(SeriesId::L1III, 2000, &ctx).unwrap();
        let r = accelerate(&ps, SeriesId::L1III.spec().tail, &ctx).unwrap();
        let truth = ctx.pi().mul(ctx.pi()).scale2(-1); // 3ζ(2)
        let err = r.value.sub(&truth).abs();
        assert!(
            err < ctx.pow10_neg(8),
            "error {} with method {:?}, gauge {}",
            err.to_sci_string(5),
            r.method,
            r.error_gauge.to_sci_string(5)
        );
        // gauge should not wildly understate the true error
        assert!(err < r.error_gauge.mul_u64(1000).add(&ctx.pow10_neg(12)));
    }

    #[test]
    fn rejects_tiny_prefixes() {
        let ctx = make_context(15).unwrap();
        let ps = sum_direct(SeriesId::L1III, 10, &ctx).unwrap();
        assert!(accelerate(&ps, TailFamily { log_power: 0 }, &ctx).is_err());
    }
}
