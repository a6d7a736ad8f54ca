//! Certified-to-tolerance integration on finite intervals.
//!
//! The scheme is tanh-sinh (double-exponential) quadrature: the variable
//! change `x = tanh((π/2)·sinh t)` turns the trapezoidal rule into a rule
//! whose error decays geometrically with the node level, even when the
//! integrand has algebraic-times-logarithmic endpoint singularities. Every
//! integrand in the identity catalog is of at worst that class.
//!
//! Abscissas are handed to integrands as [`EvalPoint`]s carrying the
//! *distances to both endpoints* computed without cancellation (the node
//! table stores `1 - |ξ|` directly, never `|ξ|` itself). Integrands with
//! endpoint-singular factors must build those factors from the distances —
//! e.g. `ln(1 - sin x)` near `x = π/2` as `ln(2·sin²(u/2))` with
//! `u = π/2 - x` — otherwise the transform's accuracy is wasted on
//! catastrophic cancellation in the integrand.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};

/// One quadrature abscissa, with exact-to-working-precision distances from
/// both endpoints. `x` itself is reconstructed from the nearer endpoint and
/// is adequate for smooth factors only.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub x: BigReal,
    pub dist_a: BigReal,
    pub dist_b: BigReal,
}

/// How an integrand behaves at the interval endpoints. Metadata used to
/// size the node tail; `AlgebraicLogEndpoint` covers factors like
/// `(1-x)^(-1/2)·ln²(1-x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityClass {
    Smooth,
    LogEndpoint,
    AlgebraicLogEndpoint,
}

/// An integrand over a finite interval `(a, b)`; the evaluator is never
/// called at the endpoints themselves.
pub struct IntegrandSpec<F> {
    pub f: F,
    pub a: BigReal,
    pub b: BigReal,
    pub class: SingularityClass,
}

impl<F> IntegrandSpec<F> {
    pub fn new(f: F, a: BigReal, b: BigReal, class: SingularityClass) -> Self {
        IntegrandSpec { f, a, b, class }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult<T> {
    pub value: T,
    /// The last inter-level difference; an a-posteriori error gauge.
    pub error_estimate: BigReal,
    pub levels_used: u32,
    pub evaluations: u64,
    /// |T_L - T_(L-1)| for every level run, starting at level 1.
    pub level_diffs: Vec<BigReal>,
}

/// Values a quadrature rule can accumulate.
pub trait QuadValue: Clone {
    fn zero(bits: usize) -> Self;
    fn accum(&self, rhs: &Self) -> Self;
    fn scale(&self, s: &BigReal) -> Self;
    fn half(&self) -> Self;
    fn diff_norm(&self, rhs: &Self) -> BigReal;
    fn finite(&self) -> bool;
    fn describe(&self, sig: usize) -> alloc::string::String;
}

impl QuadValue for BigReal {
    fn zero(bits: usize) -> Self {
        BigReal::zero(bits)
    }
    fn accum(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn scale(&self, s: &BigReal) -> Self {
        self.mul(s)
    }
    fn half(&self) -> Self {
        self.scale2(-1)
    }
    fn diff_norm(&self, rhs: &Self) -> BigReal {
        self.sub(rhs).abs()
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn describe(&self, sig: usize) -> alloc::string::String {
        self.to_sci_string(sig)
    }
}

impl QuadValue for BigComplex {
    fn zero(bits: usize) -> Self {
        BigComplex::zero(bits)
    }
    fn accum(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn scale(&self, s: &BigReal) -> Self {
        self.mul_real(s)
    }
    fn half(&self) -> Self {
        BigComplex::new(self.re.scale2(-1), self.im.scale2(-1))
    }
    fn diff_norm(&self, rhs: &Self) -> BigReal {
        self.sub(rhs).abs()
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn describe(&self, sig: usize) -> alloc::string::String {
        alloc::format!(
            "{} + {}i",
            self.re.to_sci_string(sig),
            self.im.to_sci_string(sig)
        )
    }
}

/// A tanh-sinh node for `t > 0`: `u = 1 - tanh((π/2)·sinh t)` is the
/// distance of the abscissa from the near endpoint of `[-1, 1]`, and `w`
/// is the weight without the step factor `h`.
#[derive(Clone, Debug)]
struct Node {
    u: BigReal,
    w: BigReal,
}

/// Tanh-sinh integrator for one working precision.
///
/// Node tables are built lazily per level and are immutable once built;
/// they are cached inside the integrator, so reusing one integrator across
/// many integrands amortizes the table cost. Integration itself is pure:
/// the same spec and context always produce the same result.
pub struct Integrator {
    bits: usize,
    tolerance: BigReal,
    max_level: u32,
    min_level: u32,
    /// `tables[l]` holds the nodes new at level `l` (odd multiples of
    /// `2^-l`; level 0 holds all integer `t >= 1`).
    tables: Vec<Vec<Node>>,
    half_pi: BigReal,
    /// weights below `2^log2_w_min` contribute nothing even against a
    /// `u^(-1/2)·ln²u` singularity at working precision
    log2_w_min: i64,
}

pub const DEFAULT_MAX_LEVEL: u32 = 14;
/// Hard ceiling on the transform variable; weights underflow the working
/// precision long before this for every precision this crate runs at.
const T_MAX: f64 = 9.0;

impl Integrator {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self::with_limits(ctx, DEFAULT_MAX_LEVEL)
    }

    pub fn with_limits(ctx: &PrecisionContext, max_level: u32) -> Self {
        let bits = ctx.working_bits();
        Integrator {
            bits,
            tolerance: ctx.internal_tolerance(),
            max_level,
            min_level: 3,
            tables: Vec::new(),
            half_pi: ctx.pi().scale2(-1),
            log2_w_min: -(2 * bits as i64 + 96),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Builds node tables up to and including `level`.
    fn ensure_level(&mut self, level: u32) {
        while self.tables.len() <= level as usize {
            let l = self.tables.len() as u32;
            self.tables.push(self.build_level(l));
        }
    }

    fn build_level(&self, level: u32) -> Vec<Node> {
        let bits = self.bits;
        let one = BigReal::one(bits);
        // h = 2^-level; at level 0 take every j >= 1, otherwise odd j only.
        let h = one.scale2(-(level as i64));
        let (start, step) = if level == 0 { (1u64, 1u64) } else { (1, 2) };
        let e_h = h.mul_u64(step).exp();
        let mut e_t = h.mul_u64(start).exp();
        let mut nodes = Vec::new();
        let mut j = start;
        loop {
            let t = h.mul_u64(j);
            if t > BigReal::from_f64(T_MAX, bits) {
                break;
            }
            // sinh/cosh from the running e^t
            let e_mt = e_t.recip();
            let sinh = e_t.sub(&e_mt).scale2(-1);
            let cosh = e_t.add(&e_mt).scale2(-1);
            let g = self.half_pi.mul(&sinh);
            // u = 1 - tanh g = 2·e^(-2g)/(1 + e^(-2g)); w = (π/2)·cosh t·sech² g
            let e_m2g = g.scale2(1).neg().exp();
            let denom = one.add(&e_m2g);
            let u = e_m2g.scale2(1).div(&denom);
            let sech_sq = e_m2g.scale2(2).div(&denom.mul(&denom));
            let w = self.half_pi.mul(&cosh).mul(&sech_sq);
            let negligible = w.ilog2_approx().is_none_or(|e| e < self.log2_w_min);
            if negligible {
                break;
            }
            nodes.push(Node { u, w });
            e_t = e_t.mul(&e_h);
            j += step;
        }
        nodes
    }

    /// Integrates a real-valued integrand: doubles the node level until two
    /// successive trapezoidal estimates agree within the context tolerance.
    pub fn integrate<F>(&mut self, spec: &IntegrandSpec<F>) -> Result<QuadratureResult<BigReal>>
    where
        F: Fn(&EvalPoint) -> Result<BigReal>,
    {
        self.run(&spec.f, &spec.a, &spec.b)
    }

    /// Integrates a complex-valued integrand over a real interval,
    /// componentwise to the same tolerance.
    pub fn integrate_complex<F>(
        &mut self,
        spec: &IntegrandSpec<F>,
    ) -> Result<QuadratureResult<BigComplex>>
    where
        F: Fn(&EvalPoint) -> Result<BigComplex>,
    {
        self.run(&spec.f, &spec.a, &spec.b)
    }

    fn run<T: QuadValue, F>(&mut self, f: &F, a: &BigReal, b: &BigReal) -> Result<QuadratureResult<T>>
    where
        F: Fn(&EvalPoint) -> Result<T>,
    {
        if !(a.is_finite() && b.is_finite()) || a.cmp(b) != Some(core::cmp::Ordering::Less) {
            return Err(Error::InvalidInput {
                message: alloc::format!("integration interval must satisfy a < b, got [{a}, {b}]"),
            });
        }
        let bits = self.bits;
        let scale = b.sub(a).scale2(-1); // (b-a)/2
        let mut evaluations: u64 = 0;

        // center abscissa (t = 0): weight π/2, distance `scale` to each end
        let center = EvalPoint {
            x: a.add(&scale),
            dist_a: scale.clone(),
            dist_b: scale.clone(),
        };
        let mut level_sum = self.eval_at(f, &center)?.scale(&self.half_pi);
        evaluations += 1;

        let mut estimate: Option<T> = None;
        let mut level_diffs: Vec<BigReal> = Vec::new();
        let mut last_two = (alloc::string::String::from("none"), alloc::string::String::from("none"));

        for level in 0..=self.max_level {
            self.ensure_level(level);
            let table = &self.tables[level as usize];
            let mut new_sum = T::zero(bits);
            for node in table {
                // right half: x = b - u·scale
                let dist_b = node.u.mul(&scale);
                let dist_a = b.sub(a).sub(&dist_b);
                let right = EvalPoint {
                    x: b.sub(&dist_b),
                    dist_a,
                    dist_b: dist_b.clone(),
                };
                // left half mirrors it
                let dist_a = dist_b;
                let dist_b = b.sub(a).sub(&dist_a);
                let left = EvalPoint {
                    x: a.add(&dist_a),
                    dist_a,
                    dist_b,
                };
                let fr = self.eval_at(f, &right)?;
                let fl = self.eval_at(f, &left)?;
                evaluations += 2;
                new_sum = new_sum.accum(&fr.accum(&fl).scale(&node.w));
            }
            // T_L = T_{L-1}/2 + h_L · Σ_new;  fold the (b-a)/2 jacobian in
            // at the comparison step instead of per node.
            level_sum = if level == 0 {
                level_sum.accum(&new_sum)
            } else {
                level_sum.half().accum(&new_sum.scale(&BigReal::one(bits).scale2(-(level as i64))))
            };
            let current = level_sum.scale(&scale);
            if let Some(prev) = &estimate {
                let diff = current.diff_norm(prev);
                level_diffs.push(diff.clone());
                last_two = (prev.describe(12), current.describe(12));
                if level >= self.min_level && diff.cmp(&self.tolerance) == Some(core::cmp::Ordering::Less)
                {
                    return Ok(QuadratureResult {
                        value: current,
                        error_estimate: diff,
                        levels_used: level,
                        evaluations,
                        level_diffs,
                    });
                }
            }
            estimate = Some(current);
        }
        Err(Error::NonConvergence {
            what: "tanh-sinh quadrature",
            last: last_two.1,
            previous: last_two.0,
        })
    }

    fn eval_at<T: QuadValue, F>(&self, f: &F, p: &EvalPoint) -> Result<T>
    where
        F: Fn(&EvalPoint) -> Result<T>,
    {
        let v = f(p).map_err(|e| match e {
            Error::Domain { func, message } => Error::Domain {
                func,
                message: alloc::format!("{message} (at abscissa x = {})", p.x),
            },
            other => other,
        })?;
        if !v.finite() {
            return Err(Error::Domain {
                func: "integrand",
                message: alloc::format!("non-finite value at abscissa x = {}", p.x),
            });
        }
        Ok(v)
    }
}
