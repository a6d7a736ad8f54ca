//! Evaluation and verification of catalog entries.
//!
//! The series entries are evaluated through the relation chain
//!
//! ```text
//!   S0  = Σ 4^k/(k²C)        = 4·∫₀¹ arcsin x/√(1-x²) dx
//!   S_A = Σ 4^k H_k^(2)/(k²C) = ζ(2)·S0 + 2·∫₀¹ ln x·arcsin²(√x)/(1-x) dx
//!   S_B = Σ 4^k H_2k^(2)/(k²C) = (1/4)·S_A + 2·I_sec + (3/4)·ζ(2)·S0
//!   S_C = Σ 4^k H_2k²/(k²C)   = 4·I_sin - S_B
//! ```
//!
//! where `I_sec` and `I_sin` are the two logarithmic integrals of the
//! catalog (`L2_III`, `L3_II`). The first two lines integrate the
//! generating function `(1/2)Σ 4^k x^(2k-1)/(kC) = arcsin x/√(1-x²)`
//! (entry `L1_II`) directly and against the moment form of H_k^(2); the
//! last two are the summed moment identity (`L4_K`) and the k ↦ 2k
//! rearrangement (`REL_II`). Every link of the chain is itself a catalog
//! entry checked against an independent closed form, and each series entry
//! additionally carries an accelerated direct-summation witness.
//!
//! Shared integral values are memoized per evaluator; the reported `work`
//! charges each entry the evaluations of its whole route (shared values
//! charged per use), so reports do not depend on memo hits or thread
//! scheduling.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{decimal, BigComplex, BigRational, BigReal, PrecisionContext};
use crate::quad::{EvalPoint, IntegrandSpec, Integrator, SingularityClass};
use crate::series::{
    accelerate, gf_cut_for_tolerance, gf_defect, lemma2_ik, lemma4_rhs, sum_direct, wallis_exact,
    FourierCoeffStream, SeriesId,
};
use crate::special::{
    closed_form_value, harmonic, li4_offcut_with_work, Constants, ConstantSymbol,
};

use super::{catalog_entry, IdentityId, Identity, Rhs, Status, Strategy, VerificationReport};

/// Strategy overrides for the series entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodOverride {
    /// Truncated direct summation (honest about its convergence wall).
    Direct,
    /// Accelerated direct summation only.
    Accelerated,
    /// The default integral/relational route.
    Integral,
}

impl MethodOverride {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(MethodOverride::Direct),
            "accelerated" => Some(MethodOverride::Accelerated),
            "integral" => Some(MethodOverride::Integral),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Restrict a per-k family to one member.
    pub k: Option<u64>,
    pub method: Option<MethodOverride>,
    /// Term budget for direct summation / witnesses / pointwise samples.
    pub terms: Option<u64>,
    /// Run the direct-summation witness on series entries.
    pub witness: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k: None,
            method: None,
            terms: None,
            witness: true,
        }
    }
}

/// A standalone evaluation (the `eval` front-end operation).
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    pub value: BigReal,
    pub method: String,
    /// Error gauge: driving tolerance or extrapolation gauge; not a
    /// certified bound unless the method says so.
    pub gauge: BigReal,
    pub work: u64,
}

/// Memoized base integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum BaseIntegral {
    /// 4·∫₀¹ arcsin x/√(1-x²) dx
    GenFn,
    /// ∫₀^(π/2) x² sec x ln sin x dx
    SecLnSin,
    /// ∫₀^(π/2) x ln²(1-sin x) dx
    LnSq1mSin,
    /// 2·∫₀¹ ln x·arcsin²(√x)/(1-x) dx
    MomentH2,
    /// ∫₀¹ arctan³x/(1+x²) dx
    Atan3,
    /// 4·∫₀¹ arctan x·ln²((1-x)²/(1+x²))/(1+x²) dx
    HalfAngle,
    /// Im ∫₀¹ ln³((1-x)/(1-ix))/(1+x²) dx
    CubedLogIm,
    /// 4·∫₀¹ arcsin x·ln²(1-x)/√(1-x²) dx
    ArcsinLnSq,
}

/// One verification engine instance: a context, a constants table, an
/// integrator with its node cache, and the memo for shared route values.
pub struct Evaluator<'a> {
    ctx: &'a PrecisionContext,
    consts: &'a Constants,
    integ: Integrator,
    memo: BTreeMap<BaseIntegral, (BigReal, u64)>,
    memo_li4: Option<(BigComplex, u64)>,
}

/// `ln(1-x)` from whichever endpoint distance keeps relative accuracy.
fn ln_one_minus_x(p: &EvalPoint) -> Result<BigReal> {
    if p.dist_b < p.dist_a {
        p.dist_b.ln()
    } else {
        p.dist_a.neg().ln_1p()
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a PrecisionContext, consts: &'a Constants) -> Self {
        Evaluator {
            ctx,
            consts,
            integ: Integrator::new(ctx),
            memo: BTreeMap::new(),
            memo_li4: None,
        }
    }

    pub fn context(&self) -> &PrecisionContext {
        self.ctx
    }

    pub fn constants(&self) -> &Constants {
        self.consts
    }

    fn bits(&self) -> usize {
        self.ctx.working_bits()
    }

    fn base(&mut self, which: BaseIntegral) -> Result<(BigReal, u64)> {
        if let Some(v) = self.memo.get(&which) {
            return Ok(v.clone());
        }
        let bits = self.bits();
        let zero = BigReal::zero(bits);
        let one = BigReal::one(bits);
        let half_pi = self.ctx.pi().scale2(-1);
        let ln2 = self.ctx.ln2().clone();
        let r = match which {
            BaseIntegral::GenFn => {
                // 4·arcsin x/√(1-x²); arcsin(1-w) = π/2 - 2·arcsin(√(w/2))
                let hp = half_pi.clone();
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let asin = hp.sub(&p.dist_b.scale2(-1).sqrt()?.asin()?.scale2(1));
                    let two = BigReal::from_u64(2, asin.precision_bits());
                    let root = p.dist_b.mul(&two.sub(&p.dist_b)).sqrt()?;
                    Ok(asin.scale2(2).div(&root))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::AlgebraicLogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::SecLnSin => {
                // x²·ln(sin x)/cos(x); right half via u = π/2 - x:
                // sin x = cos u, ln cos u = ln1p(-2sin²(u/2)), sec x = 1/sin u
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let x2 = p.x.mul(&p.x);
                    if p.dist_b < p.dist_a {
                        let u = &p.dist_b;
                        let s = u.scale2(-1).sin();
                        let ln_cos = s.mul(&s).scale2(1).neg().ln_1p()?;
                        Ok(x2.mul(&ln_cos).div(&u.sin()))
                    } else {
                        let x = &p.dist_a;
                        Ok(x2.mul(&x.sin().ln()?).div(&x.cos()))
                    }
                };
                let spec =
                    IntegrandSpec::new(f, zero, half_pi.clone(), SingularityClass::LogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::LnSq1mSin => {
                // x·ln²(1-sin x); 1-sin x = 2sin²(u/2) near π/2
                let ln2c = ln2.clone();
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let l = if p.dist_b < p.dist_a {
                        let s = p.dist_b.scale2(-1).sin();
                        ln2c.add(&s.ln()?.scale2(1))
                    } else {
                        p.dist_a.sin().neg().ln_1p()?
                    };
                    Ok(p.x.mul(&l.mul(&l)))
                };
                let spec =
                    IntegrandSpec::new(f, zero, half_pi.clone(), SingularityClass::LogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::MomentH2 => {
                // 2·ln x·arcsin²(√x)/(1-x); near x = 1:
                // ln x = ln1p(-w), arcsin(√(1-w)) = π/2 - arcsin(√w)
                let hp = half_pi.clone();
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let (ln_x, asin) = if p.dist_b < p.dist_a {
                        (
                            p.dist_b.neg().ln_1p()?,
                            hp.sub(&p.dist_b.sqrt()?.asin()?),
                        )
                    } else {
                        (p.dist_a.ln()?, p.dist_a.sqrt()?.asin()?)
                    };
                    Ok(ln_x.mul(&asin.mul(&asin)).div(&p.dist_b).scale2(1))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::LogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::Atan3 => {
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let a = p.x.atan();
                    let den = BigReal::one(p.x.precision_bits()).add(&p.x.mul(&p.x));
                    Ok(a.powi(3).div(&den))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::Smooth);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::HalfAngle => {
                // 4·arctan x·ln²((1-x)²/(1+x²))/(1+x²)
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let one = BigReal::one(p.x.precision_bits());
                    let den = one.add(&p.x.mul(&p.x));
                    let l = ln_one_minus_x(p)?.scale2(1).sub(&den.ln()?);
                    Ok(p.x.atan().mul(&l.mul(&l)).div(&den).scale2(2))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::LogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
            BaseIntegral::CubedLogIm => {
                // Im of ∫ ln³((1-x)/(1-ix))/(1+x²) dx
                let pi = self.ctx.pi().clone();
                let f = move |p: &EvalPoint| -> Result<BigComplex> {
                    let bits = p.x.precision_bits();
                    let one = BigReal::one(bits);
                    let ln_w = ln_one_minus_x(p)?;
                    // Log(1 - ix), principal
                    let z = BigComplex::new(one.clone(), p.x.neg());
                    let log_z = z.ln(&pi)?;
                    let l = BigComplex::new(ln_w.sub(&log_z.re), log_z.im.neg());
                    let den = one.add(&p.x.mul(&p.x));
                    let cube = l.powi(3);
                    Ok(BigComplex::new(cube.re.div(&den), cube.im.div(&den)))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::LogEndpoint);
                let out = self.integ.integrate_complex(&spec)?;
                (out.value.im, out.evaluations)
            }
            BaseIntegral::ArcsinLnSq => {
                // 4·arcsin x·ln²(1-x)/√(1-x²)
                let hp = half_pi.clone();
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let bits = p.x.precision_bits();
                    let asin = hp.sub(&p.dist_b.scale2(-1).sqrt()?.asin()?.scale2(1));
                    let l = ln_one_minus_x(p)?;
                    let two = BigReal::from_u64(2, bits);
                    let root = p.dist_b.mul(&two.sub(&p.dist_b)).sqrt()?;
                    Ok(asin.mul(&l.mul(&l)).div(&root).scale2(2))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::AlgebraicLogEndpoint);
                let out = self.integ.integrate(&spec)?;
                (out.value, out.evaluations)
            }
        };
        self.memo.insert(which, r.clone());
        Ok(r)
    }

    /// Li₄(1+i) by quadrature (memoized).
    pub fn li4_one_plus_i(&mut self) -> Result<(BigComplex, u64)> {
        if let Some(v) = &self.memo_li4 {
            return Ok(v.clone());
        }
        let bits = self.bits();
        let z = BigComplex::new(BigReal::one(bits), BigReal::one(bits));
        let out = li4_offcut_with_work(&z, self.ctx, &mut self.integ)?;
        self.memo_li4 = Some(out.clone());
        Ok(out)
    }

    /// High-precision value of a catalog series via the relation chain.
    pub fn series_value(&mut self, id: SeriesId) -> Result<(BigReal, u64)> {
        let zeta2 = self.consts.value(ConstantSymbol::Zeta2).clone();
        match id {
            SeriesId::L1III => self.base(BaseIntegral::GenFn),
            SeriesId::L1IV => {
                let (s0, w0) = self.base(BaseIntegral::GenFn)?;
                let (m, w1) = self.base(BaseIntegral::MomentH2)?;
                Ok((zeta2.mul(&s0).add(&m), w0 + w1))
            }
            SeriesId::ThmI => {
                let (sa, w0) = self.series_value(SeriesId::L1IV)?;
                let (isec, w1) = self.base(BaseIntegral::SecLnSin)?;
                let (s0, w2) = self.base(BaseIntegral::GenFn)?;
                // S_B = (1/4)S_A + 2·I_sec + (3/4)·ζ(2)·S0
                let v = sa
                    .scale2(-2)
                    .add(&isec.scale2(1))
                    .add(&zeta2.mul(&s0).mul_u64(3).scale2(-2));
                Ok((v, w0 + w1 + w2))
            }
            SeriesId::ThmII => {
                let (sb, w0) = self.series_value(SeriesId::ThmI)?;
                let (isin, w1) = self.base(BaseIntegral::LnSq1mSin)?;
                Ok((isin.scale2(2).sub(&sb), w0 + w1))
            }
        }
    }

    /// Accelerated direct-summation value of a series.
    pub fn series_witness(&mut self, id: SeriesId, terms: u64) -> Result<(BigReal, BigReal, u64)> {
        let ps = sum_direct(id, terms, self.ctx)?;
        let acc = accelerate(&ps, id.spec().tail, self.ctx)?;
        Ok((acc.value, acc.error_gauge, terms))
    }

    fn quadrature_lhs(&mut self, id: IdentityId, k: u64) -> Result<(BigReal, u64)> {
        let bits = self.bits();
        let zero = BigReal::zero(bits);
        let one = BigReal::one(bits);
        let half_pi = self.ctx.pi().scale2(-1);
        match id {
            IdentityId::L1I => {
                // ∫₀¹ x^(k-1)·ln²(1-x) dx
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let l = ln_one_minus_x(p)?;
                    Ok(p.x.powi(k as i64 - 1).mul(&l.mul(&l)))
                };
                let spec = IntegrandSpec::new(f, zero, one, SingularityClass::LogEndpoint);
                let out = self.integ.integrate(&spec)?;
                Ok((out.value, out.evaluations))
            }
            IdentityId::L2II => {
                // ∫₀^(π/2) x²·sin(2kx)/sin(x) dx;
                // sin(2kx) = (-1)^(k+1)·sin(2k·u) with u = π/2 - x
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let bits = p.x.precision_bits();
                    if k == 0 {
                        return Ok(BigReal::zero(bits));
                    }
                    let x2 = p.x.mul(&p.x);
                    if p.dist_a < p.dist_b {
                        let x = &p.dist_a;
                        Ok(x2.mul(&x.mul_u64(2 * k).sin()).div(&x.sin()))
                    } else {
                        let u = &p.dist_b;
                        let s = u.mul_u64(2 * k).sin();
                        let signed = if k % 2 == 1 { s } else { s.neg() };
                        Ok(x2.mul(&signed).div(&u.cos()))
                    }
                };
                let spec = IntegrandSpec::new(f, zero, half_pi, SingularityClass::Smooth);
                let out = self.integ.integrate(&spec)?;
                Ok((out.value, out.evaluations))
            }
            IdentityId::L4K => {
                // ∫₀^(π/2) x²·cos^(2k-1) x dx; cos x = sin u
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    let c = p.dist_b.sin();
                    Ok(p.x.mul(&p.x).mul(&c.powi(2 * k as i64 - 1)))
                };
                let spec = IntegrandSpec::new(f, zero, half_pi, SingularityClass::Smooth);
                let out = self.integ.integrate(&spec)?;
                Ok((out.value, out.evaluations))
            }
            IdentityId::WallisK => {
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    Ok(p.dist_b.sin().powi(2 * k as i64 - 1))
                };
                let spec = IntegrandSpec::new(f, zero, half_pi, SingularityClass::Smooth);
                let out = self.integ.integrate(&spec)?;
                Ok((out.value, out.evaluations))
            }
            IdentityId::Xcos => {
                let f = move |p: &EvalPoint| -> Result<BigReal> {
                    Ok(p.x.mul(&p.x).mul(&p.dist_b.sin()))
                };
                let spec = IntegrandSpec::new(f, zero, half_pi, SingularityClass::Smooth);
                let out = self.integ.integrate(&spec)?;
                Ok((out.value, out.evaluations))
            }
            _ => Err(Error::UnknownId {
                id: String::from(id.name()),
            }),
        }
    }

    /// Evaluates one entry: returns (lhs, rhs, method, work) at working
    /// precision. For families this is one member.
    fn member_values(
        &mut self,
        entry: &Identity,
        k: u64,
        opts: &VerifyOptions,
    ) -> Result<(BigReal, BigReal, String, u64)> {
        let bits = self.bits();
        match entry.id {
            IdentityId::L1I => {
                let (lhs, work) = self.quadrature_lhs(entry.id, k)?;
                let hk = harmonic(k, 1);
                let hk2 = harmonic(k, 2);
                let exact = (&hk * &hk + hk2) / BigRational::from_integer(k.into());
                let rhs = BigReal::from_rational(&exact, bits);
                Ok((lhs, rhs, format!("tanh-sinh vs exact moment (k={k})"), work))
            }
            IdentityId::L2II => {
                let (lhs, work) = self.quadrature_lhs(entry.id, k)?;
                let rhs = closed_form_value(&lemma2_ik(k), self.consts);
                Ok((lhs, rhs, format!("tanh-sinh vs telescoped form (k={k})"), work))
            }
            IdentityId::L4K => {
                let (lhs, work) = self.quadrature_lhs(entry.id, k)?;
                let rhs = closed_form_value(&lemma4_rhs(k)?, self.consts);
                Ok((lhs, rhs, format!("tanh-sinh vs moment identity (k={k})"), work))
            }
            IdentityId::WallisK => {
                let (lhs, work) = self.quadrature_lhs(entry.id, k)?;
                let rhs = BigReal::from_rational(&wallis_exact(k)?, bits);
                Ok((lhs, rhs, format!("tanh-sinh vs exact value (n={k})"), work))
            }
            IdentityId::L1II => {
                // member k indexes the sample abscissas {1/10, 1/2, 9/10}
                let (num, den) = [(1u64, 10u64), (1, 2), (9, 10)][k as usize];
                let x = BigReal::from_u64_ratio(num, den, bits);
                let tol = self.ctx.internal_tolerance().div_u64(100);
                let (terms, bound) = gf_cut_for_tolerance(&x, &tol, self.ctx)?;
                let defect = gf_defect(&x, terms, self.ctx)?;
                Ok((
                    defect,
                    bound,
                    format!("series defect vs certified tail (x={num}/{den}, K={terms})"),
                    terms,
                ))
            }
            IdentityId::L2I => {
                // member k indexes x = π/6, π/4, π/3
                let denoms = [6u64, 4, 3];
                let x = self.ctx.pi().div_u64(denoms[k as usize]);
                let n = opts.terms.unwrap_or(100_000);
                let (defect, work) = self.pointwise_defect(&x, n)?;
                let one = BigReal::one(bits);
                let bound = BigReal::from_u64(n + 1, bits)
                    .recip()
                    .mul(&one.add(&one.scale2(-20)));
                Ok((
                    defect,
                    bound,
                    format!("pointwise sample vs certified tail (x=pi/{}, N={n})", denoms[k as usize]),
                    work,
                ))
            }
            _ => self.single_values(entry, opts),
        }
    }

    /// |tan x·ln sin x + Σ_{j≤N} c_j sin(2jx)| by coefficient streaming and
    /// a sine rotation recurrence.
    fn pointwise_defect(&mut self, x: &BigReal, n: u64) -> Result<(BigReal, u64)> {
        let target = x.tan().mul(&x.sin().ln()?);
        let two_x = x.scale2(1);
        let (sin_step, cos_step) = (two_x.sin(), two_x.cos());
        let mut s = sin_step.clone();
        let mut c = cos_step.clone();
        let mut stream = FourierCoeffStream::new(self.ctx);
        let mut acc = BigReal::zero(self.bits());
        for _ in 0..n {
            let ck = stream.next_coeff();
            acc = acc.add(&ck.mul(&s));
            let ns = s.mul(&cos_step).add(&c.mul(&sin_step));
            let nc = c.mul(&cos_step).sub(&s.mul(&sin_step));
            s = ns;
            c = nc;
        }
        Ok((target.add(&acc).abs(), n))
    }

    /// Single-valued entries (everything that is not a per-k family).
    fn single_values(
        &mut self,
        entry: &Identity,
        opts: &VerifyOptions,
    ) -> Result<(BigReal, BigReal, String, u64)> {
        match entry.id {
            IdentityId::L2III => {
                let (lhs, work) = self.base(BaseIntegral::SecLnSin)?;
                let rhs = self.rhs_form(entry);
                Ok((lhs, rhs, String::from("tanh-sinh vs closed form"), work))
            }
            IdentityId::L3II => {
                let (lhs, work) = self.base(BaseIntegral::LnSq1mSin)?;
                let rhs = self.rhs_form(entry);
                Ok((lhs, rhs, String::from("tanh-sinh vs closed form"), work))
            }
            IdentityId::Atan3 => {
                let (lhs, work) = self.base(BaseIntegral::Atan3)?;
                let rhs = self.rhs_form(entry);
                Ok((lhs, rhs, String::from("tanh-sinh vs closed form"), work))
            }
            IdentityId::Xcos => {
                let (lhs, work) = self.quadrature_lhs(entry.id, 0)?;
                let rhs = self.rhs_form(entry);
                Ok((lhs, rhs, String::from("tanh-sinh vs closed form"), work))
            }
            IdentityId::L3I => {
                let (v, work) = self.li4_one_plus_i()?;
                let rhs = self.rhs_form(entry);
                Ok((
                    v.re,
                    rhs,
                    String::from("complex tanh-sinh kernel vs closed form"),
                    work.max(1),
                ))
            }
            IdentityId::Eq21 => {
                let (lhs, w0) = self.base(BaseIntegral::LnSq1mSin)?;
                let (rhs, w1) = self.base(BaseIntegral::HalfAngle)?;
                Ok((
                    lhs,
                    rhs,
                    String::from("two quadratures related by the half-angle substitution"),
                    w0 + w1,
                ))
            }
            IdentityId::Eq22 => {
                let (lhs, w0) = self.base(BaseIntegral::LnSq1mSin)?;
                let (a3, w1) = self.base(BaseIntegral::Atan3)?;
                let (im, w2) = self.base(BaseIntegral::CubedLogIm)?;
                let third16 = BigReal::from_u64(16, self.bits()).div_u64(3);
                let rhs = third16.mul(&a3.add(&im));
                Ok((
                    lhs,
                    rhs,
                    String::from("quadrature vs arctan-cube plus imaginary cubed-log route"),
                    w0 + w1 + w2,
                ))
            }
            IdentityId::RelI => {
                let (isec, w0) = self.base(BaseIntegral::SecLnSin)?;
                let (s0, w1) = self.base(BaseIntegral::GenFn)?;
                let zeta2 = self.consts.value(ConstantSymbol::Zeta2);
                // -2·I_sec - (3/4)·ζ(2)·S0
                let lhs = isec.scale2(1).neg().sub(&zeta2.mul(&s0).mul_u64(3).scale2(-2));
                let rhs = self.rhs_form(entry);
                Ok((
                    lhs,
                    rhs,
                    String::from("summed moment identity route vs closed form"),
                    w0 + w1,
                ))
            }
            IdentityId::RelII => {
                let (lhs, w0) = self.base(BaseIntegral::ArcsinLnSq)?;
                let (isin, w1) = self.base(BaseIntegral::LnSq1mSin)?;
                Ok((
                    lhs,
                    isin.scale2(2),
                    String::from("k->2k route integral vs 4x the sine-log integral"),
                    w0 + w1,
                ))
            }
            IdentityId::L1III | IdentityId::L1IV | IdentityId::ThmI | IdentityId::ThmII => {
                self.series_entry_values(entry, opts)
            }
            other => Err(Error::UnknownId {
                id: String::from(other.name()),
            }),
        }
    }

    fn series_entry_values(
        &mut self,
        entry: &Identity,
        opts: &VerifyOptions,
    ) -> Result<(BigReal, BigReal, String, u64)> {
        let id = entry.series.expect("series entries carry a SeriesId");
        let rhs = self.rhs_form(entry);
        let default_terms = match id {
            SeriesId::L1III => 2_000,
            _ => 20_000,
        };
        let terms = opts.terms.unwrap_or(default_terms);
        match opts.method.unwrap_or(MethodOverride::Integral) {
            MethodOverride::Direct => {
                let ps = sum_direct(id, terms, self.ctx)?;
                Ok((
                    ps.last().clone(),
                    rhs,
                    format!("direct summation S_N, N={terms} (truncated; no extrapolation)"),
                    terms,
                ))
            }
            MethodOverride::Accelerated => {
                let (v, gauge, work) = self.series_witness(id, terms)?;
                Ok((
                    v,
                    rhs,
                    format!(
                        "accelerated direct summation, N={terms}, gauge={}",
                        gauge.to_sci_string(3)
                    ),
                    work,
                ))
            }
            MethodOverride::Integral => {
                let (v, work) = self.series_value(id)?;
                if !opts.witness {
                    return Ok((v, rhs, String::from("integral/relational route"), work));
                }
                let (wv, _gauge, wwork) = self.series_witness(id, terms)?;
                let diff = v.sub(&wv).abs();
                let denom = v.abs().max(&BigReal::one(self.bits()));
                let agreed = decimal::digits_agreed_from_strings(
                    &diff.to_sci_string(self.ctx.target_digits() as usize),
                    &denom.to_sci_string(self.ctx.target_digits() as usize),
                )
                .unwrap_or((self.ctx.target_digits() + self.ctx.guard_digits()) as i64);
                if agreed < 8 {
                    return Err(Error::NonConvergence {
                        what: "series witness disagrees with relational route",
                        last: wv.to_sci_string(12),
                        previous: v.to_sci_string(12),
                    });
                }
                Ok((
                    v,
                    rhs,
                    format!("integral/relational route + summation witness (N={terms}, agrees to {agreed} digits)"),
                    work + wwork,
                ))
            }
        }
    }

    fn rhs_form(&self, entry: &Identity) -> BigReal {
        match &entry.rhs {
            Rhs::Form(cf) => closed_form_value(cf, self.consts),
            _ => BigReal::zero(self.bits()),
        }
    }

    /// Evaluates one entry's left-hand side as a standalone value: the
    /// integral, series, or defect the entry is about, with the method and
    /// an error gauge (the driving tolerance, or the extrapolation gauge
    /// for accelerated summation).
    pub fn eval_entry(&mut self, id: IdentityId, opts: &VerifyOptions) -> Result<EvalOutcome> {
        let entry = catalog_entry(id);
        if let (Some(series), Some(MethodOverride::Accelerated)) = (entry.series, opts.method) {
            let default_terms = if series == SeriesId::L1III { 2_000 } else { 20_000 };
            let terms = opts.terms.unwrap_or(default_terms);
            let (v, gauge, work) = self.series_witness(series, terms)?;
            return Ok(EvalOutcome {
                value: v,
                method: format!("accelerated direct summation, N={terms}"),
                gauge,
                work,
            });
        }
        if let (Some(series), Some(MethodOverride::Direct)) = (entry.series, opts.method) {
            let default_terms = if series == SeriesId::L1III { 2_000 } else { 20_000 };
            let terms = opts.terms.unwrap_or(default_terms);
            let ps = sum_direct(series, terms, self.ctx)?;
            let bound = crate::series::tail_bound(series, terms, self.bits())?;
            return Ok(EvalOutcome {
                value: ps.last().clone(),
                method: format!("direct summation S_N, N={terms}; gauge is the certified tail bound"),
                gauge: bound,
                work: terms,
            });
        }
        let k = match (entry.param, entry.id) {
            (Some((lo, _)), _) => opts.k.unwrap_or(lo),
            (None, IdentityId::L1II) | (None, IdentityId::L2I) => opts.k.unwrap_or(0),
            _ => 0,
        };
        let (lhs, _rhs, method, work) = self.member_values(&entry, k, opts)?;
        Ok(EvalOutcome {
            value: lhs,
            method,
            gauge: self.ctx.internal_tolerance(),
            work,
        })
    }

    /// Verifies one catalog entry, producing a structured report. Family
    /// entries verify every member (or the one selected in the options)
    /// and report the worst member.
    pub fn verify_entry(&mut self, id: IdentityId, opts: &VerifyOptions) -> VerificationReport {
        #[cfg(feature = "std")]
        let t0 = std::time::Instant::now();
        let entry = catalog_entry(id);
        let outcome = self.verify_inner(&entry, opts);
        #[cfg(feature = "std")]
        let elapsed = t0.elapsed().as_secs_f64();
        #[cfg(not(feature = "std"))]
        let elapsed = 0.0;
        match outcome {
            Ok(mut report) => {
                report.elapsed_seconds = elapsed;
                report
            }
            Err(e) => VerificationReport {
                id: String::from(id.name()),
                method: format!("error: {e}"),
                lhs_value: String::from("non-converged"),
                rhs_value: String::from("non-converged"),
                abs_residual: String::from("inf"),
                digits_agreed: 0,
                work: 0,
                elapsed_seconds: elapsed,
                status: Status::NonConverged,
            },
        }
    }

    fn verify_inner(&mut self, entry: &Identity, opts: &VerifyOptions) -> Result<VerificationReport> {
        let sig = self.ctx.target_digits() as usize;
        let cap = (self.ctx.target_digits() + self.ctx.guard_digits()) as i64;
        let members: Vec<u64> = match (entry.param, entry.id) {
            (Some((lo, hi)), _) => match opts.k {
                Some(k) if k >= lo && k <= hi => alloc::vec![k],
                Some(k) => {
                    return Err(Error::InvalidInput {
                        message: format!("k = {k} outside the family range {lo}..={hi}"),
                    })
                }
                None => (lo..=hi).collect(),
            },
            // the sampled entries have three abscissas each
            (None, IdentityId::L1II) | (None, IdentityId::L2I) => match opts.k {
                Some(k) if k < 3 => alloc::vec![k],
                Some(k) => {
                    return Err(Error::InvalidInput {
                        message: format!("sample index {k} out of range 0..3"),
                    })
                }
                None => alloc::vec![0, 1, 2],
            },
            (None, _) => alloc::vec![0],
        };

        let bound_based = matches!(entry.lhs, Strategy::SeriesDefectWithTail | Strategy::PointwiseSample);
        let mut work = 0u64;
        let mut worst: Option<(BigReal, BigReal, BigReal, String)> = None; // residual, lhs, rhs, method
        let mut all_pass = true;
        for &k in &members {
            let (lhs, rhs, method, w) = self.member_values(entry, k, opts)?;
            work += w;
            let (residual, pass) = if bound_based {
                // lhs is already a defect; rhs is its certified bound
                (lhs.clone(), lhs <= rhs)
            } else {
                let r = lhs.sub(&rhs).abs();
                let pass = r < self.ctx.target_tolerance();
                (r, pass)
            };
            all_pass &= pass;
            let is_worse = match &worst {
                None => true,
                Some((r0, ..)) => residual > *r0,
            };
            if is_worse {
                worst = Some((residual, lhs, rhs, method));
            }
        }
        let (residual, lhs, rhs, method) = worst.expect("at least one member");
        let lhs_value = lhs.to_sci_string(sig);
        let rhs_value = rhs.to_sci_string(sig);
        let abs_residual = residual.to_sci_string(sig);
        let digits_agreed = decimal::digits_agreed_from_strings(&abs_residual, &rhs_value)
            .unwrap_or(cap)
            .min(cap);
        Ok(VerificationReport {
            id: String::from(entry.id.name()),
            method,
            lhs_value,
            rhs_value,
            abs_residual,
            digits_agreed,
            work,
            elapsed_seconds: 0.0,
            status: if all_pass { Status::Pass } else { Status::Fail },
        })
    }
}

/// Verifies a single entry with a fresh evaluator.
pub fn verify(
    id: IdentityId,
    ctx: &PrecisionContext,
    consts: &Constants,
    opts: &VerifyOptions,
) -> VerificationReport {
    Evaluator::new(ctx, consts).verify_entry(id, opts)
}

/// Verifies the whole catalog. Reports are ordered by id and their values
/// are independent of `parallelism` (only `elapsed_seconds` varies run to
/// run). Per-entry failures are isolated: one non-converged entry never
/// aborts the rest.
pub fn verify_all(
    ctx: &PrecisionContext,
    consts: &Constants,
    parallelism: usize,
    opts: &VerifyOptions,
) -> Vec<VerificationReport> {
    let ids: Vec<IdentityId> = IdentityId::ALL.to_vec();
    let mut reports = run_all(ctx, consts, parallelism.max(1), opts, &ids);
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

#[cfg(feature = "std")]
fn run_all(
    ctx: &PrecisionContext,
    consts: &Constants,
    parallelism: usize,
    opts: &VerifyOptions,
    ids: &[IdentityId],
) -> Vec<VerificationReport> {
    use std::sync::Mutex;
    if parallelism <= 1 {
        let mut ev = Evaluator::new(ctx, consts);
        return ids.iter().map(|&id| ev.verify_entry(id, opts)).collect();
    }
    let queue = Mutex::new(ids.to_vec());
    let out: Mutex<Vec<VerificationReport>> = Mutex::new(Vec::with_capacity(ids.len()));
    std::thread::scope(|scope| {
        for _ in 0..parallelism.min(ids.len()) {
            scope.spawn(|| {
                let mut ev = Evaluator::new(ctx, consts);
                loop {
                    let id = { queue.lock().unwrap().pop() };
                    match id {
                        Some(id) => {
                            let report = ev.verify_entry(id, opts);
                            out.lock().unwrap().push(report);
                        }
                        None => break,
                    }
                }
            });
        }
    });
    out.into_inner().unwrap()
}

#[cfg(not(feature = "std"))]
fn run_all(
    ctx: &PrecisionContext,
    consts: &Constants,
    _parallelism: usize,
    opts: &VerifyOptions,
    ids: &[IdentityId],
) -> Vec<VerificationReport> {
    let mut ev = Evaluator::new(ctx, consts);
    ids.iter().map(|&id| ev.verify_entry(id, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::{closed_form_l1_iv, closed_form_thm_i, closed_form_thm_ii};
    use crate::numerics::{make_context, ratio_i64};
    use crate::special::ClosedForm;

    #[test]
    fn relation_chain_hits_every_closed_form() {
        let ctx = make_context(30).unwrap();
        let consts = Constants::compute(&ctx).unwrap();
        let mut ev = Evaluator::new(&ctx, &consts);
        let forms = [
            (SeriesId::L1III, ClosedForm::new(alloc::vec![(ratio_i64(3, 1), ConstantSymbol::Zeta2)])),
            (SeriesId::L1IV, closed_form_l1_iv()),
            (SeriesId::ThmI, closed_form_thm_i()),
            (SeriesId::ThmII, closed_form_thm_ii()),
        ];
        for (series, form) in forms {
            let (value, work) = ev.series_value(series).unwrap();
            let closed = closed_form_value(&form, &consts);
            assert!(
                value.sub(&closed).abs() < ctx.target_tolerance(),
                "{} route is off by {}",
                series.name(),
                value.sub(&closed).abs().to_sci_string(4)
            );
            assert!(work > 0);
        }
    }

    #[test]
    fn eval_entry_agrees_with_verification_lhs() {
        let ctx = make_context(25).unwrap();
        let consts = Constants::compute(&ctx).unwrap();
        let mut ev = Evaluator::new(&ctx, &consts);
        let out = ev.eval_entry(IdentityId::Xcos, &VerifyOptions::default()).unwrap();
        let report = ev.verify_entry(IdentityId::Xcos, &VerifyOptions::default());
        assert_eq!(out.value.to_sci_string(25), report.lhs_value);
    }

    #[test]
    fn method_override_accelerated_reports_gauge() {
        let ctx = make_context(25).unwrap();
        let consts = Constants::compute(&ctx).unwrap();
        let mut ev = Evaluator::new(&ctx, &consts);
        let opts = VerifyOptions {
            method: Some(MethodOverride::Accelerated),
            terms: Some(2_000),
            ..Default::default()
        };
        let out = ev.eval_entry(IdentityId::L1III, &opts).unwrap();
        assert!(out.method.contains("accelerated"));
        // 3ζ(2) to well beyond 8 digits
        let truth = consts.value(ConstantSymbol::Zeta2).mul_u64(3);
        assert!(out.value.sub(&truth).abs() < ctx.pow10_neg(8));
    }
}
