//! The closed-form constant basis and formal linear combinations over it.


use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Result;
use crate::numerics::{BigRational, BigReal, PrecisionContext};
use crate::quad::Integrator;

use super::polylog::{catalan, polylog_int};
use super::zeta::zeta_int;

/// The closed and enumerable symbol set every right-hand side in the
/// catalog is written over. Each symbol has exactly one evaluation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstantSymbol {
    /// 1
    One,
    /// ζ(2)
    Zeta2,
    /// ζ(4)
    Zeta4,
    /// ln 2
    Ln2,
    /// ln²(2)·ζ(2)
    Ln2SqZeta2,
    /// ln⁴(2)
    Ln2P4,
    /// Catalan's constant G
    G,
    /// G²
    GSq,
    /// Li₄(1/2)
    Li4Half,
    /// π³ (so Ti₃(1) = π³/32 is expressible)
    PiCubed,
}

impl ConstantSymbol {
    pub const ALL: [ConstantSymbol; 10] = [
        ConstantSymbol::One,
        ConstantSymbol::Zeta2,
        ConstantSymbol::Zeta4,
        ConstantSymbol::Ln2,
        ConstantSymbol::Ln2SqZeta2,
        ConstantSymbol::Ln2P4,
        ConstantSymbol::G,
        ConstantSymbol::GSq,
        ConstantSymbol::Li4Half,
        ConstantSymbol::PiCubed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantSymbol::One => "ONE",
            ConstantSymbol::Zeta2 => "ZETA2",
            ConstantSymbol::Zeta4 => "ZETA4",
            ConstantSymbol::Ln2 => "LN2",
            ConstantSymbol::Ln2SqZeta2 => "LN2_SQ_ZETA2",
            ConstantSymbol::Ln2P4 => "LN2_P4",
            ConstantSymbol::G => "G",
            ConstantSymbol::GSq => "G_SQ",
            ConstantSymbol::Li4Half => "LI4_HALF",
            ConstantSymbol::PiCubed => "PI_CUBED",
        }
    }

    pub fn parse(s: &str) -> Option<ConstantSymbol> {
        Self::ALL.iter().copied().find(|c| c.name() == s)
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).expect("symbol in ALL")
    }
}

/// A formal rational linear combination over the constant basis. At most
/// one term per symbol; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    terms: Vec<(BigRational, ConstantSymbol)>,
}

impl ClosedForm {
    pub fn empty() -> Self {
        ClosedForm { terms: Vec::new() }
    }

    pub fn new(terms: Vec<(BigRational, ConstantSymbol)>) -> Self {
        let mut cf = ClosedForm::empty();
        for (c, s) in terms {
            cf.add_term(&c, s);
        }
        cf
    }

    pub fn add_term(&mut self, coeff: &BigRational, symbol: ConstantSymbol) {
        if coeff.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(_, s)| *s == symbol) {
            slot.0 += coeff;
        } else {
            self.terms.push((coeff.clone(), symbol));
        }
        self.terms.retain(|(c, _)| !c.is_zero());
        self.terms.sort_by_key(|&(_, s)| s.index());
    }

    pub fn terms(&self) -> &[(BigRational, ConstantSymbol)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, symbol: ConstantSymbol) -> BigRational {
        self.terms
            .iter()
            .find(|(_, s)| *s == symbol)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        ClosedForm::new(self.terms.iter().map(|(c, s)| (c * f, *s)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (c, s) in &rhs.terms {
            out.add_term(c, *s);
        }
        out
    }
}

impl core::fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *s == ConstantSymbol::One {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·{}", s.name())?;
            }
        }
        Ok(())
    }
}

/// Evaluated basis values for one context. Built eagerly so the table is
/// immutable and freely shareable afterwards; the single-initialization
/// contract is met by constructing the table before any concurrent use.
#[derive(Clone, Debug)]
pub struct Constants {
    values: Vec<BigReal>,
}

impl Constants {
    pub fn compute(ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.working_bits();
        let z2 = zeta_int(2, ctx)?;
        let z4 = zeta_int(4, ctx)?;
        let ln2 = ctx.ln2().clone();
        let g = catalan(ctx);
        let half = BigReal::from_u64_ratio(1, 2, bits);
        let li4h = polylog_int(4, &half, ctx)?;
        let ln2_sq = ln2.mul(&ln2);
        let values = alloc::vec![
            BigReal::one(bits),
            z2.clone(),
            z4,
            ln2.clone(),
            ln2_sq.mul(&z2),
            ln2_sq.mul(&ln2_sq),
            g.clone(),
            g.mul(&g),
            li4h,
            ctx.pi().powi(3),
        ];
        Ok(Constants { values })
    }

    pub fn value(&self, symbol: ConstantSymbol) -> &BigReal {
        &self.values[symbol.index()]
    }
}

/// Evaluates a symbol's rule against a prebuilt table.
pub fn basis_value(symbol: ConstantSymbol, consts: &Constants) -> BigReal {
    consts.value(symbol).clone()
}

/// Σ coefficient·basis_value(symbol), each term at working precision.
pub fn closed_form_value(cf: &ClosedForm, consts: &Constants) -> BigReal {
    let bits = consts.value(ConstantSymbol::One).precision_bits();
    let mut acc = BigReal::zero(bits);
    for (c, s) in cf.terms() {
        acc = acc.add(&BigReal::from_rational(c, bits).mul(consts.value(*s)));
    }
    acc
}

/// Convenience: builds the table and an integrator in one shot.
pub fn constants_with_integrator(ctx: &PrecisionContext) -> Result<(Constants, Integrator)> {
    Ok((Constants::compute(ctx)?, Integrator::new(ctx)))
}
