//! The identity catalog and its verification engine.
//!
//! Every identity the engine knows is a catalog entry binding a
//! left-hand-side evaluation strategy to a right-hand side (a closed form
//! over the constant basis, or a second strategy), plus the anchor naming
//! which lemma/theorem/equation it is. Verification evaluates both sides
//! at working precision and reports the residual in a structured record.

mod engine;

use alloc::string::String;
use alloc::vec::Vec;

use crate::numerics::{ratio_i64, BigRational};
use crate::series::SeriesId;
use crate::special::{ClosedForm, ConstantSymbol};

pub use engine::{verify, verify_all, EvalOutcome, Evaluator, MethodOverride, VerifyOptions};

/// Stable identifiers for the 19 catalog entries. Per-k families are one
/// entry each; their members expand at verification time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    L1I,
    L1II,
    L1III,
    L1IV,
    L2I,
    L2II,
    L2III,
    L3I,
    L3II,
    Eq21,
    Eq22,
    Atan3,
    L4K,
    WallisK,
    Xcos,
    RelI,
    RelII,
    ThmI,
    ThmII,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::L1I,
        IdentityId::L1II,
        IdentityId::L1III,
        IdentityId::L1IV,
        IdentityId::L2I,
        IdentityId::L2II,
        IdentityId::L2III,
        IdentityId::L3I,
        IdentityId::L3II,
        IdentityId::Eq21,
        IdentityId::Eq22,
        IdentityId::Atan3,
        IdentityId::L4K,
        IdentityId::WallisK,
        IdentityId::Xcos,
        IdentityId::RelI,
        IdentityId::RelII,
        IdentityId::ThmI,
        IdentityId::ThmII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::L1I => "L1_I",
            IdentityId::L1II => "L1_II",
            IdentityId::L1III => "L1_III",
            IdentityId::L1IV => "L1_IV",
            IdentityId::L2I => "L2_I",
            IdentityId::L2II => "L2_II",
            IdentityId::L2III => "L2_III",
            IdentityId::L3I => "L3_I",
            IdentityId::L3II => "L3_II",
            IdentityId::Eq21 => "EQ_2_1",
            IdentityId::Eq22 => "EQ_2_2",
            IdentityId::Atan3 => "ATAN3",
            IdentityId::L4K => "L4_K",
            IdentityId::WallisK => "WALLIS_K",
            IdentityId::Xcos => "XCOS",
            IdentityId::RelI => "REL_I",
            IdentityId::RelII => "REL_II",
            IdentityId::ThmI => "THM_I",
            IdentityId::ThmII => "THM_II",
        }
    }

    pub fn parse(s: &str) -> Option<IdentityId> {
        Self::ALL.iter().copied().find(|id| id.name() == s)
    }
}

/// How an entry's left-hand side is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Direct tanh-sinh evaluation of the defining integral.
    Quadrature,
    /// High-precision value assembled from other catalog integrals through
    /// the relation chain, plus an accelerated direct-summation witness.
    SeriesRelational,
    /// Truncated series against its certified tail bound.
    SeriesDefectWithTail,
    /// Pointwise samples of an expansion against a certified truncation
    /// bound (these entries pass/fail against the bound, not a fixed
    /// epsilon).
    PointwiseSample,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Quadrature => "quadrature",
            Strategy::SeriesRelational => "series-relational",
            Strategy::SeriesDefectWithTail => "series-defect-with-tail",
            Strategy::PointwiseSample => "pointwise-sample",
        }
    }
}

/// Right-hand side: a closed form over the basis, or a second independent
/// evaluation strategy.
#[derive(Clone, Debug)]
pub enum Rhs {
    Form(ClosedForm),
    /// Description of the alternate evaluation (e.g. another integral
    /// related by a change of variables).
    Alternate(&'static str),
    /// Per-parameter closed forms (families whose RHS depends on k).
    PerParameter(&'static str),
}

/// One catalog entry.
#[derive(Clone, Debug)]
pub struct Identity {
    pub id: IdentityId,
    pub description: &'static str,
    pub lhs: Strategy,
    pub rhs: Rhs,
    /// Inclusive parameter range for per-k families.
    pub param: Option<(u64, u64)>,
    /// Which lemma/theorem/equation the entry pins down.
    pub anchor: &'static str,
    /// Series identifier for the four series entries.
    pub series: Option<SeriesId>,
}

fn r(p: i64, q: i64) -> BigRational {
    ratio_i64(p, q)
}

/// Closed form of the order-2 weighted series: -ζ(4) + 8Li₄(1/2)
/// + 4ln²2·ζ(2) + (1/3)ln⁴2.
pub fn closed_form_l1_iv() -> ClosedForm {
    ClosedForm::new(alloc::vec![
        (r(-1, 1), ConstantSymbol::Zeta4),
        (r(8, 1), ConstantSymbol::Li4Half),
        (r(4, 1), ConstantSymbol::Ln2SqZeta2),
        (r(1, 3), ConstantSymbol::Ln2P4),
    ])
}

/// -8G² + 11ζ(4) + 2Li₄(1/2) + ln²2·ζ(2) + (1/12)ln⁴2.
pub fn closed_form_thm_i() -> ClosedForm {
    ClosedForm::new(alloc::vec![
        (r(-8, 1), ConstantSymbol::GSq),
        (r(11, 1), ConstantSymbol::Zeta4),
        (r(2, 1), ConstantSymbol::Li4Half),
        (r(1, 1), ConstantSymbol::Ln2SqZeta2),
        (r(1, 12), ConstantSymbol::Ln2P4),
    ])
}

/// 8G² + (103/2)ζ(4) - 22Li₄(1/2) + 7ln²2·ζ(2) - (11/12)ln⁴2.
pub fn closed_form_thm_ii() -> ClosedForm {
    ClosedForm::new(alloc::vec![
        (r(8, 1), ConstantSymbol::GSq),
        (r(103, 2), ConstantSymbol::Zeta4),
        (r(-22, 1), ConstantSymbol::Li4Half),
        (r(7, 1), ConstantSymbol::Ln2SqZeta2),
        (r(-11, 12), ConstantSymbol::Ln2P4),
    ])
}

/// Re Li₄(1±i) = (485/512)ζ(4) - (5/16)Li₄(1/2) + (1/8)ln²2·ζ(2)
/// - (5/384)ln⁴2.
pub fn closed_form_l3_i() -> ClosedForm {
    ClosedForm::new(alloc::vec![
        (r(485, 512), ConstantSymbol::Zeta4),
        (r(-5, 16), ConstantSymbol::Li4Half),
        (r(1, 8), ConstantSymbol::Ln2SqZeta2),
        (r(-5, 384), ConstantSymbol::Ln2P4),
    ])
}

/// (125/8)ζ(4) - 5Li₄(1/2) + 2ln²2·ζ(2) - (5/24)ln⁴2.
pub fn closed_form_l3_ii() -> ClosedForm {
    ClosedForm::new(alloc::vec![
        (r(125, 8), ConstantSymbol::Zeta4),
        (r(-5, 1), ConstantSymbol::Li4Half),
        (r(2, 1), ConstantSymbol::Ln2SqZeta2),
        (r(-5, 24), ConstantSymbol::Ln2P4),
    ])
}

/// The full machine-readable catalog, in declaration order.
pub fn catalog() -> Vec<Identity> {
    alloc::vec![
        Identity {
            id: IdentityId::L1I,
            description: "int_0^1 x^(k-1) ln^2(1-x) dx = (H_k^2 + H_k^(2))/k",
            lhs: Strategy::Quadrature,
            rhs: Rhs::PerParameter("(H_k^2 + H_k^(2))/k exactly"),
            param: Some((1, 10)),
            anchor: "Lemma 1(i)",
            series: None,
        },
        Identity {
            id: IdentityId::L1II,
            description: "(1/2) sum 4^k x^(2k-1)/(k C(2k,k)) = arcsin(x)/sqrt(1-x^2)",
            lhs: Strategy::SeriesDefectWithTail,
            rhs: Rhs::Alternate("arcsin(x)/sqrt(1-x^2) at x in {1/10, 1/2, 9/10}"),
            param: None,
            anchor: "Lemma 1(ii)",
            series: None,
        },
        Identity {
            id: IdentityId::L1III,
            description: "sum 4^k/(k^2 C(2k,k)) = 3 zeta(2)",
            lhs: Strategy::SeriesRelational,
            rhs: Rhs::Form(ClosedForm::new(alloc::vec![(r(3, 1), ConstantSymbol::Zeta2)])),
            param: None,
            anchor: "Lemma 1(iii)",
            series: Some(SeriesId::L1III),
        },
        Identity {
            id: IdentityId::L1IV,
            description: "sum 4^k H_k^(2)/(k^2 C(2k,k)) in closed form",
            lhs: Strategy::SeriesRelational,
            rhs: Rhs::Form(closed_form_l1_iv()),
            param: None,
            anchor: "Lemma 1(iv)",
            series: Some(SeriesId::L1IV),
        },
        Identity {
            id: IdentityId::L2I,
            description: "tan(x) ln(sin x) = -sum c_k sin(2kx), c_k the moment coefficients",
            lhs: Strategy::PointwiseSample,
            rhs: Rhs::Alternate("certified truncation bound at x in {pi/6, pi/4, pi/3}"),
            param: None,
            anchor: "Lemma 2(i)",
            series: None,
        },
        Identity {
            id: IdentityId::L2II,
            description: "int_0^(pi/2) x^2 csc(x) sin(2kx) dx telescoped closed form",
            lhs: Strategy::Quadrature,
            rhs: Rhs::PerParameter("3 zeta(2) p_k - 4 q_k with exact alternating odd partial sums"),
            param: Some((0, 8)),
            anchor: "Lemma 2(ii)",
            series: None,
        },
        Identity {
            id: IdentityId::L2III,
            description: "int_0^(pi/2) x^2 sec(x) ln(sin x) dx = (45/16) zeta(4) - 4G^2",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Form(ClosedForm::new(alloc::vec![
                (r(45, 16), ConstantSymbol::Zeta4),
                (r(-4, 1), ConstantSymbol::GSq),
            ])),
            param: None,
            anchor: "Lemma 2(iii)",
            series: None,
        },
        Identity {
            id: IdentityId::L3I,
            description: "Re Li_4(1+i) in closed form",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Form(closed_form_l3_i()),
            param: None,
            anchor: "Lemma 3(i)",
            series: None,
        },
        Identity {
            id: IdentityId::L3II,
            description: "int_0^(pi/2) x ln^2(1-sin x) dx in closed form",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Form(closed_form_l3_ii()),
            param: None,
            anchor: "Lemma 3(ii)",
            series: None,
        },
        Identity {
            id: IdentityId::Eq21,
            description: "x -> 2 arctan x change of variables equates the two integrals",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Alternate("4 int_0^1 arctan(x) ln^2((1-x)^2/(1+x^2))/(1+x^2) dx"),
            param: None,
            anchor: "Eq. (2.1)",
            series: None,
        },
        Identity {
            id: IdentityId::Eq22,
            description: "decomposition into arctan^3 and the imaginary cubed-log integral",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Alternate(
                "(16/3) int arctan^3/(1+x^2) + (16/3) Im int ln^3((1-x)/(1-ix))/(1+x^2)"
            ),
            param: None,
            anchor: "Eq. (2.2)",
            series: None,
        },
        Identity {
            id: IdentityId::Atan3,
            description: "int_0^1 arctan^3(x)/(1+x^2) dx = (45/512) zeta(4)",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Form(ClosedForm::new(alloc::vec![(r(45, 512), ConstantSymbol::Zeta4)])),
            param: None,
            anchor: "Lemma 3(ii) proof",
            series: None,
        },
        Identity {
            id: IdentityId::L4K,
            description: "int_0^(pi/2) x^2 cos^(2k-1)(x) dx per-k closed form",
            lhs: Strategy::Quadrature,
            rhs: Rhs::PerParameter("(1/4) b_k H_k^(2)/k - b_k H_2k^(2)/k + (3/4) zeta(2) b_k/k"),
            param: Some((1, 10)),
            anchor: "Lemma 4",
            series: None,
        },
        Identity {
            id: IdentityId::WallisK,
            description: "int_0^(pi/2) cos^(2n-1)(x) dx = (1/2) 4^n/(n C(2n,n))",
            lhs: Strategy::Quadrature,
            rhs: Rhs::PerParameter("(1/2) 4^n/(n C(2n,n)) exactly"),
            param: Some((1, 10)),
            anchor: "Lemma 4 proof",
            series: None,
        },
        Identity {
            id: IdentityId::Xcos,
            description: "int_0^(pi/2) x^2 cos(x) dx = (3/2) zeta(2) - 2",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Form(ClosedForm::new(alloc::vec![
                (r(3, 2), ConstantSymbol::Zeta2),
                (r(-2, 1), ConstantSymbol::One),
            ])),
            param: None,
            anchor: "Lemma 4 proof",
            series: None,
        },
        Identity {
            id: IdentityId::RelI,
            description: "(1/4)S_A - S_B = 8G^2 - (45/4) zeta(4) for the order-2 weighted sums",
            lhs: Strategy::SeriesRelational,
            rhs: Rhs::Form(ClosedForm::new(alloc::vec![
                (r(8, 1), ConstantSymbol::GSq),
                (r(-45, 4), ConstantSymbol::Zeta4),
            ])),
            param: None,
            anchor: "Theorem (i) proof",
            series: None,
        },
        Identity {
            id: IdentityId::RelII,
            description: "S_C + S_B = 4 int_0^(pi/2) x ln^2(1-sin x) dx",
            lhs: Strategy::Quadrature,
            rhs: Rhs::Alternate("4x the Lemma 3(ii) integral"),
            param: None,
            anchor: "Theorem (ii) proof",
            series: None,
        },
        Identity {
            id: IdentityId::ThmI,
            description: "sum 4^k H_2k^(2)/(k^2 C(2k,k)) in closed form",
            lhs: Strategy::SeriesRelational,
            rhs: Rhs::Form(closed_form_thm_i()),
            param: None,
            anchor: "Theorem (i)",
            series: Some(SeriesId::ThmI),
        },
        Identity {
            id: IdentityId::ThmII,
            description: "sum 4^k H_2k^2/(k^2 C(2k,k)) in closed form",
            lhs: Strategy::SeriesRelational,
            rhs: Rhs::Form(closed_form_thm_ii()),
            param: None,
            anchor: "Theorem (ii)",
            series: Some(SeriesId::ThmII),
        },
    ]
}

/// Looks up one entry.
pub fn catalog_entry(id: IdentityId) -> Identity {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .expect("all ids are in the catalog")
}

/// Verification outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NonConverged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NonConverged => "non-converged",
        }
    }
}

/// Structured record for one verified entry.
///
/// `digits_agreed` is recomputable from the serialized `abs_residual` and
/// `rhs_value` fields as floor(-log10(residual / max(1, |rhs|))), clamped
/// to target+guard digits (a zero residual reports the clamp).
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub method: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub abs_residual: String,
    pub digits_agreed: i64,
    pub work: u64,
    pub elapsed_seconds: f64,
    pub status: Status,
}
