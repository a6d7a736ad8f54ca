//! Special functions and the closed-form constant basis.
//!
//! Exact harmonic numbers, ζ at integer argument (Euler–Maclaurin with
//! exact Bernoulli numbers), polylogarithms on the closed unit disc plus a
//! quadrature-backed Li₄ off the cut, inverse tangent integrals, Catalan's
//! constant, and formal rational combinations over the constant basis.

mod alternating;
mod constants;
mod harmonic;
mod logratio;
mod polylog;
mod zeta;

pub use alternating::{sum_alternating, terms_for_digits};
pub use constants::{
    basis_value, closed_form_value, constants_with_integrator, ClosedForm, ConstantSymbol,
    Constants,
};
pub use harmonic::{harmonic, HarmonicAcc};
pub use logratio::log_ratio_check;
pub use polylog::{catalan, eta_int, li4_offcut, li4_offcut_with_work, polylog_int, ti_n};
pub use zeta::{bernoulli, zeta_int};
