//! High-precision verification engine for a catalog of central-binomial
//! series and logarithmic-integral identities.
//!
//! The catalog centers on two weight-4 series over the central binomial
//! coefficient,
//!
//! ```text
//!   Σ 4^k · H_{2k}^(2) / (k² C(2k,k))   and   Σ 4^k · H_{2k}² / (k² C(2k,k)),
//! ```
//!
//! together with every supporting identity used to evaluate them in closed
//! form over the constant basis {ζ(2), ζ(4), G, G², Li₄(1/2), ln 2 powers,
//! π³}. The crate provides:
//!
//! * [`numerics`] — arbitrary-precision real/complex arithmetic, exact
//!   rationals, and precision contexts with a uniform error contract;
//! * [`special`] — exact harmonic numbers, ζ, polylogarithms, inverse
//!   tangent integrals, Catalan's constant, and closed-form evaluation;
//! * [`quad`] — tanh-sinh (double-exponential) quadrature certified to
//!   tolerance, for real and complex integrands with endpoint
//!   singularities;
//! * [`series`] — exact term generation, direct summation with certified
//!   tail bounds, and sequence extrapolation for the k^(-3/2) decay class;
//! * [`ledger`] — the machine-readable identity catalog and the
//!   verification engine producing structured reports;
//! * [`relation`] — PSLQ integer-relation detection for rediscovering
//!   closed-form coefficients from high-precision values.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature adds wall-clock timing in reports and parallel verification.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod ledger;
pub mod numerics;
pub mod quad;
pub mod relation;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use numerics::{make_context, BigComplex, BigRational, BigReal, PrecisionContext};
