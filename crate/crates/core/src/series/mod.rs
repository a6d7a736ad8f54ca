//! The central-binomial series family: exact terms, direct summation with
//! certified tail bounds, and sequence extrapolation.
//!
//! All four catalog series have the shape `Σ 4^k·w_k/(k²·C(2k,k))` with a
//! harmonic-number weight `w_k`; since `4^k/C(2k,k) ~ √(πk)`, the terms
//! decay like `k^(-3/2)` (times log factors when `w_k` involves `H_{2k}`),
//! which makes direct summation useless beyond a few digits and is why the
//! extrapolation in [`accel`] exists.

pub mod accel;
pub mod lemmas;

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numerics::{BigRational, BigReal, PrecisionContext};
use crate::special::HarmonicAcc;

pub use accel::{accelerate, AccelMethod, AcceleratedValue};
pub use lemmas::{
    fourier_coeff, gf_cut_for_tolerance, gf_defect, gf_tail_bound, lemma2_ik, lemma4_rhs, wallis_exact,
    FourierCoeffStream,
};

/// Catalog identifiers for the four series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesId {
    /// Σ 4^k/(k² C(2k,k)) = 3ζ(2)
    L1III,
    /// Σ 4^k·H_k^(2)/(k² C(2k,k))
    L1IV,
    /// Σ 4^k·H_{2k}^(2)/(k² C(2k,k))
    ThmI,
    /// Σ 4^k·H_{2k}²/(k² C(2k,k))
    ThmII,
}

/// Tail asymptotics: terms decay like `k^(-3/2)·ln^log_power(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailFamily {
    pub log_power: u8,
}

#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub id: SeriesId,
    pub description: &'static str,
    /// Sum of harmonic orders plus the power of k: metadata only.
    pub weight: u32,
    pub tail: TailFamily,
}

impl SeriesId {
    pub const ALL: [SeriesId; 4] = [SeriesId::L1III, SeriesId::L1IV, SeriesId::ThmI, SeriesId::ThmII];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::L1III => "L1_III",
            SeriesId::L1IV => "L1_IV",
            SeriesId::ThmI => "THM_I",
            SeriesId::ThmII => "THM_II",
        }
    }

    pub fn parse(s: &str) -> Option<SeriesId> {
        Self::ALL.iter().copied().find(|id| id.name() == s)
    }

    pub fn spec(self) -> SeriesSpec {
        match self {
            SeriesId::L1III => SeriesSpec {
                id: self,
                description: "sum of 4^k/(k^2 C(2k,k))",
                weight: 2,
                tail: TailFamily { log_power: 0 },
            },
            SeriesId::L1IV => SeriesSpec {
                id: self,
                description: "sum of 4^k H_k^(2)/(k^2 C(2k,k))",
                weight: 4,
                tail: TailFamily { log_power: 0 },
            },
            SeriesId::ThmI => SeriesSpec {
                id: self,
                description: "sum of 4^k H_{2k}^(2)/(k^2 C(2k,k))",
                weight: 4,
                tail: TailFamily { log_power: 0 },
            },
            SeriesId::ThmII => SeriesSpec {
                id: self,
                description: "sum of 4^k H_{2k}^2/(k^2 C(2k,k))",
                weight: 4,
                tail: TailFamily { log_power: 2 },
            },
        }
    }
}

/// Exact reduced `b_k = 4^k/C(2k,k)`, advanced by
/// `b_{k+1} = b_k·(2k+2)/(2k+1)` — never through factorials.
#[derive(Clone, Debug)]
pub struct CentralBinomialAcc {
    num: BigUint,
    den: BigUint,
    k: u64,
}

impl Default for CentralBinomialAcc {
    fn default() -> Self {
        Self::new()
    }
}

impl CentralBinomialAcc {
    /// Starts at k = 1 with b_1 = 2.
    pub fn new() -> Self {
        CentralBinomialAcc {
            num: BigUint::from(2u32),
            den: BigUint::one(),
            k: 1,
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn step(&mut self) {
        let u = BigUint::from(2 * self.k + 2);
        let v = BigUint::from(2 * self.k + 1);
        // (num/den)·(u/v), reduced via the only possible small gcds
        let g1 = (&self.num % &v).gcd(&v);
        let g2 = (&self.den % &u).gcd(&u);
        self.num = &self.num / &g1 * (&u / &g2);
        self.den = &self.den / &g2 * (&v / &g1);
        self.k += 1;
    }

    pub fn value(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn to_real(&self, bits: usize) -> BigReal {
        BigReal::from_biguint(&self.num, bits).div(&BigReal::from_biguint(&self.den, bits))
    }
}

/// Streaming exact-term generator for one series. The harmonic and
/// central-binomial states advance incrementally, so producing N terms
/// costs O(N) big-integer passes rather than O(N²).
pub struct TermStream {
    id: SeriesId,
    k: u64,
    binom: CentralBinomialAcc,
    harmonic: Option<HarmonicAcc>,
}

impl TermStream {
    pub fn new(id: SeriesId) -> Self {
        let harmonic = match id {
            SeriesId::L1III => None,
            SeriesId::L1IV => Some(HarmonicAcc::new(2)),
            SeriesId::ThmI => Some(HarmonicAcc::new(2)),
            SeriesId::ThmII => Some(HarmonicAcc::new(1)),
        };
        TermStream {
            id,
            k: 0,
            binom: CentralBinomialAcc::new(),
            harmonic,
        }
    }

    fn advance(&mut self) {
        self.k += 1;
        if self.k > 1 {
            self.binom.step();
        }
        match self.id {
            SeriesId::L1III => {}
            SeriesId::L1IV => {
                let h = self.harmonic.as_mut().unwrap();
                h.step(); // H_k
            }
            SeriesId::ThmI | SeriesId::ThmII => {
                let h = self.harmonic.as_mut().unwrap();
                h.step();
                h.step(); // H_{2k}
            }
        }
    }

    /// Exact k-th term (k advances by one per call).
    pub fn next_exact(&mut self) -> BigRational {
        self.advance();
        let k2 = BigRational::from_integer(BigInt::from(self.k * self.k));
        let b = self.binom.value() / k2;
        match self.id {
            SeriesId::L1III => b,
            SeriesId::L1IV | SeriesId::ThmI => b * self.harmonic.as_ref().unwrap().value(),
            SeriesId::ThmII => {
                let h = self.harmonic.as_ref().unwrap().value();
                b * (&h * &h)
            }
        }
    }

    /// k-th term rounded once to `bits` (the exact states still advance
    /// exactly; only the returned value is floating-point).
    pub fn next_real(&mut self, bits: usize) -> BigReal {
        self.advance();
        let b = self.binom.to_real(bits);
        let k2 = BigReal::from_u64(self.k, bits).powi(2);
        let base = b.div(&k2);
        match self.id {
            SeriesId::L1III => base,
            SeriesId::L1IV | SeriesId::ThmI => {
                base.mul(&self.harmonic.as_ref().unwrap().to_real(bits))
            }
            SeriesId::ThmII => {
                let h = self.harmonic.as_ref().unwrap().to_real(bits);
                base.mul(&h).mul(&h)
            }
        }
    }
}

/// Exact k-th summand; builds the stream from scratch, so it is meant for
/// moderate k (tests use k ≤ 200). Use [`TermStream`] for bulk work.
pub fn term(id: SeriesId, k: u64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("series terms start at k = 1"),
        });
    }
    let mut s = TermStream::new(id);
    let mut t = s.next_exact();
    for _ in 1..k {
        t = s.next_exact();
    }
    Ok(t)
}

/// Exact term ratio t_{k+1}/t_k where it is a closed rational function of
/// k; only the weightless series has one.
pub fn ratio(id: SeriesId, k: u64) -> Option<BigRational> {
    match id {
        SeriesId::L1III => {
            // 2k² / ((2k+1)(k+1))
            let kk = BigInt::from(k);
            let num = BigInt::from(2) * &kk * &kk;
            let den = BigInt::from(2 * k + 1) * BigInt::from(k + 1);
            Some(BigRational::new(num, den))
        }
        _ => None,
    }
}

/// Prefix sums S_1..S_N of a series at working precision.
#[derive(Clone, Debug)]
pub struct PartialSums {
    pub id: SeriesId,
    pub values: Vec<BigReal>,
}

impl PartialSums {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn last(&self) -> &BigReal {
        self.values.last().expect("n >= 1")
    }
}

/// Sums the first N exact terms, rounding each once at accumulation.
pub fn sum_direct(id: SeriesId, n: u64, ctx: &PrecisionContext) -> Result<PartialSums> {
    if n == 0 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("need at least one term"),
        });
    }
    let bits = ctx.working_bits();
    let mut stream = TermStream::new(id);
    let mut values = Vec::with_capacity(n as usize);
    let mut acc = BigReal::zero(bits);
    for _ in 0..n {
        acc = acc.add(&stream.next_real(bits));
        values.push(acc.clone());
    }
    Ok(PartialSums { id, values })
}

/// Certified upper bound on the tail Σ_{k>N} t_k.
///
/// Uses `4^k/C(2k,k) ≤ 2√k` (equivalent to the documented
/// `≤ √(π(k+1/2))` bound, which holds for all k ≥ 1 and is checked
/// numerically in the tests up to 10^6), `H^(2) < ζ(2) < 33/20`, and
/// `H_{2k} ≤ 1 + ln 2k`, then compares with the exact integral
/// `∫_N^∞ x^(-3/2)·ln^r(2x) dx`. The small multiplicative pad covers the
/// floating-point evaluation of the bound itself.
pub fn tail_bound(id: SeriesId, n: u64, bits: usize) -> Result<BigReal> {
    if n < 10 {
        return Err(Error::InvalidInput {
            message: alloc::string::String::from("tail bound requires N >= 10"),
        });
    }
    let nf = BigReal::from_u64(n, bits);
    let inv_sqrt = nf.sqrt()?.recip();
    let base = match id {
        // t_k ≤ 2·k^(-3/2), tail ≤ 4/√N
        SeriesId::L1III => inv_sqrt.mul_u64(4),
        // extra harmonic factor < 33/20: tail ≤ (33/5)/√N
        SeriesId::L1IV | SeriesId::ThmI => inv_sqrt.mul_u64(33).div_u64(5),
        // t_k ≤ 2(1+ln 2k)²·k^(-3/2);
        // ∫ x^(-3/2)(1+ln 2x)² dx = 2N^(-1/2)·((1+L)² + 4(1+L) + 8), L = ln 2N
        SeriesId::ThmII => {
            let l1 = nf.mul_u64(2).ln()?.add(&BigReal::one(bits));
            let poly = l1.mul(&l1).add(&l1.mul_u64(4)).add(&BigReal::from_u64(8, bits));
            inv_sqrt.mul(&poly).mul_u64(4)
        }
    };
    // pad for the ~10 roundings above
    Ok(base.mul(&BigReal::one(bits).add(&BigReal::one(bits).scale2(-30))))
}
