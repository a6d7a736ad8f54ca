//! Exact generalized harmonic numbers H_k^(m) = Σ_{n=1..k} 1/n^m.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numerics::{BigRational, BigReal};

/// Exact harmonic number; `k = 0` is the empty sum.
pub fn harmonic(k: u64, m: u32) -> BigRational {
    let mut acc = HarmonicAcc::new(m);
    while acc.k() < k {
        acc.step();
    }
    acc.value()
}

/// Incremental exact accumulator for H_k^(m).
///
/// The running value is kept reduced, but each step reduces with gcds
/// against the *small* new denominator k^m only (the only factors that can
/// appear), so a step costs O(limbs) instead of a full big-gcd. This is
/// what makes exact 10^4-term series streaming affordable.
#[derive(Clone, Debug)]
pub struct HarmonicAcc {
    num: BigUint,
    den: BigUint,
    m: u32,
    k: u64,
}

impl HarmonicAcc {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "harmonic order must be positive");
        HarmonicAcc {
            num: BigUint::zero(),
            den: BigUint::one(),
            m,
            k: 0,
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Advances to H_{k+1}^(m): adds 1/(k+1)^m.
    pub fn step(&mut self) {
        self.k += 1;
        let d = BigUint::from(self.k).pow(self.m);
        // p/q + 1/d with gcd(p, q) = 1:
        //   g0 = gcd(q, d); N = p·(d/g0) + q/g0; D = q·(d/g0)
        // any remaining common factor of N and D divides g0.
        let g0 = (&self.den % &d).gcd(&d);
        let l = &d / &g0;
        let n = &self.num * &l + &self.den / &g0;
        let den = &self.den * &l;
        let g1 = (&n % &g0).gcd(&g0);
        if g1.is_one() {
            self.num = n;
            self.den = den;
        } else {
            self.num = n / &g1;
            self.den = den / g1;
        }
    }

    pub fn value(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    /// Current value rounded once into `bits`.
    pub fn to_real(&self, bits: usize) -> BigReal {
        let n = BigReal::from_biguint(&self.num, bits);
        let d = BigReal::from_biguint(&self.den, bits);
        n.div(&d)
    }
}
