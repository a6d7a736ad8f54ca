//! Complex arithmetic over [`BigReal`], principal branches throughout.

use alloc::string::String;

use super::real::BigReal;
use crate::error::{Error, Result};

/// A complex number whose parts share one working precision.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigReal) -> Self {
        let bits = re.precision_bits();
        BigComplex {
            re,
            im: BigReal::zero(bits),
        }
    }

    pub fn zero(bits: usize) -> Self {
        BigComplex::new(BigReal::zero(bits), BigReal::zero(bits))
    }

    pub fn precision_bits(&self) -> usize {
        self.re.precision_bits().max(self.im.precision_bits())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BigComplex::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BigComplex::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        BigComplex::new(re, im)
    }

    pub fn mul_real(&self, s: &BigReal) -> Self {
        BigComplex::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let d = rhs.norm_sq();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&d);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&d);
        Ok(BigComplex::new(re, im))
    }

    pub fn neg(&self) -> Self {
        BigComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn norm_sq(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sq().sqrt().expect("norm_sq is non-negative")
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigComplex::new(
            BigReal::one(self.precision_bits()),
            BigReal::zero(self.precision_bits()),
        );
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Principal argument in (-π, π]; zero is rejected.
    pub fn arg(&self, pi: &BigReal) -> Result<BigReal> {
        if self.is_zero() {
            return Err(Error::Domain {
                func: "arg",
                message: String::from("argument of zero is undefined"),
            });
        }
        if self.re.is_positive() {
            return Ok(self.im.div(&self.re).atan());
        }
        if self.re.is_zero() {
            let half_pi = pi.scale2(-1);
            return Ok(if self.im.is_positive() {
                half_pi
            } else {
                half_pi.neg()
            });
        }
        // re < 0: shift atan into the correct half-plane; the ray arg = π
        // (negative real axis, im = 0) belongs to the +π side.
        let base = self.im.div(&self.re).atan();
        if self.im.is_negative() {
            Ok(base.sub(pi))
        } else {
            Ok(base.add(pi))
        }
    }

    /// Principal natural logarithm: `ln|z| + i·arg(z)`.
    pub fn ln(&self, pi: &BigReal) -> Result<Self> {
        let re = self.norm_sq().ln()?.scale2(-1);
        let im = self.arg(pi)?;
        Ok(BigComplex::new(re, im))
    }

    /// Principal arctangent via `-(i/2)·ln((1+iz)/(1-iz))`; valid away from
    /// the branch cuts running along the imaginary axis beyond ±i.
    pub fn atan(&self, pi: &BigReal) -> Result<Self> {
        let bits = self.precision_bits();
        let one = BigComplex::new(BigReal::one(bits), BigReal::zero(bits));
        // i*z = (-im, re)
        let iz = BigComplex::new(self.im.neg(), self.re.clone());
        let ratio = one.add(&iz).div(&one.sub(&iz))?;
        let l = ratio.ln(pi)?;
        // -(i/2) * l = (im/2, -re/2)
        Ok(BigComplex::new(l.im.scale2(-1), l.re.scale2(-1).neg()))
    }
}

impl core::fmt::Display for BigComplex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}
