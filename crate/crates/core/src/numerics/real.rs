//! Arbitrary-precision real numbers.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use astro_float::{BigFloat, Exponent, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};

use super::{decimal, with_cc, BigRational, RM};
use crate::error::{Error, Result};

/// An arbitrary-precision floating-point number tagged with the binary
/// working precision that produced it.
///
/// Binary arithmetic between two values runs at the larger of the two
/// precisions; in practice every value inside one computation carries the
/// `working_bits` of its context.
#[derive(Clone, Debug)]
pub struct BigReal {
    value: BigFloat,
    bits: usize,
}

impl BigReal {
    pub(crate) fn from_raw(value: BigFloat, bits: usize) -> Self {
        BigReal { value, bits }
    }

    pub(crate) fn raw(&self) -> &BigFloat {
        &self.value
    }

    pub fn precision_bits(&self) -> usize {
        self.bits
    }

    pub fn zero(bits: usize) -> Self {
        BigReal::from_raw(BigFloat::new(bits), bits)
    }

    pub fn one(bits: usize) -> Self {
        BigReal::from_u64(1, bits)
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        BigReal::from_raw(BigFloat::from_u64(v, bits), bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        BigReal::from_raw(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        BigReal::from_raw(BigFloat::from_f64(v, bits), bits)
    }

    /// Exact ratio of two machine integers, rounded once at `bits`.
    pub fn from_u64_ratio(num: u64, den: u64, bits: usize) -> Self {
        let n = BigFloat::from_u64(num, bits);
        let d = BigFloat::from_u64(den, bits);
        BigReal::from_raw(n.div(&d, bits, RM), bits)
    }

    /// Converts a big integer, keeping `bits + 128` leading bits (relative
    /// error below `2^-(bits+64)`, i.e. far below one ulp at `bits`).
    pub fn from_bigint(i: &BigInt, bits: usize) -> Self {
        let mag = i.magnitude();
        let digits: Vec<u64> = mag.to_u64_digits();
        if digits.is_empty() {
            return Self::zero(bits);
        }
        let keep = (bits + 128) / 64 + 1;
        let (slice, dropped) = if digits.len() > keep {
            (&digits[digits.len() - keep..], digits.len() - keep)
        } else {
            (&digits[..], 0)
        };
        let sign = if i.sign() == IntSign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        // from_words(m, s, e) represents int(m) * 2^(e - 64*len(m)).
        let e = (slice.len() * 64 + dropped * 64) as Exponent;
        let value = BigFloat::from_words(slice, sign, e);
        BigReal::from_raw(value, bits)
    }

    pub fn from_biguint(i: &BigUint, bits: usize) -> Self {
        Self::from_bigint(&BigInt::from(i.clone()), bits)
    }

    /// Rounds an exact rational once into `bits` of precision.
    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        let n = Self::from_bigint(q.numer(), bits);
        let d = Self::from_bigint(q.denom(), bits);
        n.div(&d)
    }

    fn p2(&self, rhs: &Self) -> usize {
        self.bits.max(rhs.bits)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p2(rhs);
        BigReal::from_raw(self.value.add(&rhs.value, p, RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.p2(rhs);
        BigReal::from_raw(self.value.sub(&rhs.value, p, RM), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.p2(rhs);
        BigReal::from_raw(self.value.mul(&rhs.value, p, RM), p)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.p2(rhs);
        BigReal::from_raw(self.value.div(&rhs.value, p, RM), p)
    }

    pub fn mul_u64(&self, v: u64) -> Self {
        self.mul(&Self::from_u64(v, self.bits))
    }

    pub fn div_u64(&self, v: u64) -> Self {
        self.div(&Self::from_u64(v, self.bits))
    }

    pub fn mul_i64(&self, v: i64) -> Self {
        self.mul(&Self::from_i64(v, self.bits))
    }

    pub fn recip(&self) -> Self {
        BigReal::from_raw(self.value.reciprocal(self.bits, RM), self.bits)
    }

    /// Multiplies by `2^k` exactly.
    pub fn scale2(&self, k: i64) -> Self {
        if self.value.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.value.clone();
        let e = v.exponent().expect("finite value has an exponent") as i64 + k;
        v.set_exponent(e as Exponent);
        BigReal::from_raw(v, self.bits)
    }

    pub fn abs(&self) -> Self {
        BigReal::from_raw(self.value.abs(), self.bits)
    }

    pub fn neg(&self) -> Self {
        BigReal::from_raw(self.value.neg(), self.bits)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive() && !self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.value.is_nan() && !self.value.is_inf()
    }

    #[allow(clippy::should_implement_trait)] // mirrors partial_cmp; keeps call sites explicit about incomparability
    pub fn cmp(&self, rhs: &Self) -> Option<Ordering> {
        self.value.cmp(&rhs.value).map(|s| s.cmp(&0))
    }

    pub fn max(&self, rhs: &Self) -> Self {
        BigReal::from_raw(self.value.max(&rhs.value), self.p2(rhs))
    }

    pub fn min(&self, rhs: &Self) -> Self {
        BigReal::from_raw(self.value.min(&rhs.value), self.p2(rhs))
    }

    /// Binary exponent `e` with `|x| ∈ [2^(e-1), 2^e)`; `None` for zero or
    /// non-finite values. Used for order-of-magnitude decisions.
    pub fn ilog2_approx(&self) -> Option<i64> {
        if self.value.is_zero() || !self.is_finite() {
            return None;
        }
        self.value.exponent().map(|e| e as i64)
    }

    pub fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            BigReal::from_raw(self.value.powi(n as usize, self.bits, RM), self.bits)
        } else {
            let p = self.value.powi((-n) as usize, self.bits, RM);
            BigReal::from_raw(p.reciprocal(self.bits, RM), self.bits)
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain {
                func: "sqrt",
                message: alloc::format!("negative argument {}", self),
            });
        }
        Ok(BigReal::from_raw(self.value.sqrt(self.bits, RM), self.bits))
    }

    pub fn exp(&self) -> Self {
        BigReal::from_raw(with_cc(|cc| self.value.exp(self.bits, RM, cc)), self.bits)
    }

    pub fn ln(&self) -> Result<Self> {
        if self.is_negative() || self.is_zero() {
            return Err(Error::Domain {
                func: "ln",
                message: alloc::format!("non-positive argument {}", self),
            });
        }
        Ok(BigReal::from_raw(
            with_cc(|cc| self.value.ln(self.bits, RM, cc)),
            self.bits,
        ))
    }

    /// `ln(1 + y)` without cancellation for small `y`.
    ///
    /// For `|y| < 2^-8` the Maclaurin series is summed directly (the tail is
    /// geometric); otherwise `ln` of the rounded `1 + y` is already accurate.
    pub fn ln_1p(&self) -> Result<Self> {
        let bits = self.bits;
        let one = BigReal::one(bits);
        let small = match self.ilog2_approx() {
            None => {
                if self.is_zero() {
                    return Ok(BigReal::zero(bits));
                }
                return Err(Error::Domain {
                    func: "ln_1p",
                    message: String::from("non-finite argument"),
                });
            }
            Some(e) => e <= -8,
        };
        if !small {
            return one.add(self).ln();
        }
        let e = self.ilog2_approx().unwrap(); // e <= -8
        let terms = (bits as i64 + 16) / (-e) + 2;
        // ln(1+y) = y - y^2/2 + y^3/3 - ...
        let mut sum = BigReal::zero(bits);
        let mut pow = self.clone();
        for j in 1..=terms {
            let term = pow.div_u64(j as u64);
            sum = if j % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
            pow = pow.mul(self);
        }
        Ok(sum)
    }

    pub fn sin(&self) -> Self {
        BigReal::from_raw(with_cc(|cc| self.value.sin(self.bits, RM, cc)), self.bits)
    }

    pub fn cos(&self) -> Self {
        BigReal::from_raw(with_cc(|cc| self.value.cos(self.bits, RM, cc)), self.bits)
    }

    pub fn tan(&self) -> Self {
        BigReal::from_raw(with_cc(|cc| self.value.tan(self.bits, RM, cc)), self.bits)
    }

    pub fn asin(&self) -> Result<Self> {
        if self.abs().cmp(&BigReal::one(self.bits)) == Some(Ordering::Greater) {
            return Err(Error::Domain {
                func: "asin",
                message: alloc::format!("|x| > 1 for x = {}", self),
            });
        }
        Ok(BigReal::from_raw(
            with_cc(|cc| self.value.asin(self.bits, RM, cc)),
            self.bits,
        ))
    }

    pub fn atan(&self) -> Self {
        BigReal::from_raw(with_cc(|cc| self.value.atan(self.bits, RM, cc)), self.bits)
    }

    /// `self^e` for real exponents; negative base is rejected (use `powi`).
    pub fn pow(&self, e: &Self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain {
                func: "pow",
                message: alloc::format!("negative base {}", self),
            });
        }
        let p = self.p2(e);
        Ok(BigReal::from_raw(
            with_cc(|cc| self.value.pow(&e.value, p, RM, cc)),
            p,
        ))
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_bigint(&self) -> BigInt {
        let Some((words, n, sign, e, _)) = self.value.as_raw_parts() else {
            return BigInt::from(0);
        };
        if self.value.is_zero() {
            return BigInt::from(0);
        }
        let mut bytes = Vec::with_capacity(words.len() * 8);
        for w in words {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let mag = BigUint::from_bytes_le(&bytes);
        let k = n as i64 - e as i64; // value = mag * 2^-k
        let rounded = if k <= 0 {
            mag << ((-k) as usize)
        } else if (k as u64) > n as u64 + 1 {
            BigUint::from(0u32) // |value| < 1/2
        } else {
            (mag + (BigUint::from(1u32) << ((k - 1) as usize))) >> (k as usize)
        };
        let big = BigInt::from(rounded);
        if sign == Sign::Neg {
            -big
        } else {
            big
        }
    }

    /// Decimal scientific representation with `sig` significant digits.
    pub fn to_sci_string(&self, sig: usize) -> String {
        decimal::to_sci_string(self, sig)
    }
}

impl core::fmt::Display for BigReal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if !self.is_finite() {
            return write!(f, "{}", if self.value.is_nan() { "nan" } else { "inf" });
        }
        write!(f, "{}", decimal::to_sci_string(self, 20))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp(other)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                BigReal::$method(self, rhs)
            }
        }
        impl core::ops::$trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal::$method(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl core::ops::Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::neg(self)
    }
}
