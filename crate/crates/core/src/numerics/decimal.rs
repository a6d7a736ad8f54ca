//! Exact conversion between [`BigReal`] and decimal scientific notation.
//!
//! Report fields are decimal strings; producing them through big-integer
//! arithmetic keeps the output bit-reproducible across platforms, and the
//! digit-agreement computation below works on the *serialized* strings so
//! that a reader of a report can recompute it exactly.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::real::BigReal;

/// A non-zero decimal `±D · 10^(exp10 - len(D) + 1)` where `D` has no
/// leading zero; i.e. `exp10` is the exponent of the leading digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub negative: bool,
    pub digits: BigUint,
    pub exp10: i64,
}

fn pow10(k: u64) -> BigUint {
    BigUint::from(10u32).pow(k as u32)
}

fn digit_len(d: &BigUint) -> u64 {
    // number of decimal digits of a positive integer
    d.to_str_radix(10).len() as u64
}

/// Decomposes a finite non-zero value into `sig` significant decimal digits
/// (round half away from zero). Returns `None` for zero.
pub fn decompose(x: &BigReal, sig: usize) -> Option<Decimal> {
    if x.is_zero() || !x.is_finite() {
        return None;
    }
    let (words, n, _sign, e, _) = x.raw().as_raw_parts()?;
    let mut bytes = Vec::with_capacity(words.len() * 8);
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    let mantissa = BigUint::from_bytes_le(&bytes);
    let t = e as i64 - n as i64; // |x| = mantissa * 2^t

    // estimate floor(log10 |x|); |x| in [2^(e-1), 2^e)
    let mut exp10 = ((e as i128 - 1) * 30103).div_euclid(100000) as i64;
    for _ in 0..4 {
        // D = round(|x| * 10^(sig-1-exp10))
        let j = sig as i64 - 1 - exp10;
        let mut num = mantissa.clone();
        if j >= 0 {
            num *= pow10(j as u64);
        }
        if t >= 0 {
            num <<= t as usize;
        }
        let mut den = BigUint::from(1u32);
        if j < 0 {
            den *= pow10((-j) as u64);
        }
        if t < 0 {
            den <<= (-t) as usize;
        }
        let d = (num + (&den >> 1)) / den;
        let len = digit_len(&d);
        if len == sig as u64 {
            return Some(Decimal {
                negative: x.is_negative(),
                digits: d,
                exp10,
            });
        }
        // rounding landed outside [10^(sig-1), 10^sig); adjust the estimate
        exp10 += len as i64 - sig as i64;
    }
    unreachable!("decimal exponent estimate failed to settle");
}

/// Scientific-notation string with `sig` significant digits, e.g.
/// `-3.14159e+0`. Zero prints as `0`.
pub fn to_sci_string(x: &BigReal, sig: usize) -> String {
    let sig = sig.max(1);
    let Some(d) = decompose(x, sig) else {
        if !x.is_finite() {
            return String::from("non-finite");
        }
        return String::from("0");
    };
    let digits = d.digits.to_str_radix(10);
    let mut out = String::with_capacity(digits.len() + 8);
    if d.negative {
        out.push('-');
    }
    out.push_str(&digits[..1]);
    if digits.len() > 1 {
        out.push('.');
        out.push_str(&digits[1..]);
    }
    if d.exp10 >= 0 {
        out.push_str("e+");
    } else {
        out.push_str("e-");
    }
    let mut ebuf = String::new();
    core::fmt::write(&mut ebuf, format_args!("{}", d.exp10.unsigned_abs())).unwrap();
    out.push_str(&ebuf);
    out
}

/// Malformed decimal input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecimalParseError;

/// Parses decimal notation (with or without an exponent part) back into a
/// [`Decimal`]. `Ok(None)` means the value is zero.
pub fn parse_sci(s: &str) -> Result<Option<Decimal>, DecimalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(DecimalParseError);
    }
    let (negative, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (mant, exp_part) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| DecimalParseError)?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(DecimalParseError);
    }
    let mut all: String = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    if !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DecimalParseError);
    }
    let stripped = all.trim_start_matches('0');
    if stripped.is_empty() {
        return Ok(None); // zero
    }
    let leading_zeros = (all.len() - stripped.len()) as i64;
    let stripped = stripped.trim_end_matches('0');
    let stripped = if stripped.is_empty() { "0" } else { stripped };
    let digits = BigUint::parse_bytes(stripped.as_bytes(), 10).ok_or(DecimalParseError)?;
    // exponent of the leading digit
    let exp10 = exp_part + int_part.len() as i64 - 1 - leading_zeros;
    Ok(Some(Decimal {
        negative,
        digits,
        exp10,
    }))
}

/// `floor(-log10(residual / max(1, |rhs|)))` computed exactly from the two
/// decimal strings of a report; `None` when the residual string is zero
/// (meaning "agrees to every printed digit").
pub fn digits_agreed_from_strings(residual: &str, rhs: &str) -> Option<i64> {
    let r = parse_sci(residual).ok()??;
    let h = parse_sci(rhs).ok()?;
    // denominator: max(1, |rhs|)
    let (hd, he) = match h {
        Some(h) if h.exp10 >= 0 => (h.digits, h.exp10),
        _ => (BigUint::from(1u32), 0),
    };
    // want the largest d with  r * 10^d <= h
    // r = R * 10^(r.exp10 - Lr + 1), h = H * 10^(he - Lh + 1)
    let lr = digit_len(&r.digits) as i64;
    let lh = digit_len(&hd) as i64;
    let pa = r.exp10 - lr + 1;
    let pb = he - lh + 1;
    let mut d = he - r.exp10 + 1;
    loop {
        // check R * 10^(pa + d) <= H * 10^pb
        let delta = pa + d - pb;
        let ok = if delta >= 0 {
            &r.digits * pow10(delta as u64) <= hd
        } else {
            r.digits <= &hd * pow10((-delta) as u64)
        };
        if ok {
            return Some(d);
        }
        d -= 1;
    }
}
