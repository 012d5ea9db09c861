use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses an integer, a fraction `p/q` or a decimal (`-0.000005`, `.5`) into
/// an exact rational. Decimals are never routed through binary floats.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |message: &str| Error::Syntax { position: 0, message: alloc::format!("{message}: {s:?}") };
    if s.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(num / den);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("malformed number"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err("malformed number"));
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mantissa: BigInt = digits.parse().map_err(|_| err("malformed number"))?;
    let scale = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Bit size of a rational in lowest terms: `bitlen(|num|) + bitlen(den) - 1`,
/// so integers cost their bit length and zero costs nothing.
pub fn rational_size(r: &Rational) -> u64 {
    if r.is_zero() {
        return 0;
    }
    r.numer().abs().bits() + r.denom().bits() - 1
}
