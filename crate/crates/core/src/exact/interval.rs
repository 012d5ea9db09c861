use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, Sign};

/// Closed interval `[lo·2^-scale, hi·2^-scale]` with integer endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

impl DyadicInterval {
    pub fn new(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        DyadicInterval { lo, hi, scale }
    }

    /// The tightest interval at `scale` enclosing the rational `r`.
    pub fn enclosing(r: &Rational, scale: u32) -> Self {
        DyadicInterval { lo: floor_scaled(r, scale), hi: ceil_scaled(r, scale), scale }
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.lo.clone(), BigInt::one() << self.scale)
    }

    pub fn upper(&self) -> Rational {
        Rational::new(self.hi.clone(), BigInt::one() << self.scale)
    }

    /// True when `hi - lo <= 2^-bits`.
    pub fn width_within(&self, bits: u32) -> bool {
        let width = &self.hi - &self.lo;
        if self.scale >= bits {
            width <= (BigInt::one() << (self.scale - bits))
        } else {
            (width << (bits - self.scale)) <= BigInt::one()
        }
    }

    /// The sign of every point of the interval, if they all agree.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lower() <= *r && *r <= self.upper()
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &DyadicInterval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn lower_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.scale)
    }

    pub fn upper_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.scale)
    }

    pub fn midpoint_f64(&self) -> f64 {
        scaled_to_f64(&(&self.lo + &self.hi), self.scale + 1)
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lower_f64(), self.upper_f64())
    }
}

pub(crate) fn floor_scaled(r: &Rational, scale: u32) -> BigInt {
    (r.numer() << scale).div_floor(r.denom())
}

pub(crate) fn ceil_scaled(r: &Rational, scale: u32) -> BigInt {
    (r.numer() << scale).div_ceil(r.denom())
}

pub(crate) fn floor_shift(v: &BigInt, bits: u32) -> BigInt {
    v.div_floor(&(BigInt::one() << bits))
}

pub(crate) fn ceil_shift(v: &BigInt, bits: u32) -> BigInt {
    v.div_ceil(&(BigInt::one() << bits))
}

/// `m·2^-scale` rounded to a nearby double (not directed).
pub(crate) fn scaled_to_f64(m: &BigInt, scale: u32) -> f64 {
    let bits = m.bits();
    let drop = bits.saturating_sub(64);
    let mantissa = (m >> drop).to_f64().unwrap_or(f64::NAN);
    libm::ldexp(mantissa, drop as i32 - scale as i32)
}

/// `r` rounded to a nearby double (not directed).
pub(crate) fn rational_to_f64_nearest(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    // aim for ~64 significant bits in the quotient
    let shift = 64 - (num_bits - den_bits);
    let q = if shift >= 0 {
        (r.numer() << (shift as u64)) / r.denom()
    } else {
        r.numer() / (r.denom() << ((-shift) as u64))
    };
    let mantissa = scaled_to_f64(&q, 0);
    libm::ldexp(mantissa, -(shift as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosing_contains_value() {
        let r = Rational::new(1.into(), 3.into());
        let i = DyadicInterval::enclosing(&r, 20);
        assert!(i.contains_rational(&r));
        assert!(i.width_within(19));
        assert_eq!(i.sign(), Some(Sign::Positive));
    }

    #[test]
    fn exact_zero_interval() {
        let i = DyadicInterval::new(BigInt::zero(), BigInt::zero(), 10);
        assert_eq!(i.sign(), Some(Sign::Zero));
        assert!(i.width_within(1000));
    }

    #[test]
    fn float_conversion() {
        let r = Rational::new(7.into(), 8.into());
        assert_eq!(rational_to_f64_nearest(&r), 0.875);
        let big = BigInt::one() << 5000u32;
        assert_eq!(scaled_to_f64(&big, 5000), 1.0);
        assert_eq!(rational_to_f64_nearest(&Rational::new((-1).into(), 10.into())), -0.1);
    }
}
