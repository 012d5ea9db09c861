//! Rigorous enclosures of natural logarithms of positive integers and
//! rationals, by argument reduction to `(2/3, 4/3]` and the `atanh` series.

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Zero};

use super::interval::{ceil_shift, floor_shift};
use super::{DyadicInterval, Rational};

/// Enclosure `[s, s + e]·2^-prec` of `atanh(num/den)` for `0 <= num/den <= 1/3`.
///
/// Each truncated power carries less than `9/8` ulp of error, each truncated
/// quotient adds one more, and the tail after the first vanishing power is
/// below `81/64` ulp.
fn atanh_series(num: &BigUint, den: &BigUint, prec: u32) -> (BigUint, u64) {
    debug_assert!(BigUint::from(3u8) * num <= *den);
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (num << prec) / den;
    let mut sum = BigUint::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigUint::from(2 * k + 1);
        power = power * &num2 / &den2;
        k += 1;
    }
    (sum, 17 * k / 8 + 3)
}

/// `[lo, hi]` at scale `prec` enclosing `ln(m)`, with `hi - lo <= 3`.
fn ln_uint(m: &BigUint, prec: u32) -> (BigInt, BigInt) {
    assert!(!m.is_zero(), "ln of zero");
    if m.is_one() {
        return (BigInt::zero(), BigInt::zero());
    }
    let k = m.bits() - 1;
    // m / 2^e lands in (2/3, 4/3]
    let e = if BigUint::from(3u8) * m > (BigUint::one() << (k + 2)) { k + 1 } else { k };
    let pow = BigUint::one() << e;
    let (diff, negative) = if *m >= pow { (m - &pow, false) } else { (&pow - m, true) };
    let sum = m + &pow;

    let mut guard = 8 + 64 - (e + 1).leading_zeros() + 64 - u64::from(prec + 64).leading_zeros();
    loop {
        let p = prec + guard;
        let (s2, e2) = atanh_series(&BigUint::one(), &BigUint::from(3u8), p);
        let (sz, ez) = atanh_series(&diff, &sum, p);
        let e_big: BigInt = BigInt::from(e);
        let ln2_lo = BigInt::from(s2.clone()) * 2;
        let ln2_hi = (BigInt::from(s2) + BigInt::from(e2)) * 2;
        let at_lo: BigInt = BigInt::from(sz.clone()) * 2;
        let at_hi: BigInt = (BigInt::from(sz) + BigInt::from(ez)) * 2;
        let (at_lo, at_hi) = if negative { (-at_hi, -at_lo) } else { (at_lo, at_hi) };
        let lo = &e_big * ln2_lo + at_lo;
        let hi = &e_big * ln2_hi + at_hi;
        let lo = floor_shift(&lo, guard);
        let hi = ceil_shift(&hi, guard);
        if &hi - &lo <= BigInt::from(3u8) {
            return (lo, hi);
        }
        guard += 16;
    }
}

/// Enclosure of `ln(p)` for a positive rational `p`, of width at most
/// `6·2^-prec`.
pub fn ln_interval(p: &Rational, prec: u32) -> DyadicInterval {
    assert!(p.numer().sign() == BigSign::Plus, "ln of a non-positive rational");
    let num = p.numer().magnitude();
    let den = p.denom().magnitude();
    let (nl, nh) = ln_uint(num, prec);
    let (dl, dh) = ln_uint(den, prec);
    DyadicInterval::new(nl - dh, nh - dl, prec)
}
