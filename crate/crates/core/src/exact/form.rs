use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{ceil_scaled, floor_scaled, rational_to_f64_nearest};
use super::{ln_interval, parse_rational, DyadicInterval, GaussianRational, Rational, Sign};
use crate::{Error, Result};

/// The exact real number `r + Σ q_j·ln(p_j)` with rational `r`, `q_j` and
/// positive rational `p_j`.
///
/// The map is canonical in its keys (no key equals 1, no coefficient is 0),
/// so derived equality is structural. Two structurally different forms can
/// still denote the same number (`ln 4` and `2·ln 2`); use [`sign`],
/// [`is_zero`] or [`cmp_value`] for value comparisons.
///
/// [`sign`]: LogLinearForm::sign
/// [`is_zero`]: LogLinearForm::is_zero
/// [`cmp_value`]: LogLinearForm::cmp_value
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogLinearForm {
    constant: Rational,
    terms: BTreeMap<Rational, Rational>,
}

impl LogLinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        LogLinearForm { constant: r, terms: BTreeMap::new() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `ln(p)` for a positive rational `p`.
    pub fn ln(p: &Rational) -> Result<Self> {
        Self::scaled_ln(&Rational::one(), p)
    }

    /// `q·ln(p)` for a positive rational `p`.
    pub fn scaled_ln(q: &Rational, p: &Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::LogOfZero);
        }
        if p.is_negative() {
            return Err(Error::LogOfNonPositive);
        }
        let mut form = Self::zero();
        form.push_term(p.clone(), q.clone());
        Ok(form)
    }

    /// `ln|c|`, stored as `½·ln(re² + im²)`.
    pub fn log_abs(c: &GaussianRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::LogOfZero);
        }
        Self::scaled_ln(&Rational::new(1.into(), 2.into()), &c.norm_sqr())
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// `(p_j, q_j)` pairs in increasing order of `p_j`.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    /// True when the form has no logarithmic part.
    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.constant)
    }

    fn push_term(&mut self, p: Rational, q: Rational) {
        if q.is_zero() || p.is_one() {
            return;
        }
        match self.terms.entry(p) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, k: &Rational, other: &LogLinearForm) {
        if k.is_zero() {
            return;
        }
        self.constant += k * &other.constant;
        for (p, q) in &other.terms {
            self.push_term(p.clone(), k * q);
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(k, self);
        out
    }

    /// `Σ coeffs[i]·forms[i]`.
    pub fn dot(coeffs: &[Rational], forms: &[LogLinearForm]) -> Self {
        let mut out = Self::zero();
        for (k, f) in coeffs.iter().zip(forms) {
            out.add_scaled(k, f);
        }
        out
    }

    /// Exact zero test.
    ///
    /// A nonzero rational constant makes the form nonzero, since `e^r` is
    /// transcendental for rational `r ≠ 0`. Otherwise the logarithmic part
    /// vanishes iff `Π p_j^{q_j} = 1`; that is decided by factoring every
    /// numerator and denominator over a pairwise coprime basis and checking
    /// that each basis element ends up with total exponent zero.
    pub fn is_zero(&self) -> bool {
        if !self.constant.is_zero() {
            return false;
        }
        if self.terms.is_empty() {
            return true;
        }
        let mut parts: Vec<BigUint> = Vec::with_capacity(2 * self.terms.len());
        for p in self.terms.keys() {
            parts.push(p.numer().magnitude().clone());
            parts.push(p.denom().magnitude().clone());
        }
        let basis = coprime_basis(parts);
        for b in &basis {
            let mut total = Rational::zero();
            for (p, q) in &self.terms {
                let e = valuation(p.numer().magnitude(), b) as i64 - valuation(p.denom().magnitude(), b) as i64;
                if e != 0 {
                    total += q * Rational::from_integer(e.into());
                }
            }
            if !total.is_zero() {
                return false;
            }
        }
        true
    }

    /// Rigorous enclosure of the value of width at most `2^-bits`
    /// (`bits` below 8 is raised to 8).
    pub fn approx(&self, bits: u32) -> DyadicInterval {
        let bits = bits.max(8);
        // each ln enclosure is 6 ulps wide, scaling by q widens it to 6|q|+2
        let mut budget = Rational::one();
        for q in self.terms.values() {
            budget += q.abs() * Rational::from_integer(6.into()) + Rational::from_integer(2.into());
        }
        let slack = budget.ceil().to_integer().bits() as u32;
        let prec = bits + slack + 1;
        let mut lo = floor_scaled(&self.constant, prec);
        let mut hi = ceil_scaled(&self.constant, prec);
        for (p, q) in &self.terms {
            let l = ln_interval(p, prec);
            let (a, b) = (q.numer(), q.denom());
            let (x, y) = if a.is_positive() { (l.lo(), l.hi()) } else { (l.hi(), l.lo()) };
            lo += (a * x).div_floor(b);
            hi += (a * y).div_ceil(b);
        }
        let out = DyadicInterval::new(lo, hi, prec);
        debug_assert!(out.width_within(bits));
        out
    }

    /// Exact sign, terminating on every input.
    pub fn sign(&self) -> Sign {
        if self.terms.is_empty() {
            return Sign::of_rational(&self.constant);
        }
        if let Some(s) = self.float_filter() {
            return s;
        }
        let first = self.approx(64);
        if let Some(s) = first.sign() {
            return s;
        }
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut bits = 128u32;
        loop {
            if let Some(s) = self.approx(bits).sign() {
                return s;
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Sign from a double-precision evaluation, when its error bound (about
    /// 100 times the worst case for correctly bounded `ln`) clears zero.
    fn float_filter(&self) -> Option<Sign> {
        let mut value = rational_to_f64_nearest(&self.constant);
        if !value.is_finite() {
            return None;
        }
        let mut magnitude = libm::fabs(value);
        for (p, q) in &self.terms {
            let pf = rational_to_f64_nearest(p);
            let qf = rational_to_f64_nearest(q);
            if !pf.is_normal() || !qf.is_normal() {
                return None;
            }
            let term = qf * libm::log(pf);
            value += term;
            magnitude += libm::fabs(term) + libm::fabs(qf);
        }
        let bound = 1e-13 * (self.terms.len() as f64 + 2.0) * magnitude;
        if !bound.is_finite() || libm::fabs(value) <= bound {
            return None;
        }
        Some(if value > 0.0 { Sign::Positive } else { Sign::Negative })
    }

    pub fn cmp_value(&self, other: &LogLinearForm) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn eq_value(&self, other: &LogLinearForm) -> bool {
        (self - other).is_zero()
    }

    /// Nearest-ish double with relative error below `2^-60`.
    pub fn to_f64(&self) -> f64 {
        if self.terms.is_empty() {
            return rational_to_f64_nearest(&self.constant);
        }
        if self.is_zero() {
            return 0.0;
        }
        let mut bits = 64u32;
        loop {
            let iv = self.approx(bits);
            if iv.sign().is_some() {
                let mag = iv.lo().abs().min(iv.hi().abs());
                let width: BigInt = iv.hi() - iv.lo();
                if (width << 60u32) <= mag {
                    return iv.midpoint_f64();
                }
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Total bit size of the constant, keys and coefficients.
    pub fn size(&self) -> u64 {
        let mut s = super::rational_size(&self.constant);
        for (p, q) in &self.terms {
            s += super::rational_size(p) + super::rational_size(q);
        }
        s
    }
}

/// Largest `k` with `b^k | m` (for `b > 1`).
fn valuation(m: &BigUint, b: &BigUint) -> u64 {
    let mut k = 0;
    let mut m = m.clone();
    loop {
        let (q, r) = m.div_rem(b);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// Pairwise coprime set of integers `> 1` such that every input is a product
/// of powers of its elements.
fn coprime_basis(inputs: Vec<BigUint>) -> Vec<BigUint> {
    let mut pending: Vec<BigUint> = inputs.into_iter().filter(|x| *x > BigUint::one()).collect();
    let mut basis: Vec<BigUint> = Vec::new();
    while let Some(x) = pending.pop() {
        if x.is_one() {
            continue;
        }
        let mut split = None;
        for (i, b) in basis.iter().enumerate() {
            let g = x.gcd(b);
            if !g.is_one() {
                split = Some((i, g));
                break;
            }
        }
        match split {
            None => basis.push(x),
            Some((i, g)) => {
                let b = basis.swap_remove(i);
                if g == x && g == b {
                    basis.push(g);
                    continue;
                }
                pending.push(&x / &g);
                pending.push(&b / &g);
                pending.push(g);
            }
        }
    }
    basis
}

impl From<Rational> for LogLinearForm {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Neg for &LogLinearForm {
    type Output = LogLinearForm;
    fn neg(self) -> LogLinearForm {
        LogLinearForm {
            constant: -self.constant.clone(),
            terms: self.terms.iter().map(|(p, q)| (p.clone(), -q.clone())).collect(),
        }
    }
}

impl Neg for LogLinearForm {
    type Output = LogLinearForm;
    fn neg(self) -> LogLinearForm {
        -&self
    }
}

impl AddAssign<&LogLinearForm> for LogLinearForm {
    fn add_assign(&mut self, o: &LogLinearForm) {
        self.add_scaled(&Rational::one(), o);
    }
}

impl SubAssign<&LogLinearForm> for LogLinearForm {
    fn sub_assign(&mut self, o: &LogLinearForm) {
        self.add_scaled(&-Rational::one(), o);
    }
}

impl Add for &LogLinearForm {
    type Output = LogLinearForm;
    fn add(self, o: &LogLinearForm) -> LogLinearForm {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Sub for &LogLinearForm {
    type Output = LogLinearForm;
    fn sub(self, o: &LogLinearForm) -> LogLinearForm {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Add for LogLinearForm {
    type Output = LogLinearForm;
    fn add(mut self, o: LogLinearForm) -> LogLinearForm {
        self += &o;
        self
    }
}

impl Sub for LogLinearForm {
    type Output = LogLinearForm;
    fn sub(mut self, o: LogLinearForm) -> LogLinearForm {
        self -= &o;
        self
    }
}

impl Mul<&Rational> for &LogLinearForm {
    type Output = LogLinearForm;
    fn mul(self, k: &Rational) -> LogLinearForm {
        self.scale(k)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `r + q*ln(p) - ...`, e.g. `1/2*ln(25)` or `-ln(3)`.
impl fmt::Display for LogLinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.terms.is_empty() {
            write_rational(f, &self.constant)?;
            first = false;
        }
        for (p, q) in &self.terms {
            let negative = q.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mag = q.abs();
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            f.write_str("ln(")?;
            write_rational(f, p)?;
            f.write_str(")")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) syntax: a sum of rationals and
/// `[q*]ln(p)` terms (`log` is accepted as an alias).
impl FromStr for LogLinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let syntax = |position: usize, message: &str| Error::Syntax { position, message: String::from(message) };
        let mut out = LogLinearForm::zero();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                if first {
                    return Err(syntax(i, "empty form"));
                }
                return Ok(out);
            }
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(syntax(i, "expected '+' or '-'"));
            }
            first = false;
            // optional rational coefficient
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.' || bytes[i] == b'/') {
                i += 1;
            }
            let coeff = if i > start {
                Some(parse_rational(&s[start..i]).map_err(|_| syntax(start, "malformed number"))?)
            } else {
                None
            };
            skip_ws(&mut i);
            let rest = &s[i..];
            let starts_log = rest.starts_with("ln(") || rest.starts_with("log(") || rest.starts_with('*');
            if !starts_log {
                let c = coeff.ok_or_else(|| syntax(i, "expected a number or ln(...)"))?;
                out.constant += if negative { -c } else { c };
                continue;
            }
            if rest.starts_with('*') {
                if coeff.is_none() {
                    return Err(syntax(i, "unexpected '*'"));
                }
                i += 1;
                skip_ws(&mut i);
            }
            let rest = &s[i..];
            let open = if rest.starts_with("ln(") {
                3
            } else if rest.starts_with("log(") {
                4
            } else {
                return Err(syntax(i, "expected ln(...)"));
            };
            i += open;
            let close = s[i..].find(')').ok_or_else(|| syntax(i, "unclosed ln("))? + i;
            let p = parse_rational(&s[i..close]).map_err(|_| syntax(i, "malformed ln argument"))?;
            if !p.is_positive() {
                return Err(syntax(i, "ln argument must be positive"));
            }
            i = close + 1;
            let q = coeff.unwrap_or_else(Rational::one);
            out.push_term(p, if negative { -q } else { q });
        }
    }
}

impl ToPrimitive for LogLinearForm {
    fn to_i64(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    fn to_u64(&self) -> Option<u64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_u64())
    }

    fn to_f64(&self) -> Option<f64> {
        Some(LogLinearForm::to_f64(self))
    }
}
