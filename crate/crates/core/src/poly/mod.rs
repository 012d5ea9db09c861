//! Sparse Laurent polynomials with exact Gaussian-rational coefficients.

mod parse;

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::exact::{GaussianRational, LogLinearForm, Rational};
use crate::{Error, Result};

pub use parse::parse_polynomial;

/// Integer exponent vector `a` of the monomial `x^a`; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(n: usize) -> Self {
        Monomial(alloc::vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// One term `c·x^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: GaussianRational,
}

/// `Σ c_i x^{a_i}` in `n` variables with nonzero coefficients and distinct
/// exponents, kept in input order.
///
/// Term positions are 0-based in this API. The polynomial may be empty only
/// when produced by [`partial_derivative`](Self::partial_derivative).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    n: usize,
    terms: Vec<Term>,
}

impl LaurentPolynomial {
    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents (at the position of their first occurrence) and
    /// dropping zero coefficients. The result may be empty.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, GaussianRational)>,
    {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let mut merged: Vec<Term> = Vec::new();
        for (exps, coeff) in terms {
            if exps.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: exps.len() });
            }
            let monomial = Monomial(exps);
            match merged.iter_mut().find(|t| t.monomial == monomial) {
                Some(t) => t.coeff = &t.coeff + &coeff,
                None => merged.push(Term { monomial, coeff }),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        Ok(LaurentPolynomial { n, terms: merged })
    }

    /// Like [`from_terms`](Self::from_terms) but rejects the zero polynomial.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, GaussianRational)>,
    {
        let p = Self::from_terms(n, terms)?;
        if p.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(p)
    }

    /// Parses `text` in `n` variables; see [`parse_polynomial`].
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse_polynomial(text, n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms `t`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent(&self, i: usize) -> &[i64] {
        &self.terms[i].monomial.0
    }

    pub fn coeff(&self, i: usize) -> &GaussianRational {
        &self.terms[i].coeff
    }

    /// `log|c_i|` for every term, exactly.
    pub fn log_abs_coeffs(&self) -> Vec<LogLinearForm> {
        self.terms.iter().map(|t| LogLinearForm::log_abs(&t.coeff).expect("coefficients are nonzero")).collect()
    }

    /// `Σ_i ln((2 + |c_i|)·Π_j (2 + |a_{ij}|))`, natural log.
    pub fn input_size(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let modulus = t.coeff.to_complex().norm();
                let mut s = libm::log(2.0 + modulus);
                for &a in &t.monomial.0 {
                    s += libm::log(2.0 + a.unsigned_abs() as f64);
                }
                s
            })
            .sum()
    }

    /// Floating-point value at `x`.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64> {
        Ok(self.evaluate_with_scale(x)?.0)
    }

    /// Value at `x` together with `Σ|c_i|·|x^{a_i}|`, the natural scale for
    /// relative residuals. Terms are summed with Neumaier compensation.
    pub fn evaluate_with_scale(&self, x: &[Complex64]) -> Result<(Complex64, f64)> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut sum = Compensated::default();
        let mut scale = 0.0;
        for t in &self.terms {
            let m = monomial_value(&t.monomial.0, x)?;
            let v = t.coeff.to_complex() * m;
            scale += v.norm();
            sum.add(v);
        }
        Ok((sum.total(), scale))
    }

    /// Term-wise `∂/∂x_i` (0-based `i`); may return the empty polynomial.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: i + 1 });
        }
        let terms = self.terms.iter().filter(|t| t.monomial.0[i] != 0).map(|t| {
            let a = t.monomial.0[i];
            let mut exps = t.monomial.0.clone();
            exps[i] -= 1;
            let k = GaussianRational::from_integer(a);
            (exps, &t.coeff * &k)
        });
        Self::from_terms(self.n, terms)
    }

    /// `f^{*s} = Σ c_i^s x^{a_i}`.
    ///
    /// Integer `s` is exact. Otherwise `c_i^s` uses the principal branch in
    /// double precision and is stored as the exact rational value of the
    /// resulting doubles.
    pub fn power_deform(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::InvalidArgument("deformation exponent must be positive".into()));
        }
        if s.is_integer() {
            let e: i64 =
                num_traits::ToPrimitive::to_i64(&s.to_integer()).ok_or(Error::Overflow("deformation exponent"))?;
            let terms = self.terms.iter().map(|t| Ok((t.monomial.0.clone(), t.coeff.pow(e)?)));
            let terms: Result<Vec<_>> = terms.collect();
            return Self::new(self.n, terms?);
        }
        let sf = crate::exact::rational_to_f64_nearest(s);
        let terms = self.terms.iter().map(|t| {
            let c = t.coeff.to_complex().powf(sf);
            (t.monomial.0.clone(), GaussianRational::new(f64_to_rational(c.re), f64_to_rational(c.im)))
        });
        Self::new(self.n, terms)
    }

    /// Multiplies through by the monomial making every exponent nonnegative
    /// with some zero in each coordinate. Returns the shift that was applied.
    pub fn clear_denominators(&self) -> (Self, Vec<i64>) {
        let mut shift = alloc::vec![0i64; self.n];
        for (j, s) in shift.iter_mut().enumerate() {
            *s = -self.terms.iter().map(|t| t.monomial.0[j]).min().unwrap_or(0);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                monomial: Monomial(t.monomial.0.iter().zip(&shift).map(|(a, s)| a + s).collect()),
                coeff: t.coeff.clone(),
            })
            .collect();
        (LaurentPolynomial { n: self.n, terms }, shift)
    }
}

fn monomial_value(exps: &[i64], x: &[Complex64]) -> Result<Complex64> {
    let mut m = Complex64::one();
    for (j, (&a, &xj)) in exps.iter().zip(x).enumerate() {
        if a == 0 {
            continue;
        }
        if a < 0 && xj.is_zero() {
            return Err(Error::DivisionByZero { coordinate: j + 1 });
        }
        m *= complex_powi(xj, a);
    }
    Ok(m)
}

pub(crate) fn complex_powi(z: Complex64, e: i64) -> Complex64 {
    let mut base = if e < 0 { z.inv() } else { z };
    let mut k = e.unsigned_abs();
    let mut acc = Complex64::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// Neumaier-compensated complex summation.
#[derive(Default)]
pub(crate) struct Compensated {
    re: (f64, f64),
    im: (f64, f64),
}

impl Compensated {
    fn step(acc: &mut (f64, f64), v: f64) {
        let t = acc.0 + v;
        if libm::fabs(acc.0) >= libm::fabs(v) {
            acc.1 += (acc.0 - t) + v;
        } else {
            acc.1 += (v - t) + acc.0;
        }
        acc.0 = t;
    }

    pub(crate) fn add(&mut self, v: Complex64) {
        Self::step(&mut self.re, v.re);
        Self::step(&mut self.im, v.im);
    }

    pub(crate) fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// The exact rational value of a finite double.
pub(crate) fn f64_to_rational(x: f64) -> Rational {
    use num_bigint::BigInt;
    use num_traits::float::FloatCore;
    assert!(x.is_finite(), "non-finite coefficient");
    let (mantissa, exponent, sign) = FloatCore::integer_decode(x);
    let m = BigInt::from(mantissa) * BigInt::from(sign);
    if exponent >= 0 {
        Rational::from_integer(m << exponent as u32)
    } else {
        Rational::new(m, BigInt::one() << (-exponent) as u32)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders in the input grammar, e.g. `1 + x1^3 + x2^2 - 3*x1*x2`; the output
/// parses back to the same polynomial.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let c = &t.coeff;
            let constant = t.monomial.is_constant();
            if c.is_real() {
                let negative = c.re.is_negative();
                if k == 0 {
                    if negative {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if negative { " - " } else { " + " })?;
                }
                let mag = c.re.abs();
                if constant {
                    write_rational(f, &mag)?;
                } else if !mag.is_one() {
                    write_rational(f, &mag)?;
                    f.write_str("*")?;
                }
            } else {
                if k > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "(")?;
                write_rational(f, &c.re)?;
                f.write_str(if c.im.is_negative() { "-" } else { "+" })?;
                write_rational(f, &c.im.abs())?;
                f.write_str("i)")?;
                if !constant {
                    f.write_str("*")?;
                }
            }
            let mut first_var = true;
            for (j, &a) in t.monomial.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !first_var {
                    f.write_str("*")?;
                }
                first_var = false;
                write!(f, "x{}", j + 1)?;
                if a != 1 {
                    write!(f, "^{a}")?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomials `f_1..f_k` in a shared number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem {
    polys: Vec<LaurentPolynomial>,
}

impl PolynomialSystem {
    pub fn new(polys: Vec<LaurentPolynomial>) -> Result<Self> {
        let first =
            polys.first().ok_or_else(|| Error::InvalidArgument("a system needs at least one polynomial".into()))?;
        let n = first.dim();
        if let Some(p) = polys.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        Ok(PolynomialSystem { polys })
    }

    pub fn dim(&self) -> usize {
        self.polys[0].dim()
    }

    pub fn polys(&self) -> &[LaurentPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.dim()
    }

    /// `F(x)` as a vector.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.polys.iter().map(|p| p.evaluate(x)).collect()
    }
}
