//! Polynomial text grammar.
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (['*'|'/'] factor)*       juxtaposition multiplies
//! factor  := number | '(' gaussian ')' | var ['^' int]
//! var     := 'x' digits                       'x' alone means x1 when n = 1
//! int     := ['+'|'-'] digits | '(' ['+'|'-'] digits ')'
//! number  := digits ['.' digits] | '.' digits
//! gaussian:= signed parts such as 3+4i, -i, 1/2-0.5i
//! ```

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::LaurentPolynomial;
use crate::exact::{parse_rational, GaussianRational, Rational};
use crate::{Error, Result};

/// Parses `text` as a Laurent polynomial in `n` variables.
///
/// Coefficients are exact (decimals become rationals); repeated monomials are
/// merged and the zero polynomial is rejected.
pub fn parse_polynomial(text: &str, n: usize) -> Result<LaurentPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut p = Parser { s: text.as_bytes(), text, i: 0, n };
    let terms = p.poly()?;
    LaurentPolynomial::new(n, terms)
}

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    i: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.i, message: String::from(message) })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn poly(&mut self) -> Result<Vec<(Vec<i64>, GaussianRational)>> {
        let mut terms = Vec::new();
        self.ws();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            self.ws();
            let negative = match self.peek() {
                None => break,
                Some(b'+') => {
                    self.i += 1;
                    false
                }
                Some(b'-') => {
                    self.i += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (exps, coeff) = self.term()?;
            terms.push((exps, if negative { -coeff } else { coeff }));
        }
        Ok(terms)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'.' | b'(' | b'x'))
    }

    fn term(&mut self) -> Result<(Vec<i64>, GaussianRational)> {
        let mut exps = vec![0i64; self.n];
        let mut coeff = GaussianRational::one();
        self.ws();
        if !self.starts_factor() {
            return self.err("expected a coefficient or variable");
        }
        let mut divide = false;
        loop {
            match self.factor()? {
                Factor::Coeff(c) => {
                    if divide {
                        if c.is_zero() {
                            return self.err("division by zero");
                        }
                        coeff = coeff.div(&c)?;
                    } else {
                        coeff = &coeff * &c;
                    }
                }
                Factor::Var(j, e) => {
                    let slot = &mut exps[j];
                    *slot = if divide { slot.checked_sub(e) } else { slot.checked_add(e) }
                        .ok_or(Error::Overflow("exponent"))?;
                }
            }
            self.ws();
            divide = match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    false
                }
                Some(b'/') => {
                    self.i += 1;
                    true
                }
                _ if self.starts_factor() => false,
                _ => break,
            };
            self.ws();
            if !self.starts_factor() {
                return self.err("expected a factor");
            }
        }
        Ok((exps, coeff))
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let start = self.i;
                let close = match self.s[start..].iter().position(|&b| b == b')') {
                    Some(k) => start + k,
                    None => return self.err("unclosed '('"),
                };
                let c = parse_gaussian(&self.text[start..close])
                    .map_err(|message| Error::Syntax { position: start, message })?;
                self.i = close + 1;
                Ok(Factor::Coeff(c))
            }
            Some(b'x') => {
                self.i += 1;
                let start = self.i;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.i += 1;
                }
                let index = if start == self.i {
                    if self.n != 1 {
                        self.i = start - 1;
                        return self.err("bare 'x' is only allowed for n = 1");
                    }
                    1
                } else {
                    self.text[start..self.i]
                        .parse::<usize>()
                        .map_err(|_| Error::Syntax { position: start, message: "bad variable index".into() })?
                };
                if index == 0 || index > self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, found: index });
                }
                self.ws();
                let e = if self.peek() == Some(b'^') {
                    self.i += 1;
                    self.ws();
                    self.int()?
                } else {
                    1
                };
                Ok(Factor::Var(index - 1, e))
            }
            _ => {
                let start = self.i;
                while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
                    self.i += 1;
                }
                if start == self.i {
                    return self.err("expected a factor");
                }
                let r = parse_rational(&self.text[start..self.i])
                    .map_err(|_| Error::Syntax { position: start, message: "malformed number".into() })?;
                Ok(Factor::Coeff(GaussianRational::from_rational(r)))
            }
        }
    }

    fn int(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.i += 1;
            self.ws();
        }
        let negative = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                true
            }
            Some(b'+') => {
                self.i += 1;
                false
            }
            _ => false,
        };
        let start = self.i;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer exponent");
        }
        let v: i64 = self.text[start..self.i].parse().map_err(|_| Error::Overflow("exponent"))?;
        if paren {
            self.ws();
            if self.peek() != Some(b')') {
                return self.err("expected ')'");
            }
            self.i += 1;
        }
        Ok(if negative { -v } else { v })
    }
}

enum Factor {
    Coeff(GaussianRational),
    Var(usize, i64),
}

/// Parses the inside of `(a+bi)`.
fn parse_gaussian(s: &str) -> core::result::Result<GaussianRational, String> {
    let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if body.is_empty() {
        return Err("empty parentheses".into());
    }
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let negative = match bytes[i] {
            b'-' => {
                i += 1;
                true
            }
            b'+' => {
                i += 1;
                false
            }
            _ if i == 0 => false,
            _ => return Err("expected '+' or '-' in complex number".into()),
        };
        let start = i;
        while i < bytes.len() && !matches!(bytes[i], b'+' | b'-') {
            i += 1;
        }
        let part = &body[start..i];
        let (digits, imaginary) = match part.strip_suffix('i') {
            Some(d) => (d.strip_suffix('*').unwrap_or(d), true),
            None => (part, false),
        };
        let value = if digits.is_empty() {
            if !imaginary {
                return Err("empty term in complex number".into());
            }
            Rational::one()
        } else {
            parse_rational(digits).map_err(|_| String::from("malformed number in complex coefficient"))?
        };
        let value = if negative { -value } else { value };
        if imaginary {
            im += value;
        } else {
            re += value;
        }
    }
    Ok(GaussianRational::new(re, im))
}
