//! Shared generators for the property suites.
#![allow(dead_code)]

use archtrop_core::exact::{GaussianRational, LogLinearForm, Rational};
use archtrop_core::poly::LaurentPolynomial;
use proptest::prelude::*;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Nonzero rational `p/q` with `|p|, q ≤ bound`.
pub fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (1..=bound, 1..=bound, any::<bool>()).prop_map(|(n, d, neg)| frac(if neg { -n } else { n }, d))
}

/// Positive rational `p/q` with `p, q ≤ bound`, different from 1.
pub fn positive_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (1..=bound, 1..=bound).prop_filter_map("p = q", |(n, d)| (n != d).then(|| frac(n, d)))
}

/// `r + Σ q_j ln p_j` with up to four logarithms and entries bounded by `bound`.
pub fn log_linear_form(bound: i64) -> impl Strategy<Value = LogLinearForm> {
    let constant = prop_oneof![Just(Rational::from_integer(0.into())), rational(bound)];
    (constant, prop::collection::vec((rational(bound), positive_rational(bound)), 0..=4)).prop_map(|(r, terms)| {
        let mut f = LogLinearForm::from_rational(r);
        for (q, p) in terms {
            f += &LogLinearForm::scaled_ln(&q, &p).unwrap();
        }
        f
    })
}

/// Random polynomial in `n` variables with `2 ≤ t ≤ tmax` terms, exponents in
/// `[-emax, emax]` and rational coefficients with entries up to `cmax`.
pub fn polynomial(n: usize, tmax: usize, emax: i64, cmax: i64) -> impl Strategy<Value = LaurentPolynomial> {
    let term = (prop::collection::vec(-emax..=emax, n), 1..=cmax, 1..=cmax, any::<bool>());
    prop::collection::vec(term, 2..=tmax).prop_filter_map("fewer than two distinct terms", move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, p, q, neg)| (e, GaussianRational::from_rational(frac(if neg { -p } else { p }, q))));
        LaurentPolynomial::new(n, terms).ok().filter(|f| f.len() >= 2)
    })
}

/// Binomial `c1 x^a1 + c2 x^a2`.
pub fn binomial(n: usize, emax: i64, cmax: i64) -> impl Strategy<Value = LaurentPolynomial> {
    polynomial(n, 2, emax, cmax).prop_filter("two terms", |f| f.len() == 2)
}

/// Rational point with coordinates `k/den`, `|k| ≤ bound·den`.
pub fn rational_point(n: usize, bound: i64, den: i64) -> impl Strategy<Value = Vec<LogLinearForm>> {
    prop::collection::vec(-bound * den..=bound * den, n)
        .prop_map(move |v| v.into_iter().map(|k| LogLinearForm::from_rational(frac(k, den))).collect())
}

pub fn to_f64(w: &[LogLinearForm]) -> Vec<f64> {
    w.iter().map(LogLinearForm::to_f64).collect()
}
