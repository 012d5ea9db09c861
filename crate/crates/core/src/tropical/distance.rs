use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::cell::{cell_at, ConstraintOrigin};
use crate::exact::{rational_to_f64_nearest, LogLinearForm, Rational};
use crate::poly::LaurentPolynomial;
use crate::polyhedra::HalfSpace;
use crate::{Error, Result};

/// Precision ceiling for comparing two distances.
const MAX_COMPARE_BITS: u32 = 4096;

/// Euclidean distance from a point to `ArchTrop(f)`.
#[derive(Clone, Debug)]
pub struct Distance {
    pub value: f64,
    /// The nearest facet of the complement cell; absent when the point lies
    /// on the variety.
    pub witness: Option<DistanceWitness>,
}

#[derive(Clone, Debug)]
pub struct DistanceWitness {
    pub constraint: HalfSpace,
    pub origin: ConstraintOrigin,
    /// `β − α·w`, exactly.
    pub slack: LogLinearForm,
    /// `|α|²`.
    pub norm_sqr: Rational,
}

/// Outcome of the amoeba proximity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Classification {
    /// Within `log(t − 1)` of `ArchTrop(f)`, hence within `(2t − 2)·log(t − 1)`
    /// of the amoeba.
    Near { distance: f64 },
    /// Off the amoeba; `gap` is a lower bound on the distance to it.
    Far { gap: f64 },
}

fn norm_sqr(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

/// Bounds on `s²` from an interval on `s ≥ 0`.
fn square_bounds(s: &LogLinearForm, bits: u32) -> (Rational, Rational) {
    let iv = s.approx(bits);
    let lo = iv.lower().max(Rational::zero());
    let hi = iv.upper().abs().max(lo.clone());
    (&lo * &lo, &hi * &hi)
}

fn perfect_square_root(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    if n.is_negative() {
        return None;
    }
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Compares `sa/√na` with `sb/√nb` for `sa, sb ≥ 0` and `na, nb > 0`.
/// `None` means the intervals still overlap at the precision ceiling.
fn cmp_scaled(sa: &LogLinearForm, na: &Rational, sb: &LogLinearForm, nb: &Rational) -> Option<Ordering> {
    // exact equality is decidable when the ratio of norms is a square
    if let Some(r) = perfect_square_root(&(na / nb)) {
        return Some(sa.cmp_value(&sb.scale(&r)));
    }
    let mut bits = 64;
    while bits <= MAX_COMPARE_BITS {
        let (la, ua) = square_bounds(sa, bits);
        let (lb, ub) = square_bounds(sb, bits);
        if ua * nb < lb * na {
            return Some(Ordering::Less);
        }
        if ub * na < la * nb {
            return Some(Ordering::Greater);
        }
        bits *= 2;
    }
    None
}

fn to_distance(s: &LogLinearForm, n: &Rational) -> f64 {
    s.to_f64() / libm::sqrt(rational_to_f64_nearest(n))
}

/// Distance from `w` to `ArchTrop(f)`.
///
/// The nearest facet hyperplane of the cell containing `w` is selected by
/// interval comparison; ties unresolved at the precision ceiling go to the
/// lowest facet index.
pub fn distance_to_archtrop(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<Distance> {
    if f.len() < 2 {
        return Err(Error::EmptyTropicalVariety);
    }
    let cell = cell_at(f, w)?;
    if cell.active[0].len() >= 2 {
        return Ok(Distance { value: 0.0, witness: None });
    }
    let mut best: Option<DistanceWitness> = None;
    for (h, origin) in cell.facet_constraints() {
        let cand = DistanceWitness {
            constraint: h.clone(),
            origin: *origin,
            slack: h.slack(w),
            norm_sqr: norm_sqr(&h.normal),
        };
        let better = match &best {
            None => true,
            Some(b) => cmp_scaled(&cand.slack, &cand.norm_sqr, &b.slack, &b.norm_sqr) == Some(Ordering::Less),
        };
        if better {
            best = Some(cand);
        }
    }
    let best = best.expect("a complement cell of a polynomial with two terms has a facet");
    Ok(Distance { value: to_distance(&best.slack, &best.norm_sqr), witness: Some(best) })
}

/// Decides between "near `ArchTrop(f)`" (distance at most `log(t − 1)`) and
/// "certainly off the amoeba".
///
/// A comparison that stays undecided at the precision ceiling counts as near,
/// which never produces a false certificate.
pub fn classify(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<Classification> {
    let t = f.len();
    if t < 2 {
        return Ok(Classification::Far { gap: f64::INFINITY });
    }
    let d = distance_to_archtrop(f, w)?;
    let Some(wit) = &d.witness else {
        return Ok(Classification::Near { distance: 0.0 });
    };
    let bound = LogLinearForm::ln(&Rational::from_integer((t as i64 - 1).into()))?;
    let one = Rational::from_integer(1.into());
    match cmp_scaled(&wit.slack, &wit.norm_sqr, &bound, &one) {
        Some(Ordering::Greater) => Ok(Classification::Far { gap: d.value - bound.to_f64() }),
        _ => Ok(Classification::Near { distance: d.value }),
    }
}

/// Distances from `w` to every facet hyperplane of its cell, in facet order.
pub fn facet_distances(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<Vec<f64>> {
    let cell = cell_at(f, w)?;
    Ok(cell.facet_constraints().map(|(h, _)| to_distance(&h.slack(w), &norm_sqr(&h.normal))).collect())
}
