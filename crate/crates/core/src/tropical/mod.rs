//! Archimedean tropical varieties: membership, cells, distances and the
//! dual subdivision of the Newton polytope.
//!
//! Term `i` of `f = Σ c_i x^{a_i}` has value `a_i·w + log|c_i|` at `w`. All
//! term indices are 0-based positions in [`LaurentPolynomial::terms`].

mod cell;
mod complex;
mod distance;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exact::{LogLinearForm, Rational};
use crate::poly::LaurentPolynomial;
use crate::polyhedra::LiftedPoint;
use crate::{Error, Result};

pub use cell::{cell_at, multi_cell_at, CellAtPoint, CellKind, ConstraintOrigin};
pub use complex::{
    complement_components, induced_subdivision, ArchTropComplex, Subdivision, SubdivisionCell, TropicalCell,
};
pub use distance::{classify, distance_to_archtrop, facet_distances, Classification, Distance, DistanceWitness};

/// `a_i·w + log|c_i|` for every term.
pub fn term_values(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<Vec<LogLinearForm>> {
    check_dim(f, w)?;
    let logs = f.log_abs_coeffs();
    Ok(f.terms()
        .iter()
        .zip(logs)
        .map(|(t, l)| {
            let mut v = l;
            for (a, x) in t.monomial.0.iter().zip(w) {
                if *a != 0 {
                    v.add_scaled(&Rational::from_integer((*a).into()), x);
                }
            }
            v
        })
        .collect())
}

/// Indices attaining the maximal term value, found with `t − 1` exact
/// comparisons.
pub fn dominant_terms(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<Vec<usize>> {
    let values = term_values(f, w)?;
    Ok(argmax(&values))
}

pub(crate) fn argmax(values: &[LogLinearForm]) -> Vec<usize> {
    let mut best = vec![0];
    for i in 1..values.len() {
        match values[i].cmp_value(&values[best[0]]) {
            Ordering::Greater => best = vec![i],
            Ordering::Equal => best.push(i),
            Ordering::Less => {}
        }
    }
    best
}

/// Whether `w ∈ ArchTrop(f)`: the maximal term value is attained at least
/// twice. Returns `false` for monomials.
pub fn contains(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<bool> {
    Ok(dominant_terms(f, w)?.len() >= 2)
}

/// The points `(a_i, −log|c_i|)` whose lower hull is `ArchNewt(f)`.
pub fn lifted_points(f: &LaurentPolynomial) -> Vec<LiftedPoint> {
    f.terms()
        .iter()
        .zip(f.log_abs_coeffs())
        .map(|(t, l)| LiftedPoint { base: t.monomial.0.clone(), height: -l })
        .collect()
}

fn check_dim(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<()> {
    if w.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: w.len() });
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn membership() {
        let b = LaurentPolynomial::parse("1 - x1*x2", 2).unwrap();
        assert!(contains(&b, &pt(&[0, 0])).unwrap());
        assert!(!contains(&f1(), &pt(&[0, 0])).unwrap());
        assert_eq!(dominant_terms(&f1(), &pt(&[0, 0])).unwrap(), vec![3]);
        let w = vec![-ln(3), LogLinearForm::zero()];
        assert_eq!(dominant_terms(&f1(), &w).unwrap(), vec![0, 2, 3]);
        assert!(contains(&f1(), &pt(&[0])).is_err());
        let mono = LaurentPolynomial::parse("7*x1", 2).unwrap();
        assert!(!contains(&mono, &pt(&[0, 0])).unwrap());
    }

    #[test]
    fn lifting() {
        let lp = lifted_points(&f1());
        assert_eq!(lp[3].base, vec![1, 1]);
        assert!(lp[3].height.eq_value(&-ln(3)));
        assert!(lp[0].height.is_zero());
    }
}
