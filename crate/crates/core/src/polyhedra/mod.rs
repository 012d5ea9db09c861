//! Exact polyhedra whose irrationality sits in the right-hand sides.
//!
//! Normals are rational; right-hand sides and point coordinates are
//! [`LogLinearForm`]s. Every comparison goes through the exact sign oracle.

mod hull;
pub mod linalg;
mod lp;
mod redundancy;
mod vertices;

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::exact::{rational_size, LogLinearForm, Rational, Sign};
use crate::{Error, Result};

pub use hull::{boundary_points, lower_hull, LiftedPoint, LowerFace, LowerHull};
pub use lp::{lp_feasible, lp_optimize, to_standard_form, LpOutcome, StandardForm};
pub use redundancy::{irredundant, irredundant_indices, irredundant_indices_at};
pub use vertices::{vertices, vertices_up_to, VERTEX_DIM_LIMIT};

/// A point whose coordinates are exact log-linear forms.
pub type Point = Vec<LogLinearForm>;

/// `α·w ≤ β` with rational `α ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub rhs: LogLinearForm,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, rhs: LogLinearForm) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("half-space normal must be nonzero".into()));
        }
        Ok(HalfSpace { normal, rhs })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `β − α·w`; nonnegative exactly on the half-space.
    pub fn slack(&self, w: &[LogLinearForm]) -> LogLinearForm {
        let mut s = self.rhs.clone();
        for (a, x) in self.normal.iter().zip(w) {
            s.add_scaled(&-a, x);
        }
        s
    }

    /// `β − α·w` for a rational point.
    pub fn slack_rational(&self, w: &[Rational]) -> LogLinearForm {
        &self.rhs - &LogLinearForm::from_rational(linalg::dot(&self.normal, w))
    }

    pub fn contains(&self, w: &[LogLinearForm]) -> bool {
        self.slack(w).sign() != Sign::Negative
    }

    /// `α·w ≤ k·β`: the image of the half-space under `w ↦ k·w` for `k > 0`.
    pub fn dilate(&self, k: &Rational) -> HalfSpace {
        HalfSpace { normal: self.normal.clone(), rhs: self.rhs.scale(k) }
    }

    /// True when both describe the same half-space (normals and right-hand
    /// sides proportional by a positive rational).
    pub fn same_set(&self, other: &HalfSpace) -> bool {
        let Some(p) = self.normal.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if other.normal[p].is_zero() {
            return false;
        }
        let k = &other.normal[p] / &self.normal[p];
        if k <= Rational::zero() {
            return false;
        }
        self.normal.iter().zip(&other.normal).all(|(a, b)| a * &k == *b) && self.rhs.scale(&k).eq_value(&other.rhs)
    }

    pub fn size(&self) -> u64 {
        self.normal.iter().map(rational_size).sum::<u64>() + self.rhs.size()
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, a) in self.normal.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a < &Rational::zero();
            let mag = if neg { -a.clone() } else { a.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag != Rational::from_integer(1.into()) {
                write!(f, "{mag}*")?;
            }
            write!(f, "w{}", j + 1)?;
            first = false;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Finite intersection of half-spaces in `R^dim`. No constraints means all
/// of space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<HalfSpace>,
}

impl HPolyhedron {
    pub fn new(dim: usize, constraints: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = constraints.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: h.dim() });
        }
        Ok(HPolyhedron { dim, constraints })
    }

    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron { dim, constraints: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn push(&mut self, h: HalfSpace) -> Result<()> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.dim() });
        }
        self.constraints.push(h);
        Ok(())
    }

    pub fn contains(&self, w: &[LogLinearForm]) -> bool {
        self.constraints.iter().all(|h| h.contains(w))
    }

    pub fn contains_rational(&self, w: &[Rational]) -> bool {
        self.constraints.iter().all(|h| h.slack_rational(w).sign() != Sign::Negative)
    }

    /// Indices of constraints tight at `w`.
    pub fn active_at(&self, w: &[LogLinearForm]) -> Vec<usize> {
        (0..self.constraints.len()).filter(|&i| self.constraints[i].slack(w).is_zero()).collect()
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(HPolyhedron { dim: self.dim, constraints })
    }

    /// `{k·w | w ∈ P}` for `k > 0`.
    pub fn dilate(&self, k: &Rational) -> HPolyhedron {
        HPolyhedron { dim: self.dim, constraints: self.constraints.iter().map(|h| h.dilate(k)).collect() }
    }

    /// True when both lists contain the same half-spaces up to positive
    /// scaling, irrespective of order.
    pub fn same_constraints(&self, other: &HPolyhedron) -> bool {
        self.dim == other.dim
            && self.constraints.len() == other.constraints.len()
            && self.constraints.iter().all(|h| other.constraints.iter().any(|g| h.same_set(g)))
            && other.constraints.iter().all(|g| self.constraints.iter().any(|h| h.same_set(g)))
    }

    /// Bit size of all normals and right-hand sides.
    pub fn size(&self) -> u64 {
        self.constraints.iter().map(HalfSpace::size).sum()
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "R^{}", self.dim);
        }
        for (i, h) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Integer vector as rationals.
pub fn integer_vector(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Rational point as exact forms.
pub fn rational_point(v: &[Rational]) -> Point {
    v.iter().cloned().map(LogLinearForm::from_rational).collect()
}
