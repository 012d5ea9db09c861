//! Tropical start points for numerical root finding.
//!
//! Given a square system and a query point `w`, the cell of `w` in the
//! arrangement of the `ArchTrop(f_i)` is computed. Its mixed vertices, those
//! lying on every variety, select one lower edge of each `ArchNewt(f_i)`. The
//! resulting binomial system is solved exactly up to floating roots of unity
//! and its roots can be refined by Newton's method.

mod binomial;
mod newton;

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Zero;

use crate::exact::{LogLinearForm, Rational};
use crate::poly::PolynomialSystem;
use crate::polyhedra::{lower_hull, vertices, HPolyhedron, LowerHull, Point};
use crate::tropical::{dominant_terms, lifted_points, multi_cell_at, CellAtPoint};
use crate::{Error, Result};

pub use binomial::{binomial_log_norms, smith_normal_form, solve_binomials, BinomialSystem, SmithForm};
pub use newton::{newton_refine, scaled_residual, NewtonOutcome, DEFAULT_NEWTON_MAXIT, DEFAULT_NEWTON_TOL};

/// Largest dimension handled by the brute-force vertex enumeration.
pub const START_DIM_LIMIT: usize = 4;

/// A vertex of the query cell lying on every `ArchTrop(f_i)`.
#[derive(Clone, Debug)]
pub struct MixedVertex {
    pub coordinates: Point,
    /// Per polynomial, the terms attaining the maximum at the vertex.
    pub active: Vec<Vec<usize>>,
}

/// One index set per polynomial, each the points of a lower edge of
/// `ArchNewt(f_i)` dual to a facet through the mixed vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartIndexSets {
    pub sets: Vec<Vec<usize>>,
    /// False when some edge carries more than two points, so that the start
    /// system is not binomial.
    pub binomial: bool,
}

#[derive(Clone, Debug)]
pub struct StartCandidate {
    pub vertex: MixedVertex,
    pub index_sets: StartIndexSets,
}

#[derive(Clone, Debug)]
pub enum StartOutcome {
    /// No vertex of the cell is mixed: there are no roots with log-norm
    /// vector in the cell.
    NoRoots { cell: CellAtPoint },
    /// Mixed vertices, nearest to the query point first.
    Candidates { cell: CellAtPoint, candidates: Vec<StartCandidate> },
}

impl StartOutcome {
    pub fn cell(&self) -> &CellAtPoint {
        match self {
            StartOutcome::NoRoots { cell } | StartOutcome::Candidates { cell, .. } => cell,
        }
    }

    pub fn candidates(&self) -> &[StartCandidate] {
        match self {
            StartOutcome::NoRoots { .. } => &[],
            StartOutcome::Candidates { candidates, .. } => candidates,
        }
    }

    pub fn no_roots_certificate(&self) -> Option<&HPolyhedron> {
        match self {
            StartOutcome::NoRoots { cell } => Some(&cell.closure),
            StartOutcome::Candidates { .. } => None,
        }
    }
}

/// Interval bounds on `|v − w|²`.
fn squared_distance_bounds(v: &[LogLinearForm], w: &[LogLinearForm], bits: u32) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (a, b) in v.iter().zip(w) {
        let iv = (a - b).approx(bits);
        let (l, u) = (iv.lower(), iv.upper());
        let zero = Rational::zero();
        let abs_hi = if -&l > u { -&l } else { u.clone() };
        let abs_lo = if l > zero {
            l
        } else if u < zero {
            -u
        } else {
            zero
        };
        lo += &abs_lo * &abs_lo;
        hi += &abs_hi * &abs_hi;
    }
    (lo, hi)
}

/// Orders by distance to `w`, exactly when the squared distances differ by
/// more than 2^-4096 in relative terms and by index otherwise.
fn cmp_distance(a: &[LogLinearForm], b: &[LogLinearForm], w: &[LogLinearForm]) -> Ordering {
    let mut bits = 64;
    while bits <= 4096 {
        let (la, ua) = squared_distance_bounds(a, w, bits);
        let (lb, ub) = squared_distance_bounds(b, w, bits);
        if ua < lb {
            return Ordering::Less;
        }
        if ub < la {
            return Ordering::Greater;
        }
        if a.iter().zip(b).all(|(x, y)| x.eq_value(y)) {
            return Ordering::Equal;
        }
        bits *= 2;
    }
    Ordering::Equal
}

/// Picks the lower edge of the hull whose points all attain the maximum at
/// the vertex, lexicographically smallest by its pair of endpoints.
fn select_edge(hull: &LowerHull, active: &[usize]) -> Option<Vec<usize>> {
    let hull_vertices = hull.vertices();
    hull.edges()
        .filter(|e| e.points.iter().all(|p| active.contains(p)))
        .map(|e| {
            let ends: Vec<usize> = e.points.iter().copied().filter(|p| hull_vertices.contains(p)).collect();
            (ends, e.points.clone())
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, pts)| pts)
}

/// The mixed-vertex search: computes the cell of `w` and, for each mixed
/// vertex, one start index set per polynomial.
pub fn tropical_start(f: &PolynomialSystem, w: &[LogLinearForm]) -> Result<StartOutcome> {
    if !f.is_square() {
        return Err(Error::NotSquare);
    }
    let n = f.dim();
    if n > START_DIM_LIMIT {
        return Err(Error::DimensionTooLarge { dim: n, limit: START_DIM_LIMIT });
    }
    let cell = multi_cell_at(f, w)?;
    let mut mixed: Vec<MixedVertex> = Vec::new();
    for v in vertices(&cell.closure)? {
        let active: Vec<Vec<usize>> = f.polys().iter().map(|p| dominant_terms(p, &v)).collect::<Result<_>>()?;
        if active.iter().all(|a| a.len() >= 2) {
            mixed.push(MixedVertex { coordinates: v, active });
        }
    }
    if mixed.is_empty() {
        return Ok(StartOutcome::NoRoots { cell });
    }
    // stable sort keeps enumeration order among ties
    mixed.sort_by(|a, b| cmp_distance(&a.coordinates, &b.coordinates, w));
    let hulls: Vec<LowerHull> = f.polys().iter().map(|p| lower_hull(lifted_points(p))).collect::<Result<_>>()?;
    let mut candidates = Vec::with_capacity(mixed.len());
    for vertex in mixed {
        let mut sets = Vec::with_capacity(n);
        for (hull, active) in hulls.iter().zip(&vertex.active) {
            sets.push(
                select_edge(hull, active)
                    .ok_or_else(|| Error::InvalidArgument("mixed vertex without a dual lower edge".into()))?,
            );
        }
        let binomial = sets.iter().all(|s| s.len() == 2);
        candidates.push(StartCandidate { vertex, index_sets: StartIndexSets { sets, binomial } });
    }
    Ok(StartOutcome::Candidates { cell, candidates })
}

/// The binomial start system `c_{j1} x^{a_{j1}} + c_{j2} x^{a_{j2}} = 0`
/// built from the first two points of each index set, written as
/// `x^{a_{j1} − a_{j2}} = −c_{j2}/c_{j1}`.
pub fn start_system(f: &PolynomialSystem, sets: &StartIndexSets) -> Result<BinomialSystem> {
    if sets.sets.len() != f.len() {
        return Err(Error::DimensionMismatch { expected: f.len(), found: sets.sets.len() });
    }
    let mut exps = Vec::with_capacity(f.len());
    let mut targets = Vec::with_capacity(f.len());
    let mut sources = Vec::with_capacity(f.len());
    for (p, s) in f.polys().iter().zip(&sets.sets) {
        let (&j1, &j2) = match s.as_slice() {
            [a, b, ..] => (a, b),
            _ => return Err(Error::InvalidArgument("index sets need at least two terms".into())),
        };
        if s.iter().any(|&j| j >= p.len()) {
            return Err(Error::InvalidArgument("term index out of range".into()));
        }
        exps.push(p.exponent(j1).iter().zip(p.exponent(j2)).map(|(a, b)| a - b).collect());
        let c1: Complex64 = p.coeff(j1).to_complex();
        let c2: Complex64 = p.coeff(j2).to_complex();
        targets.push(-c2 / c1);
        sources.push(Some((j1, j2)));
    }
    let mut g = BinomialSystem::new(exps, targets)?;
    g.sources = sources;
    Ok(g)
}
