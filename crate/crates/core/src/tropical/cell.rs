use alloc::vec::Vec;

use super::{argmax, check_dim, term_values};
use crate::exact::{LogLinearForm, Rational, Sign};
use crate::poly::{LaurentPolynomial, PolynomialSystem};
use crate::polyhedra::{irredundant_indices_at, HPolyhedron, HalfSpace, Point};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// A connected component of the complement of the tropical variety.
    Complement,
    /// A relatively open cell of the tropical variety itself.
    ArchTrop,
}

/// Why a constraint is present: the value of term `other` of polynomial
/// `poly` may not exceed that of term `dominant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintOrigin {
    pub poly: usize,
    pub dominant: usize,
    pub other: usize,
}

/// The closed cell containing a query point.
#[derive(Clone, Debug)]
pub struct CellAtPoint {
    /// Irredundant description of the cell closure.
    pub closure: HPolyhedron,
    /// One entry per constraint of `closure`.
    pub origins: Vec<ConstraintOrigin>,
    /// Indices into `closure` of the constraints not tight at the query
    /// point. These are the facets relative to the affine hull of the cell.
    pub facets: Vec<usize>,
    pub kind: CellKind,
    /// For each polynomial, the terms attaining the maximum at the query point.
    pub active: Vec<Vec<usize>>,
    /// Number of constraints before redundancy removal.
    pub raw_constraints: usize,
    pub point: Point,
}

impl CellAtPoint {
    pub fn facet_constraints(&self) -> impl Iterator<Item = (&HalfSpace, &ConstraintOrigin)> {
        self.facets.iter().map(|&i| (&self.closure.constraints()[i], &self.origins[i]))
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }
}

/// `value(other) ≤ value(dominant)`, i.e. `(a_o − a_d)·w ≤ l_d − l_o`.
fn dominance(f: &LaurentPolynomial, logs: &[LogLinearForm], dominant: usize, other: usize) -> HalfSpace {
    let normal: Vec<Rational> = f
        .exponent(other)
        .iter()
        .zip(f.exponent(dominant))
        .map(|(o, d)| Rational::from_integer((o - d).into()))
        .collect();
    HalfSpace::new(normal, &logs[dominant] - &logs[other]).expect("distinct terms have distinct exponents")
}

fn push_rows(
    f: &LaurentPolynomial,
    poly: usize,
    active: &[usize],
    rows: &mut Vec<HalfSpace>,
    origins: &mut Vec<ConstraintOrigin>,
) {
    let logs = f.log_abs_coeffs();
    let j0 = active[0];
    let mut add = |dominant: usize, other: usize| {
        rows.push(dominance(f, &logs, dominant, other));
        origins.push(ConstraintOrigin { poly, dominant, other });
    };
    for &j in &active[1..] {
        add(j0, j);
        add(j, j0);
    }
    for i in 0..f.len() {
        if !active.contains(&i) {
            add(j0, i);
        }
    }
}

fn finish(
    n: usize,
    w: &[LogLinearForm],
    rows: Vec<HalfSpace>,
    origins: Vec<ConstraintOrigin>,
    kind: CellKind,
    active: Vec<Vec<usize>>,
) -> Result<CellAtPoint> {
    let raw = rows.len();
    let all = HPolyhedron::new(n, rows)?;
    let keep = irredundant_indices_at(&all, w)?;
    let cons: Vec<HalfSpace> = keep.iter().map(|&i| all.constraints()[i].clone()).collect();
    let origins: Vec<ConstraintOrigin> = keep.iter().map(|&i| origins[i]).collect();
    let facets = (0..cons.len()).filter(|&i| cons[i].slack(w).sign() == Sign::Positive).collect();
    Ok(CellAtPoint {
        closure: HPolyhedron::new(n, cons)?,
        origins,
        facets,
        kind,
        active,
        raw_constraints: raw,
        point: w.to_vec(),
    })
}

/// Closure of the cell of `R^n` (complement cell or tropical cell) that
/// contains `w`, irredundant.
pub fn cell_at(f: &LaurentPolynomial, w: &[LogLinearForm]) -> Result<CellAtPoint> {
    check_dim(f, w)?;
    let active = argmax(&term_values(f, w)?);
    let kind = if active.len() >= 2 { CellKind::ArchTrop } else { CellKind::Complement };
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    push_rows(f, 0, &active, &mut rows, &mut origins);
    finish(f.dim(), w, rows, origins, kind, alloc::vec![active])
}

/// Closure of the cell containing `w` of the arrangement of all
/// `ArchTrop(f_i)`.
///
/// If `w` lies on some of the varieties, the cell is the intersection of
/// their cells at `w` and the other polynomials are ignored. Otherwise it is
/// the intersection of all complement cells.
pub fn multi_cell_at(system: &PolynomialSystem, w: &[LogLinearForm]) -> Result<CellAtPoint> {
    let polys = system.polys();
    if polys.is_empty() {
        return Err(Error::InvalidArgument("empty polynomial system".into()));
    }
    let mut active = Vec::with_capacity(polys.len());
    for f in polys {
        check_dim(f, w)?;
        active.push(argmax(&term_values(f, w)?));
    }
    let on_any = active.iter().any(|a| a.len() >= 2);
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for (i, f) in polys.iter().enumerate() {
        if !on_any || active[i].len() >= 2 {
            push_rows(f, i, &active[i], &mut rows, &mut origins);
        }
    }
    let kind = if on_any { CellKind::ArchTrop } else { CellKind::Complement };
    finish(system.dim(), w, rows, origins, kind, active)
}
