use alloc::vec::Vec;

use super::lifted_points;
use crate::exact::{LogLinearForm, Rational};
use crate::poly::LaurentPolynomial;
use crate::polyhedra::{boundary_points, irredundant, lower_hull, HPolyhedron, HalfSpace, LowerHull, Point};
use crate::{Error, Result};

/// The cell of `ArchTrop(f)` dual to a positive-dimensional lower face.
#[derive(Clone, Debug)]
pub struct TropicalCell {
    /// Terms tying for the maximum on the cell: the points of the face.
    pub terms: Vec<usize>,
    /// Dimension of the dual lower face.
    pub face_dim: usize,
    /// Dimension of the cell, `n − face_dim`.
    pub dim: usize,
    /// Irredundant description of the closed cell.
    pub polyhedron: HPolyhedron,
}

/// `ArchTrop(f)` as a polyhedral complex, one cell per positive-dimensional
/// lower face of `ArchNewt(f)`.
#[derive(Clone, Debug)]
pub struct ArchTropComplex {
    source: LaurentPolynomial,
    hull: LowerHull,
    cells: Vec<TropicalCell>,
}

impl ArchTropComplex {
    pub fn new(f: &LaurentPolynomial) -> Result<Self> {
        let n = f.dim();
        let hull = lower_hull(lifted_points(f))?;
        let logs = f.log_abs_coeffs();
        let mut cells = Vec::new();
        for face in hull.faces().iter().filter(|q| q.dim >= 1) {
            let q = &face.points;
            let j0 = q[0];
            let row = |dominant: usize, other: usize| {
                let normal: Vec<Rational> = f
                    .exponent(other)
                    .iter()
                    .zip(f.exponent(dominant))
                    .map(|(o, d)| Rational::from_integer((o - d).into()))
                    .collect();
                HalfSpace::new(normal, &logs[dominant] - &logs[other])
            };
            let mut rows = Vec::new();
            for &j in &q[1..] {
                rows.push(row(j0, j)?);
                rows.push(row(j, j0)?);
            }
            for i in (0..f.len()).filter(|i| !q.contains(i)) {
                rows.push(row(j0, i)?);
            }
            let polyhedron = irredundant(&HPolyhedron::new(n, rows)?)?;
            cells.push(TropicalCell { terms: q.clone(), face_dim: face.dim, dim: n - face.dim, polyhedron });
        }
        Ok(ArchTropComplex { source: f.clone(), hull, cells })
    }

    pub fn source(&self) -> &LaurentPolynomial {
        &self.source
    }

    /// The lower hull of `ArchNewt(f)`.
    pub fn lower_hull(&self) -> &LowerHull {
        &self.hull
    }

    pub fn cells(&self) -> &[TropicalCell] {
        &self.cells
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &TropicalCell> {
        self.cells.iter().filter(move |c| c.dim == k)
    }

    /// Vertices of the complex, dual to the full-dimensional cells of the
    /// subdivision. Empty unless `Newt(f)` is full-dimensional.
    pub fn vertices(&self) -> Vec<Point> {
        if self.hull.affine_dim() != self.source.dim() {
            return Vec::new();
        }
        self.hull.facets().filter_map(|q| q.normal.clone()).collect()
    }

    /// The induced subdivision of `Newt(f)`.
    pub fn subdivision(&self) -> Subdivision {
        Subdivision::from_hull(&self.hull)
    }

    /// Cells whose closure contains `w`.
    pub fn cells_containing(&self, w: &[LogLinearForm]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].polyhedron.contains(w)).collect()
    }
}

/// A cell `π(Q)` of the induced subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Sorted term indices whose exponents lie in the cell.
    pub points: Vec<usize>,
    /// Sorted term indices that are vertices of the cell.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// The regular subdivision of `Newt(f)` induced by the lifting
/// `a_i ↦ (a_i, −log|c_i|)`, listing every cell with all its faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub dim: usize,
    pub cells: Vec<SubdivisionCell>,
}

impl Subdivision {
    fn from_hull(hull: &LowerHull) -> Self {
        let lifted_vertices = hull.vertices();
        let cells = hull
            .faces()
            .iter()
            .map(|q| SubdivisionCell {
                points: q.points.clone(),
                vertices: q.points.iter().copied().filter(|p| lifted_vertices.contains(p)).collect(),
                dim: q.dim,
            })
            .collect();
        Subdivision { dim: hull.affine_dim(), cells }
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &SubdivisionCell> {
        self.cells.iter().filter(move |c| c.dim == k)
    }

    /// Full-dimensional cells.
    pub fn maximal_cells(&self) -> impl Iterator<Item = &SubdivisionCell> {
        self.cells_of_dim(self.dim)
    }

    /// Term indices that are vertices of the subdivision.
    pub fn vertices(&self) -> Vec<usize> {
        self.cells_of_dim(0).map(|c| c.points[0]).collect()
    }
}

pub fn induced_subdivision(f: &LaurentPolynomial) -> Result<Subdivision> {
    Ok(Subdivision::from_hull(&lower_hull(lifted_points(f))?))
}

/// `(total, bounded)` counts of connected components of `R² ∖ ArchTrop(f)`,
/// read off the subdivision: every vertex is dual to a component, and the
/// bounded ones are the vertices interior to `Newt(f)`.
pub fn complement_components(f: &LaurentPolynomial) -> Result<(usize, usize)> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim() });
    }
    let sub = induced_subdivision(f)?;
    let vertices = sub.vertices();
    let bases: Vec<Vec<i64>> = f.terms().iter().map(|t| t.monomial.0.clone()).collect();
    let (dim, boundary) = boundary_points(&bases);
    let bounded = if dim < 2 { 0 } else { vertices.iter().filter(|&&v| !boundary[v]).count() };
    Ok((vertices.len(), bounded))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{f1, f2};
    use super::super::{cell_at, contains};
    use super::*;

    #[test]
    fn f1_triangulation() {
        let s = induced_subdivision(&f1()).unwrap();
        let tri: Vec<_> = s.maximal_cells().collect();
        assert_eq!(tri.len(), 3);
        assert!(tri.iter().all(|c| c.points.contains(&3) && c.points.len() == 3));
        assert_eq!(complement_components(&f1()).unwrap(), (4, 1));
    }

    #[test]
    fn binomial_segment() {
        let b = LaurentPolynomial::parse("2 - x1*x2^3", 2).unwrap();
        let s = induced_subdivision(&b).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.maximal_cells().count(), 1);
        assert_eq!(complement_components(&b).unwrap(), (2, 0));
        assert!(complement_components(&LaurentPolynomial::parse("1 - x", 1).unwrap()).is_err());
    }

    #[test]
    fn example_holes() {
        // the second polynomial of the example pair: its variety has two holes
        let (total, bounded) = complement_components(&f2()).unwrap();
        assert_eq!(bounded, 2);
        let s = induced_subdivision(&f2()).unwrap();
        assert_eq!(s.vertices().len(), total);
        // with unit coefficients the interior lattice points lift onto the flat hull
        let f =
            LaurentPolynomial::parse("1 + x2^2 + x2^4 + x1*x2^2 + x1*x2^4 + x1^2*x2 + x1^2*x2^2 + x1^3", 2).unwrap();
        assert_eq!(complement_components(&f).unwrap(), (4, 0));
    }

    #[test]
    fn complex_duality() {
        let c = ArchTropComplex::new(&f1()).unwrap();
        assert_eq!(c.vertices().len(), 3);
        assert_eq!(c.cells_of_dim(0).count(), 3);
        assert_eq!(c.cells_of_dim(1).count(), 6);
        // every vertex lies on the variety with at least three ties
        for v in c.vertices() {
            assert!(contains(&f1(), &v).unwrap());
            assert!(cell_at(&f1(), &v).unwrap().active[0].len() >= 3);
        }
        let edge = c.cells_of_dim(1).next().unwrap();
        assert_eq!(edge.terms.len(), 2);
    }
}
