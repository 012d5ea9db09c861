//! Lower hulls of point sets lifted by log-linear heights.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::linalg::{self, Matrix};
use super::Point;
use crate::exact::{LogLinearForm, Rational, Sign};
use crate::{Error, Result};

/// `(a, h)` with integer base `a` and exact height `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedPoint {
    pub base: Vec<i64>,
    pub height: LogLinearForm,
}

/// A lower face, given by the indices of all input points lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerFace {
    /// Sorted indices of the points on the face.
    pub points: Vec<usize>,
    /// Dimension of the face.
    pub dim: usize,
    /// For maximal faces: `w` such that `(w, −1)` is an outer normal. Among
    /// all such `w` this is the one vanishing off the chosen coordinate
    /// projection of the affine hull.
    pub normal: Option<Point>,
}

/// All faces of `Conv(points)` with an outer normal whose last coordinate is
/// negative, closed under taking subfaces.
#[derive(Clone, Debug)]
pub struct LowerHull {
    points: Vec<LiftedPoint>,
    affine_dim: usize,
    faces: Vec<LowerFace>,
}

impl LowerHull {
    pub fn points(&self) -> &[LiftedPoint] {
        &self.points
    }

    /// Dimension of the affine hull of the bases.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn faces(&self) -> &[LowerFace] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &LowerFace> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Maximal lower faces; these project to the full-dimensional cells of
    /// the induced subdivision.
    pub fn facets(&self) -> impl Iterator<Item = &LowerFace> {
        self.faces_of_dim(self.affine_dim)
    }

    /// Indices of points that are vertices of the lower hull.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces_of_dim(0).map(|f| f.points[0]).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &LowerFace> {
        self.faces_of_dim(1)
    }
}

/// Computes the lower hull of lifted points with distinct bases.
pub fn lower_hull(points: Vec<LiftedPoint>) -> Result<LowerHull> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidArgument("lower hull of an empty point set".into()));
    };
    let n = first.base.len();
    if let Some(p) = points.iter().find(|p| p.base.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.base.len() });
    }
    for i in 0..points.len() {
        if points[i + 1..].iter().any(|q| q.base == points[i].base) {
            return Err(Error::InvalidArgument("repeated base point".into()));
        }
    }
    let (proj, pivots) = project(&points);
    let d = pivots.len();
    if d == 0 {
        let faces = vec![LowerFace { points: vec![0], dim: 0, normal: Some(vec![LogLinearForm::zero(); n]) }];
        return Ok(LowerHull { points, affine_dim: 0, faces });
    }
    let heights: Vec<&LogLinearForm> = points.iter().map(|p| &p.height).collect();
    let facets = lower_facets(&proj, &heights, d);

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    for (pts, w) in &facets {
        let mut normal = vec![LogLinearForm::zero(); n];
        for (j, &p) in pivots.iter().enumerate() {
            normal[p] = w[j].clone();
        }
        seen.insert(pts.clone());
        faces.push(LowerFace { points: pts.clone(), dim: d, normal: Some(normal) });
    }
    for (pts, _) in &facets {
        for sub in proper_faces(&proj, pts, d) {
            if seen.insert(sub.clone()) {
                let dim = affine_rank(&proj, &sub);
                faces.push(LowerFace { points: sub, dim, normal: None });
            }
        }
    }
    faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.points.cmp(&b.points)));
    Ok(LowerHull { points, affine_dim: d, faces })
}

/// Dimension of `Conv(bases)` and, per point, whether it lies on the
/// relative boundary of that polytope. A single point is its own boundary.
pub fn boundary_points(bases: &[Vec<i64>]) -> (usize, Vec<bool>) {
    let lifted: Vec<LiftedPoint> =
        bases.iter().map(|b| LiftedPoint { base: b.clone(), height: LogLinearForm::zero() }).collect();
    if lifted.is_empty() {
        return (0, Vec::new());
    }
    let (proj, pivots) = project(&lifted);
    let d = pivots.len();
    let mut on = vec![d == 0; bases.len()];
    if d > 0 {
        let all: Vec<usize> = (0..bases.len()).collect();
        for face in proper_faces(&proj, &all, d) {
            for i in face {
                on[i] = true;
            }
        }
    }
    (d, on)
}

/// Projects the bases injectively onto coordinates of their affine hull.
fn project(points: &[LiftedPoint]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let base0 = &points[0].base;
    let mut diffs: Matrix = points[1..]
        .iter()
        .map(|p| p.base.iter().zip(base0).map(|(a, b)| Rational::from_integer((a - b).into())).collect())
        .collect();
    let pivots = if diffs.is_empty() { Vec::new() } else { linalg::rref(&mut diffs) };
    let proj =
        points.iter().map(|p| pivots.iter().map(|&c| Rational::from_integer(p.base[c].into())).collect()).collect();
    (proj, pivots)
}

fn affine_rank(proj: &[Vec<Rational>], idx: &[usize]) -> usize {
    if idx.len() <= 1 {
        return 0;
    }
    let base = &proj[idx[0]];
    let m: Matrix = idx[1..].iter().map(|&i| proj[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    linalg::rank(&m)
}

/// Lower facets as (sorted point set, affine slope `w` in projected coordinates).
fn lower_facets(proj: &[Vec<Rational>], h: &[&LogLinearForm], d: usize) -> Vec<(Vec<usize>, Vec<LogLinearForm>)> {
    let t = proj.len();
    let mut found: Vec<(Vec<usize>, Vec<LogLinearForm>)> = Vec::new();
    for subset in Combinations::new(t, d + 1) {
        if found.iter().any(|(pts, _)| subset.iter().all(|s| pts.binary_search(s).is_ok())) {
            continue;
        }
        let m: Matrix = subset
            .iter()
            .map(|&s| {
                let mut row = Vec::with_capacity(d + 1);
                row.push(Rational::one());
                row.extend(proj[s].iter().cloned());
                row
            })
            .collect();
        let Some(inv) = linalg::inverse(&m) else {
            continue;
        };
        let hs: Vec<LogLinearForm> = subset.iter().map(|&s| h[s].clone()).collect();
        let coef = linalg::apply(&inv, &hs);
        let mut on = subset.clone();
        let mut lower = true;
        for k in 0..t {
            if subset.contains(&k) {
                continue;
            }
            let mut diff = h[k] - &coef[0];
            for (j, x) in proj[k].iter().enumerate() {
                diff.add_scaled(&-x, &coef[j + 1]);
            }
            match diff.sign() {
                Sign::Negative => {
                    lower = false;
                    break;
                }
                Sign::Zero => on.push(k),
                Sign::Positive => {}
            }
        }
        if lower {
            on.sort_unstable();
            found.push((on, coef[1..].to_vec()));
        }
    }
    found
}

/// Nonempty proper faces of the polytope `Conv(proj[pts])`, which is
/// `d`-dimensional in `R^d`.
fn proper_faces(proj: &[Vec<Rational>], pts: &[usize], d: usize) -> Vec<Vec<usize>> {
    let mut facets: Vec<Vec<usize>> = Vec::new();
    if d == 1 {
        let key = |i: &usize| proj[*i][0].clone();
        let lo = *pts.iter().min_by_key(|i| key(i)).expect("nonempty facet");
        let hi = *pts.iter().max_by_key(|i| key(i)).expect("nonempty facet");
        return vec![vec![lo], vec![hi]];
    }
    for sub in Combinations::new(pts.len(), d) {
        let idx: Vec<usize> = sub.iter().map(|&s| pts[s]).collect();
        if facets.iter().any(|f| idx.iter().all(|i| f.binary_search(i).is_ok())) {
            continue;
        }
        let base = &proj[idx[0]];
        let m: Matrix = idx[1..].iter().map(|&i| proj[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let ns = linalg::nullspace(&m, d);
        if ns.len() != 1 {
            continue;
        }
        let nu = &ns[0];
        let v0 = linalg::dot(nu, base);
        let (mut above, mut below) = (false, false);
        let mut on = Vec::new();
        for &k in pts {
            let v = linalg::dot(nu, &proj[k]) - &v0;
            if v.is_zero() {
                on.push(k);
            } else if v > Rational::zero() {
                above = true;
            } else {
                below = true;
            }
        }
        if above && below {
            continue;
        }
        on.sort_unstable();
        facets.push(on);
    }
    // every face is an intersection of facets
    let mut all: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = facets.clone();
    while let Some(face) = frontier.pop() {
        for f in &facets {
            let meet: Vec<usize> = face.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
            if !meet.is_empty() && all.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    all.into_iter().collect()
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(cur);
            }
        }
        Some(cur)
    }
}
