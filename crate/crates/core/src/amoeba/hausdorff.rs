use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::{PointCloud, Window};
use crate::exact::Rational;
use crate::poly::LaurentPolynomial;
use crate::tropical::ArchTropComplex;
use crate::Result;

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
    dx * dx + dy * dy
}

/// Distance from `u` to `ArchTrop(f)` in floating point.
///
/// With `j` the dominant term at `u`, the complement cell of `u` is
/// `{value_i ≤ value_j ∀i}`; since `u` lies inside this convex set, its
/// distance to the boundary is the least distance to the hyperplanes
/// `value_i = value_j`. Infinite for monomials.
pub fn archtrop_distance_f64(exponents: &[Vec<f64>], logs: &[f64], u: &[f64]) -> f64 {
    let values: Vec<f64> =
        exponents.iter().zip(logs).map(|(a, l)| a.iter().zip(u).map(|(x, y)| x * y).sum::<f64>() + l).collect();
    let Some(j) = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])) else {
        return f64::INFINITY;
    };
    let mut best = f64::INFINITY;
    for i in (0..values.len()).filter(|&i| i != j) {
        let norm = libm::sqrt(exponents[i].iter().zip(&exponents[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>());
        best = best.min((values[j] - values[i]) / norm);
    }
    best
}

/// Exponents and `log|c_i|` of `f` as doubles, the input of
/// [`archtrop_distance_f64`].
pub fn float_terms(f: &LaurentPolynomial) -> (Vec<Vec<f64>>, Vec<f64>) {
    let exps = f.terms().iter().map(|t| t.monomial.0.iter().map(|&a| a as f64).collect()).collect();
    let logs = f.log_abs_coeffs().iter().map(|l| l.to_f64()).collect();
    (exps, logs)
}

/// `max_{u ∈ cloud} dist(u, ArchTrop(f))`, a lower estimate of the supremum
/// over the amoeba. Zero for an empty cloud.
pub fn directed_hausdorff_cloud_to_trop(cloud: &PointCloud, f: &LaurentPolynomial) -> f64 {
    let (exps, logs) = float_terms(f);
    cloud.points.iter().map(|p| archtrop_distance_f64(&exps, &logs, p)).fold(0.0, f64::max)
}

/// A piece of a one-dimensional cell of `ArchTrop(f)` clipped to a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: [f64; 2],
    pub end: [f64; 2],
    /// Index into [`ArchTropComplex::cells`].
    pub cell: usize,
}

fn to_f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The one-dimensional cells of a plane tropical curve, clipped to the
/// window. Cells missing the window are omitted.
pub fn archtrop_segments(complex: &ArchTropComplex, window: &Window) -> Vec<Segment> {
    let mut out = Vec::new();
    if complex.source().dim() != 2 {
        return out;
    }
    for (idx, cell) in complex.cells().iter().enumerate() {
        if cell.dim != 1 {
            continue;
        }
        let cons = cell.polyhedron.constraints();
        // the supporting line comes from any pair of opposite normals
        let Some(line) = cons.iter().find(|h| {
            cons.iter().any(|g| {
                let cross = &h.normal[0] * &g.normal[1] - &h.normal[1] * &g.normal[0];
                let dot = &h.normal[0] * &g.normal[0] + &h.normal[1] * &g.normal[1];
                cross.is_zero() && dot < Rational::zero()
            })
        }) else {
            continue;
        };
        let (ax, ay) = (to_f(&line.normal[0]), to_f(&line.normal[1]));
        let n2 = ax * ax + ay * ay;
        let beta = line.rhs.to_f64();
        let p0 = [ax * beta / n2, ay * beta / n2];
        let norm = libm::sqrt(n2);
        let d = [-ay / norm, ax / norm];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut clip = |g: [f64; 2], rhs: f64| {
            // g·(p0 + s d) ≤ rhs
            let gd = g[0] * d[0] + g[1] * d[1];
            let slack = rhs - (g[0] * p0[0] + g[1] * p0[1]);
            if gd.abs() < 1e-15 {
                if slack < 0.0 {
                    lo = f64::INFINITY;
                }
            } else if gd > 0.0 {
                hi = hi.min(slack / gd);
            } else {
                lo = lo.max(slack / gd);
            }
        };
        for h in cons {
            let cross = &h.normal[0] * &line.normal[1] - &h.normal[1] * &line.normal[0];
            if !cross.is_zero() {
                clip([to_f(&h.normal[0]), to_f(&h.normal[1])], h.rhs.to_f64());
            }
        }
        clip([1.0, 0.0], window.x1);
        clip([-1.0, 0.0], -window.x0);
        clip([0.0, 1.0], window.y1);
        clip([0.0, -1.0], -window.y0);
        if lo <= hi {
            let at = |s: f64| [p0[0] + s * d[0], p0[1] + s * d[1]];
            out.push(Segment { start: at(lo), end: at(hi), cell: idx });
        }
    }
    out
}

/// Points along every clipped segment of `ArchTrop(f)`, at most `spacing`
/// apart and including both ends.
pub fn archtrop_samples(complex: &ArchTropComplex, window: &Window, spacing: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for s in archtrop_segments(complex, window) {
        let len = libm::sqrt(dist2(s.start, s.end));
        let k = libm::ceil(len / spacing).max(1.0) as usize;
        for i in 0..=k {
            let t = i as f64 / k as f64;
            out.push([s.start[0] + t * (s.end[0] - s.start[0]), s.start[1] + t * (s.end[1] - s.start[1])]);
        }
    }
    out
}

/// Uniform bucket grid for nearest-neighbour queries on a point cloud.
#[derive(Clone, Debug)]
pub struct CloudIndex {
    origin: [f64; 2],
    cell: f64,
    nx: i64,
    ny: i64,
    buckets: Vec<Vec<[f64; 2]>>,
}

impl CloudIndex {
    pub fn new(points: &[[f64; 2]]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        if points.is_empty() {
            return CloudIndex { origin: [0.0, 0.0], cell: 1.0, nx: 0, ny: 0, buckets: Vec::new() };
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        // √N buckets per side keeps curve-like clouds at a few points per bucket
        let per_side = libm::sqrt(points.len() as f64).clamp(1.0, 1024.0);
        let cell = extent / per_side;
        let nx = ((x1 - x0) / cell) as i64 + 1;
        let ny = ((y1 - y0) / cell) as i64 + 1;
        let mut buckets = vec![Vec::new(); (nx * ny) as usize];
        let mut idx = CloudIndex { origin: [x0, y0], cell, nx, ny, buckets: Vec::new() };
        for &p in points {
            let (i, j) = idx.cell_of(p);
            buckets[(j * nx + i) as usize].push(p);
        }
        idx.buckets = buckets;
        idx
    }

    fn cell_of(&self, p: [f64; 2]) -> (i64, i64) {
        let i = libm::floor((p[0] - self.origin[0]) / self.cell) as i64;
        let j = libm::floor((p[1] - self.origin[1]) / self.cell) as i64;
        (i, j)
    }

    /// Distance to the nearest indexed point; infinite when empty.
    pub fn nearest_distance(&self, q: [f64; 2]) -> f64 {
        if self.buckets.is_empty() {
            return f64::INFINITY;
        }
        let (qi, qj) = self.cell_of(q);
        let ci = qi.clamp(0, self.nx - 1);
        let cj = qj.clamp(0, self.ny - 1);
        // rings are centred on the clamped cell; `skew` accounts for the offset
        let skew = (qi - ci).abs().max((qj - cj).abs());
        let mut best = f64::INFINITY;
        let max_r = self.nx.max(self.ny);
        for r in 0..=max_r {
            for j in (cj - r).max(0)..=(cj + r).min(self.ny - 1) {
                let edge_row = j == cj - r || j == cj + r;
                let step = if edge_row { 1 } else { (2 * r).max(1) };
                let mut i = ci - r;
                while i <= ci + r {
                    if i >= 0 && i < self.nx {
                        for p in &self.buckets[(j * self.nx + i) as usize] {
                            best = best.min(dist2(*p, q));
                        }
                    }
                    i += step;
                }
            }
            let reach = (r - skew).max(0) as f64 * self.cell;
            if best.is_finite() && libm::sqrt(best) <= reach {
                break;
            }
        }
        libm::sqrt(best)
    }
}

/// Estimate of `max_{v ∈ ArchTrop(f) ∩ window} dist(v, cloud)`, sampling the
/// variety every `spacing`. Infinite for an empty cloud.
pub fn directed_hausdorff_trop_to_cloud(
    f: &LaurentPolynomial,
    cloud: &PointCloud,
    window: &Window,
    spacing: f64,
) -> Result<f64> {
    let complex = ArchTropComplex::new(f)?;
    let index = CloudIndex::new(&cloud.points);
    Ok(archtrop_samples(&complex, window, spacing).into_iter().map(|v| index.nearest_distance(v)).fold(0.0, f64::max))
}

/// Distance from `w` to the nearest cloud point; infinite for an empty cloud.
pub fn cloud_distance(cloud: &PointCloud, w: [f64; 2]) -> f64 {
    let d = cloud.points.iter().map(|p| dist2(*p, w)).fold(f64::INFINITY, f64::min);
    libm::sqrt(d)
}
