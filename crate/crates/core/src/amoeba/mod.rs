//! Numerical amoebas: root moduli of univariate slices, point clouds in the
//! plane, and one-sided Hausdorff estimates against `ArchTrop(f)`.
//!
//! Everything here is floating point; the exact machinery lives in
//! [`crate::tropical`].

mod aberth;
mod hausdorff;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::poly::{complex_powi, LaurentPolynomial};
use crate::{Error, Result};

pub use aberth::{aberth_roots, ABERTH_MAX_SWEEPS, ABERTH_TOL};
pub use hausdorff::{
    archtrop_distance_f64, archtrop_samples, archtrop_segments, cloud_distance, directed_hausdorff_cloud_to_trop,
    directed_hausdorff_trop_to_cloud, float_terms, CloudIndex, Segment,
};

pub const DEFAULT_GRID: usize = 400;
pub const DEFAULT_PHASES: usize = 64;

/// Axis-parallel box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let ok = [x0, x1, y0, y1].iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1;
        if !ok {
            return Err(Error::InvalidArgument("window needs finite bounds with x0 < x1 and y0 < y1".into()));
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn square(r: f64) -> Self {
        Window { x0: -r, x1: r, y0: -r, y1: r }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }

    pub fn scale(&self, k: f64) -> Self {
        Window { x0: self.x0 * k, x1: self.x1 * k, y0: self.y0 * k, y1: self.y1 * k }
    }

    pub fn diagonal(&self) -> f64 {
        libm::hypot(self.x1 - self.x0, self.y1 - self.y0)
    }

    fn range(&self, axis: usize) -> (f64, f64) {
        if axis == 0 {
            (self.x0, self.x1)
        } else {
            (self.y0, self.y1)
        }
    }
}

/// Sampled points of `Amoeba(f)` in the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<[f64; 2]>,
    pub window: Window,
    pub grid: usize,
    pub phases: usize,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The cloud scaled by `k`, with its window.
    pub fn scaled(&self, k: f64) -> PointCloud {
        PointCloud {
            points: self.points.iter().map(|p| [p[0] * k, p[1] * k]).collect(),
            window: self.window.scale(k),
            grid: self.grid,
            phases: self.phases,
        }
    }
}

/// Dense ascending coefficients of a univariate Laurent polynomial after
/// multiplying by the monomial that clears negative exponents.
fn dense_univariate(f: &LaurentPolynomial) -> Vec<Complex64> {
    let lo = f.terms().iter().map(|t| t.monomial.0[0]).min().unwrap_or(0);
    let hi = f.terms().iter().map(|t| t.monomial.0[0]).max().unwrap_or(0);
    let mut a = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
    for t in f.terms() {
        a[(t.monomial.0[0] - lo) as usize] += t.coeff.to_complex();
    }
    a
}

/// `log|z|` over the nonzero roots of a univariate polynomial, ascending.
pub fn univariate_log_norms(f: &LaurentPolynomial) -> Result<Vec<f64>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    if f.len() < 2 {
        return Err(Error::InvalidArgument("at least two terms are needed for nonzero roots".into()));
    }
    let roots = aberth_roots(&dense_univariate(f), 0, ABERTH_TOL, ABERTH_MAX_SWEEPS)?;
    let mut out: Vec<f64> = roots.iter().map(|z| libm::log(z.norm())).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Log-moduli of the roots in `x_{1−axis}` of `f` with `x_axis = e^{u + iθ}`.
/// Coefficients that cancel to rounding level are dropped; an identically
/// vanishing slice yields nothing.
pub fn slice_log_norms(f: &LaurentPolynomial, axis: usize, u: f64, theta: f64, seed: u64) -> Result<Vec<f64>> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim() });
    }
    let other = 1 - axis;
    let x = Complex64::from_polar(libm::exp(u), theta);
    let lo = f.terms().iter().map(|t| t.monomial.0[other]).min().unwrap_or(0);
    let hi = f.terms().iter().map(|t| t.monomial.0[other]).max().unwrap_or(0);
    let len = (hi - lo + 1) as usize;
    let mut a = vec![Complex64::new(0.0, 0.0); len];
    let mut scale = vec![0.0; len];
    for t in f.terms() {
        let k = (t.monomial.0[other] - lo) as usize;
        let v = t.coeff.to_complex() * complex_powi(x, t.monomial.0[axis]);
        a[k] += v;
        scale[k] += v.norm();
    }
    for (c, s) in a.iter_mut().zip(&scale) {
        if c.norm() <= 1e-13 * s {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    let Some(first) = a.iter().position(|c| c.norm() > 0.0) else {
        return Ok(Vec::new());
    };
    let last = a.iter().rposition(|c| c.norm() > 0.0).expect("a nonzero entry exists");
    let roots = aberth_roots(&a[first..=last], seed, ABERTH_TOL, ABERTH_MAX_SWEEPS)?;
    Ok(roots.iter().map(|z| libm::log(z.norm())).collect())
}

/// Seed for slice `index` along `axis`, so that slices can be computed in
/// any order.
pub fn slice_seed(seed: u64, axis: usize, index: usize) -> u64 {
    seed ^ ((axis as u64) << 63) ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Grid abscissa `index` of `grid` along `axis`.
pub fn slice_coordinate(window: &Window, axis: usize, index: usize, grid: usize) -> f64 {
    let (a, b) = window.range(axis);
    if grid <= 1 {
        0.5 * (a + b)
    } else {
        a + (b - a) * index as f64 / (grid - 1) as f64
    }
}

/// Amoeba points from one slice (all phases), already clipped to the window.
pub fn sample_slice(
    f: &LaurentPolynomial,
    window: &Window,
    axis: usize,
    index: usize,
    grid: usize,
    phases: usize,
    seed: u64,
) -> Result<Vec<[f64; 2]>> {
    let u = slice_coordinate(window, axis, index, grid);
    let s = slice_seed(seed, axis, index);
    let mut out = Vec::new();
    for k in 0..phases {
        let theta = 2.0 * PI * k as f64 / phases as f64;
        for r in slice_log_norms(f, axis, u, theta, s.wrapping_add(k as u64))? {
            let p = if axis == 0 { [u, r] } else { [r, u] };
            if window.contains(p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Samples `Amoeba(f)` for `n = 2`: for `grid` values of `w_1` and `phases`
/// angles `θ`, the roots in `x_2` of `f(e^{w_1 + iθ}, x_2)`; then the same with
/// the axes swapped. Slices are merged in index order.
pub fn sample_amoeba_2d(
    f: &LaurentPolynomial,
    window: &Window,
    grid: usize,
    phases: usize,
    seed: u64,
) -> Result<PointCloud> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim() });
    }
    if f.len() < 2 {
        return Err(Error::InvalidArgument("a monomial has an empty amoeba".into()));
    }
    let mut points = Vec::new();
    for axis in 0..2 {
        for i in 0..grid {
            points.extend(sample_slice(f, window, axis, i, grid, phases, seed)?);
        }
    }
    Ok(PointCloud { points, window: *window, grid, phases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_examples() {
        let ln = |s: &str| univariate_log_norms(&LaurentPolynomial::parse(s, 1).unwrap()).unwrap();
        assert!(ln("1 - x^2").iter().all(|v| v.abs() < 1e-12));
        let v = ln("6 - 5*x + x^2");
        assert!((v[0] - libm::log(2.0)).abs() < 1e-12 && (v[1] - libm::log(3.0)).abs() < 1e-12);
        assert!(ln("1 + x + x^2").iter().all(|v| v.abs() < 1e-12));
        let v = ln("x^-2 - 4");
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|r| (r + libm::log(2.0)).abs() < 1e-12));
        assert!(univariate_log_norms(&LaurentPolynomial::parse("3*x", 1).unwrap()).is_err());
    }

    #[test]
    fn binomial_cloud_on_line() {
        let f = LaurentPolynomial::parse("1 - x1*x2", 2).unwrap();
        let c = sample_amoeba_2d(&f, &Window::square(5.0), 40, 8, 1).unwrap();
        assert!(!c.is_empty());
        assert!(c.points.iter().all(|p| (p[0] + p[1]).abs() < 1e-9));
        let m = LaurentPolynomial::parse("x1", 2).unwrap();
        assert!(sample_amoeba_2d(&m, &Window::square(5.0), 4, 4, 1).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let f = LaurentPolynomial::parse("1 + x1^3 + x2^2 - 3*x1*x2", 2).unwrap();
        let a = sample_amoeba_2d(&f, &Window::square(7.0), 30, 8, 5).unwrap();
        let b = sample_amoeba_2d(&f, &Window::square(7.0), 30, 8, 5).unwrap();
        assert_eq!(a, b);
    }
}
