use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub const ABERTH_TOL: f64 = 1e-12;
pub const ABERTH_MAX_SWEEPS: usize = 200;

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `p(z)`, `p'(z)` and `Σ|a_k||z|^k` by Horner's rule.
fn horner(a: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut dp, mut s) = (zero, zero, 0.0);
    let r = z.norm();
    for c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        s = s * r + c.norm();
    }
    (p, dp, s)
}

/// `a / b` by Smith's method, which avoids forming `|b|²` and so stays finite
/// for moduli far beyond `1e154`.
fn div(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

/// Initial guesses spread over circles whose radii come from the upper
/// convex hull of `(k, log|a_k|)`, each circle carrying as many points as
/// the length of its hull segment.
fn initial_guesses(a: &[Complex64], rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let pts: Vec<(f64, f64)> =
        a.iter().enumerate().filter(|(_, c)| c.norm() > 0.0).map(|(k, c)| (k as f64, libm::log(c.norm()))).collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop q when it lies on or below the chord o → p
            if (q.0 - o.0) * (p.1 - o.1) - (q.1 - o.1) * (p.0 - o.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(a.len() - 1);
    for seg in hull.windows(2) {
        let m = (seg[1].0 - seg[0].0) as usize;
        let radius = libm::exp(-(seg[1].1 - seg[0].1) / (seg[1].0 - seg[0].0));
        let offset = 2.0 * PI * uniform(rng);
        for k in 0..m {
            let jitter = 1.0 + 0.1 * (uniform(rng) - 0.5);
            let theta = offset + 2.0 * PI * (k as f64 + 0.3 * uniform(rng)) / m as f64;
            z.push(Complex64::from_polar(radius * jitter, theta));
        }
    }
    z
}

/// All roots of `Σ a_k z^k` (ascending coefficients, `a_0` and the leading
/// coefficient nonzero) by the Aberth–Ehrlich iteration.
///
/// Converged when every root has relative residual
/// `|p(z)| / Σ|a_k||z|^k < tol`.
pub fn aberth_roots(a: &[Complex64], seed: u64, tol: f64, max_sweeps: usize) -> Result<Vec<Complex64>> {
    let d = a.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    if a[0].norm() == 0.0 || a[d].norm() == 0.0 || a.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("polynomial needs finite coefficients and nonzero extreme terms".into()));
    }
    if d == 1 {
        return Ok(alloc::vec![-a[0] / a[1]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = initial_guesses(a, &mut rng);
    let mut worst = f64::INFINITY;
    for _ in 0..max_sweeps {
        worst = 0.0;
        for k in 0..d {
            let (p, dp, s) = horner(a, z[k]);
            let rel = if s > 0.0 { p.norm() / s } else { 0.0 };
            worst = worst.max(rel);
            if rel < tol * 0.01 || p.norm() == 0.0 {
                continue;
            }
            let ratio = div(p, dp);
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    sum += div(Complex64::new(1.0, 0.0), z[k] - zj);
                }
            }
            let step = div(ratio, Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
            }
        }
        if worst < tol {
            let done = z.iter().all(|&zk| {
                let (p, _, s) = horner(a, zk);
                s == 0.0 || p.norm() / s < tol
            });
            if done {
                return Ok(z);
            }
        }
    }
    Err(Error::NoConvergence { sweeps: max_sweeps, residual: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn moduli(a: &[Complex64]) -> Vec<f64> {
        let mut m: Vec<f64> =
            aberth_roots(a, 7, ABERTH_TOL, ABERTH_MAX_SWEEPS).unwrap().iter().map(|z| z.norm()).collect();
        m.sort_by(f64::total_cmp);
        m
    }

    #[test]
    fn quadratics() {
        let m = moduli(&[c(6.0), c(-5.0), c(1.0)]);
        assert!((m[0] - 2.0).abs() < 1e-12 && (m[1] - 3.0).abs() < 1e-12);
        let m = moduli(&[c(1.0), c(1.0), c(1.0)]);
        assert!(m.iter().all(|r| (r - 1.0).abs() < 1e-12));
    }

    #[test]
    fn spread_magnitudes() {
        // roots 1e-3, 1, 1e4
        let (r1, r2, r3) = (1e-3, 1.0, 1e4);
        let a = [c(-r1 * r2 * r3), c(r1 * r2 + r1 * r3 + r2 * r3), c(-(r1 + r2 + r3)), c(1.0)];
        let m = moduli(&a);
        for (got, want) in m.iter().zip([r1, r2, r3]) {
            assert!((got - want).abs() < 1e-9 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn huge_root_moduli() {
        // |p|² at the largest root overflows a double
        let e = libm::exp;
        let a = [c(e(15.7)), c(e(-14.1)), c(0.0), c(e(29.3)), c(e(44.7)), c(e(-43.8))];
        let m = moduli(&a);
        assert!((libm::log(m[4]) - 88.5).abs() < 1e-9, "{m:?}");
    }

    #[test]
    fn smith_division() {
        let (a, b) = (Complex64::new(3.0, -2.0), Complex64::new(-0.5, 4.0));
        assert!((div(a, b) - a / b).norm() < 1e-15);
        let big = Complex64::new(1e200, -3e200);
        assert!((div(big, big) - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let mut a = alloc::vec![c(0.0); 25];
        a[0] = c(-1.0);
        a[24] = c(1.0);
        let m = moduli(&a);
        assert_eq!(m.len(), 24);
        assert!(m.iter().all(|r| (r - 1.0).abs() < 1e-12));
        assert!(aberth_roots(&[c(0.0), c(1.0)], 0, 1e-12, 10).is_err());
    }
}
