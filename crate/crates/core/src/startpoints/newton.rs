use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::poly::{LaurentPolynomial, PolynomialSystem};
use crate::{Error, Result};

pub const DEFAULT_NEWTON_TOL: f64 = 1e-12;
pub const DEFAULT_NEWTON_MAXIT: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub enum NewtonOutcome {
    Converged { root: Vec<Complex64>, residual: f64, iterations: usize },
    Diverged { last: Vec<Complex64>, residual: f64, reason: String },
}

impl NewtonOutcome {
    pub fn root(&self) -> Option<&[Complex64]> {
        match self {
            NewtonOutcome::Converged { root, .. } => Some(root),
            NewtonOutcome::Diverged { .. } => None,
        }
    }
}

/// Scaled residual `max_i |f_i(z)| / max(1, Σ_j |c_ij z^{a_ij}|)`.
///
/// For moderate `z` this is the plain sup norm; for large `z` it measures
/// the residual against the rounding error of evaluating `f_i` at all.
pub fn scaled_residual(f: &PolynomialSystem, z: &[Complex64]) -> Result<f64> {
    let mut r: f64 = 0.0;
    for p in f.polys() {
        let (v, s) = p.evaluate_with_scale(z)?;
        r = r.max(v.norm() / s.max(1.0));
    }
    Ok(r)
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))?;
        if a[p][c].norm() <= 1e-300_f64.max(scale * 1e-15) {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let q = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= q * t;
            }
            let t = b[c];
            b[r] -= q * t;
        }
    }
    let mut x = alloc::vec![Complex64::new(0.0, 0.0); n];
    for c in (0..n).rev() {
        let mut s = b[c];
        for k in c + 1..n {
            s -= a[c][k] * x[k];
        }
        x[c] = s / a[c][c];
    }
    Some(x)
}

/// Newton's method `z ← z − Jac(F)(z)⁻¹ F(z)` on a square system.
///
/// Converges once [`scaled_residual`] drops below `tol` within `maxit`
/// steps. A singular Jacobian or a non-finite iterate ends the run.
pub fn newton_refine(f: &PolynomialSystem, z0: &[Complex64], tol: f64, maxit: usize) -> Result<NewtonOutcome> {
    if !f.is_square() {
        return Err(Error::NotSquare);
    }
    let n = f.dim();
    if z0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: z0.len() });
    }
    let jac: Vec<Vec<LaurentPolynomial>> = f
        .polys()
        .iter()
        .map(|p| (0..n).map(|j| p.partial_derivative(j)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut z = z0.to_vec();
    let mut residual = scaled_residual(f, &z)?;
    for it in 0..=maxit {
        if residual < tol {
            return Ok(NewtonOutcome::Converged { root: z, residual, iterations: it });
        }
        if it == maxit {
            break;
        }
        let fz = f.evaluate(&z)?;
        let jz: Vec<Vec<Complex64>> =
            jac.iter().map(|row| row.iter().map(|d| d.evaluate(&z)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let Some(step) = solve_complex(jz, fz) else {
            return Ok(NewtonOutcome::Diverged { last: z, residual, reason: "singular Jacobian".into() });
        };
        for (zi, s) in z.iter_mut().zip(&step) {
            *zi -= s;
        }
        if z.iter().any(|c| !c.is_finite() || *c == Complex64::new(0.0, 0.0)) {
            return Ok(NewtonOutcome::Diverged { last: z, residual, reason: "iterate left the torus".into() });
        }
        residual = scaled_residual(f, &z)?;
    }
    Ok(NewtonOutcome::Diverged { last: z, residual, reason: alloc::format!("no convergence in {maxit} steps") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn scalar() {
        let f = PolynomialSystem::new(vec![LaurentPolynomial::parse("x^2 - 1", 1).unwrap()]).unwrap();
        let out = newton_refine(&f, &[Complex64::new(2.0, 0.0)], DEFAULT_NEWTON_TOL, DEFAULT_NEWTON_MAXIT).unwrap();
        let r = out.root().unwrap();
        assert!((r[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn singular_start() {
        let f = PolynomialSystem::new(vec![LaurentPolynomial::parse("x^2 + 1", 1).unwrap()]).unwrap();
        let out = newton_refine(&f, &[Complex64::new(1e-320, 0.0)], 1e-12, 5).unwrap();
        assert!(matches!(out, NewtonOutcome::Diverged { .. }));
    }
}
