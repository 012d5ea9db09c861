use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// `x^{B_i} = γ_i` for `i = 1..n`, one monomial equation per row of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialSystem {
    pub exponents: Vec<Vec<i64>>,
    pub targets: Vec<Complex64>,
    /// For each row, the two term indices `(j1, j2)` it came from, if any.
    pub sources: Vec<Option<(usize, usize)>>,
}

impl BinomialSystem {
    pub fn new(exponents: Vec<Vec<i64>>, targets: Vec<Complex64>) -> Result<Self> {
        let n = exponents.len();
        if targets.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: targets.len() });
        }
        if let Some(r) = exponents.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if targets.iter().any(|g| *g == Complex64::new(0.0, 0.0) || !g.is_finite()) {
            return Err(Error::InvalidArgument("binomial targets must be finite and nonzero".into()));
        }
        Ok(BinomialSystem { exponents, targets, sources: vec![None; n] })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }
}

/// `U·B·V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative, each
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub v: Vec<Vec<i64>>,
}

type M = Vec<Vec<i128>>;

fn identity(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("Smith normal form"))
}

/// `row_dst -= q·row_src`.
fn row_axpy(m: &mut M, dst: usize, src: usize, q: i128) -> Result<()> {
    for j in 0..m[0].len() {
        m[dst][j] = checked(m[src][j].checked_mul(q).and_then(|p| m[dst][j].checked_sub(p)))?;
    }
    Ok(())
}

fn col_axpy(m: &mut M, dst: usize, src: usize, q: i128) -> Result<()> {
    for row in m.iter_mut() {
        row[dst] = checked(row[src].checked_mul(q).and_then(|p| row[dst].checked_sub(p)))?;
    }
    Ok(())
}

fn swap_cols(m: &mut M, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of a square integer matrix, exactly.
#[allow(clippy::while_let_loop)]
pub fn smith_normal_form(b: &[Vec<i64>]) -> Result<SmithForm> {
    let n = b.len();
    let mut a: M = b.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let Some((pi, pj)) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
            else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(p);
                row_axpy(&mut a, i, t, q)?;
                row_axpy(&mut u, i, t, q)?;
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                col_axpy(&mut a, j, t, q)?;
                col_axpy(&mut v, j, t, q)?;
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let narrow = |m: M| -> Result<Vec<Vec<i64>>> {
        m.into_iter()
            .map(|r| {
                r.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow("Smith normal form"))).collect()
            })
            .collect()
    };
    let d = (0..n)
        .map(|i| i64::try_from(a[i][i]).map_err(|_| Error::Overflow("Smith normal form")))
        .collect::<Result<_>>()?;
    Ok(SmithForm { u: narrow(u)?, d, v: narrow(v)? })
}

/// All `|det B|` solutions of `x^B = γ` in `(C*)^n`.
///
/// With `U·B·V = D`, the substitution `x = y^V` turns the system into
/// `y_l^{d_l} = Π_i γ_i^{U_li}`, solved by enumerating roots of unity. All
/// arithmetic on `γ` is done on `(log|γ|, arg γ)`, so large exponents do not
/// overflow.
pub fn solve_binomials(g: &BinomialSystem) -> Result<Vec<Vec<Complex64>>> {
    let n = g.dim();
    let snf = smith_normal_form(&g.exponents)?;
    if snf.d.contains(&0) {
        return Err(Error::DegenerateBinomialSystem);
    }
    let log_gamma: Vec<(f64, f64)> = g.targets.iter().map(|z| (libm::log(z.norm()), z.arg())).collect();
    // y_l = exp((ρ_l + iθ_l + 2πik)/d_l)
    let mut rho = vec![0.0; n];
    let mut theta = vec![0.0; n];
    for l in 0..n {
        for i in 0..n {
            let e = snf.u[l][i] as f64;
            rho[l] += e * log_gamma[i].0;
            theta[l] += e * log_gamma[i].1;
        }
        theta[l] = theta[l].rem_euclid(2.0 * PI);
    }
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let log_y: Vec<(f64, f64)> = (0..n)
            .map(|l| {
                let d = snf.d[l] as f64;
                (rho[l] / d, (theta[l] + 2.0 * PI * k[l] as f64) / d)
            })
            .collect();
        let x: Vec<Complex64> = (0..n)
            .map(|c| {
                let (mut re, mut im) = (0.0, 0.0);
                for (m, &(r, t)) in log_y.iter().enumerate() {
                    re += snf.v[c][m] as f64 * r;
                    im += snf.v[c][m] as f64 * t;
                }
                Complex64::from_polar(libm::exp(re), im.rem_euclid(2.0 * PI))
            })
            .collect();
        out.push(x);
        // odometer over k_l ∈ [0, d_l)
        let mut l = 0;
        loop {
            if l == n {
                return Ok(out);
            }
            k[l] += 1;
            if k[l] < snf.d[l] {
                break;
            }
            k[l] = 0;
            l += 1;
        }
    }
}

/// The log-norm vector `log|x|` shared by all solutions.
pub fn binomial_log_norms(g: &BinomialSystem) -> Result<Vec<f64>> {
    let n = g.dim();
    let snf = smith_normal_form(&g.exponents)?;
    if snf.d.contains(&0) {
        return Err(Error::DegenerateBinomialSystem);
    }
    let r: Vec<f64> = (0..n)
        .map(|l| (0..n).map(|i| snf.u[l][i] as f64 * libm::log(g.targets[i].norm())).sum::<f64>() / snf.d[l] as f64)
        .collect();
    Ok((0..n).map(|c| (0..n).map(|m| snf.v[c][m] as f64 * r[m]).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    }

    fn monomial(x: &[Complex64], e: &[i64]) -> Complex64 {
        x.iter().zip(e).map(|(z, &k)| z.powi(k as i32)).product()
    }

    #[test]
    fn smith_form_identity() {
        let b = vec![vec![3, -2], vec![-1, 2]];
        let s = smith_normal_form(&b).unwrap();
        assert_eq!(s.d, vec![1, 4]);
        let ubv = mul(&mul(&s.u, &b), &s.v);
        assert_eq!(ubv, vec![vec![1, 0], vec![0, 4]]);
        let c = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&c).unwrap();
        assert_eq!(s.d, vec![2, 6, 12]);
        assert_eq!(mul(&mul(&s.u, &c), &s.v), vec![vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 12]]);
    }

    #[test]
    fn two_variable_pair() {
        // x1^3 = -x2^2 and 0.1 x2^4 = -10 x1 x2^2 rewritten as x^B = γ
        let g = BinomialSystem::new(
            vec![vec![3, -2], vec![-1, 2]],
            vec![Complex64::new(-1.0, 0.0), Complex64::new(-100.0, 0.0)],
        )
        .unwrap();
        let roots = solve_binomials(&g).unwrap();
        assert_eq!(roots.len(), 4);
        let ln10 = libm::log(10.0);
        for r in &roots {
            for (row, target) in g.exponents.iter().zip(&g.targets) {
                assert!((monomial(r, row) - target).norm() < 1e-9 * target.norm());
            }
            assert!((libm::log(r[0].norm()) - ln10).abs() < 1e-12);
            assert!((libm::log(r[1].norm()) - 1.5 * ln10).abs() < 1e-12);
        }
        let ln = binomial_log_norms(&g).unwrap();
        assert!((ln[0] - ln10).abs() < 1e-12 && (ln[1] - 1.5 * ln10).abs() < 1e-12);
    }

    #[test]
    fn small_cases() {
        let g = BinomialSystem::new(vec![vec![2]], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let mut r: Vec<f64> = solve_binomials(&g).unwrap().iter().map(|x| x[0].re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 1.0).abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
        let h = BinomialSystem::new(
            vec![vec![1, 1], vec![1, -1]],
            vec![Complex64::new(1.0, 0.0), Complex64::new(4.0, 0.0)],
        )
        .unwrap();
        let roots = solve_binomials(&h).unwrap();
        assert_eq!(roots.len(), 2);
        for x in &roots {
            assert!((x[0].norm() - 2.0).abs() < 1e-14 && (x[1].norm() - 0.5).abs() < 1e-14);
            assert!(x[0].im.abs() < 1e-14 && x[1].im.abs() < 1e-14);
            assert!(x[0].re * x[1].re > 0.0);
        }
        let degenerate = BinomialSystem::new(vec![vec![1, 1], vec![2, 2]], vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert_eq!(solve_binomials(&degenerate).unwrap_err(), Error::DegenerateBinomialSystem);
    }
}
