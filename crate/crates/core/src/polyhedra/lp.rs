//! Exact two-phase tableau simplex with Bland's rule.
//!
//! Constraint matrices and costs are rational, so pricing is exact rational
//! arithmetic; only the basic solution is log-linear, and ratio tests go
//! through the sign oracle.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::linalg::Matrix;
use super::{HPolyhedron, Point};
use crate::exact::{rational_size, LogLinearForm, Rational, Sign};

/// `M x = b, x ≥ 0` with the cost vector of a minimization.
///
/// Built from `A w ≤ b` by splitting `w = x⁺ − x⁻` and adding one slack per
/// row, so the columns are `[A, −A, I]` and `b` is unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub matrix: Matrix,
    pub rhs: Vec<LogLinearForm>,
    pub objective: Vec<Rational>,
    /// Number of original (free) variables.
    pub dim: usize,
}

impl StandardForm {
    pub fn columns(&self) -> usize {
        2 * self.dim + self.rhs.len()
    }

    /// Bit size of matrix, right-hand side and objective.
    pub fn size(&self) -> u64 {
        let m: u64 = self.matrix.iter().flatten().map(rational_size).sum();
        let b: u64 = self.rhs.iter().map(LogLinearForm::size).sum();
        let c: u64 = self.objective.iter().map(rational_size).sum();
        m + b + c
    }
}

pub fn to_standard_form(p: &HPolyhedron) -> StandardForm {
    let n = p.dim();
    let m = p.len();
    let matrix = p
        .constraints()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut row = Vec::with_capacity(2 * n + m);
            row.extend(h.normal.iter().cloned());
            row.extend(h.normal.iter().map(|a| -a.clone()));
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    StandardForm {
        matrix,
        rhs: p.constraints().iter().map(|h| h.rhs.clone()).collect(),
        objective: vec![Rational::zero(); 2 * n + m],
        dim: n,
    }
}

/// Result of maximizing a rational objective over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Point, value: LogLinearForm },
}

/// A feasible point of `P`, or `None` when `P` is empty.
pub fn lp_feasible(p: &HPolyhedron) -> Option<Point> {
    let sf = to_standard_form(p);
    let tab = phase_one(&sf)?;
    Some(tab.point(sf.dim))
}

/// Maximizes `c·w` over `P`.
pub fn lp_optimize(p: &HPolyhedron, c: &[Rational]) -> LpOutcome {
    assert_eq!(c.len(), p.dim(), "objective length");
    let sf = to_standard_form(p);
    let Some(mut tab) = phase_one(&sf) else {
        return LpOutcome::Infeasible;
    };
    optimize(&mut tab, c, sf.dim)
}

/// Maximizes `c·w` over `{A w ≤ b}` when every `b_i ≥ 0`, so that `w = 0`
/// with all slacks basic is already feasible.
pub(crate) fn maximize_from_origin(rows: &[&super::HalfSpace], n: usize, c: &[Rational]) -> LpOutcome {
    let m = rows.len();
    let a = rows
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut row = Vec::with_capacity(2 * n + m);
            row.extend(h.normal.iter().cloned());
            row.extend(h.normal.iter().map(|x| -x.clone()));
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let mut tab = Tableau {
        a,
        b: rows.iter().map(|h| h.rhs.clone()).collect(),
        basis: (2 * n..2 * n + m).collect(),
        cols: 2 * n + m,
    };
    optimize(&mut tab, c, n)
}

fn optimize(tab: &mut Tableau, c: &[Rational], n: usize) -> LpOutcome {
    let mut cost = vec![Rational::zero(); tab.cols];
    for (j, cj) in c.iter().enumerate() {
        cost[j] = -cj.clone();
        cost[n + j] = cj.clone();
    }
    if !tab.minimize(&cost) {
        return LpOutcome::Unbounded;
    }
    let point = tab.point(n);
    let value = LogLinearForm::dot(c, &point);
    LpOutcome::Optimal { point, value }
}

struct Tableau {
    a: Matrix,
    b: Vec<LogLinearForm>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, reduced: Option<&mut Vec<Rational>>) {
        let inv = self.a[r][c].recip();
        if !inv.is_one() {
            for v in self.a[r].iter_mut() {
                *v *= &inv;
            }
            self.b[r] = self.b[r].scale(&inv);
        }
        let (pivot_row, pivot_rhs) = (self.a[r].clone(), self.b[r].clone());
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, y) in self.a[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.b[i].add_scaled(&-f, &pivot_rhs);
        }
        if let Some(d) = reduced {
            let f = d[c].clone();
            if !f.is_zero() {
                for (x, y) in d.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `cost` for the current basis over the first `cols`
    /// columns.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost[..self.cols].to_vec();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            for (x, y) in d.iter_mut().zip(&self.a[i]) {
                if !y.is_zero() {
                    *x -= cb * y;
                }
            }
        }
        d
    }

    /// Bland-rule simplex; returns false when unbounded.
    fn minimize(&mut self, cost: &[Rational]) -> bool {
        let mut d = self.reduced_costs(cost);
        loop {
            let Some(c) = (0..self.cols).find(|&j| d[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, LogLinearForm)> = None;
            for i in 0..self.a.len() {
                let aic = &self.a[i][c];
                if !aic.is_positive() {
                    continue;
                }
                let ratio = self.b[i].scale(&aic.recip());
                let better = match &best {
                    None => true,
                    Some((k, r)) => match (&ratio - r).sign() {
                        Sign::Negative => true,
                        Sign::Zero => self.basis[i] < self.basis[*k],
                        Sign::Positive => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, Some(&mut d));
        }
    }

    fn point(&self, n: usize) -> Point {
        let mut x = vec![LogLinearForm::zero(); 2 * n];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < 2 * n {
                x[bi] = self.b[i].clone();
            }
        }
        (0..n).map(|j| &x[j] - &x[n + j]).collect()
    }
}

/// Phase 1: returns a feasible tableau over the structural and slack columns,
/// or `None` when infeasible.
fn phase_one(sf: &StandardForm) -> Option<Tableau> {
    let m = sf.rhs.len();
    let real = sf.columns();
    let negated: Vec<bool> = sf.rhs.iter().map(|b| b.sign() == Sign::Negative).collect();
    let n_art = negated.iter().filter(|&&x| x).count();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = real;
    for i in 0..m {
        let mut row = sf.matrix[i].clone();
        row.resize(real + n_art, Rational::zero());
        if negated[i] {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
            b.push(-&sf.rhs[i]);
        } else {
            basis.push(2 * sf.dim + i);
            b.push(sf.rhs[i].clone());
        }
        a.push(row);
    }
    let mut tab = Tableau { a, b, basis, cols: real + n_art };
    if n_art == 0 {
        return Some(tab);
    }
    let mut cost = vec![Rational::zero(); real + n_art];
    for c in cost.iter_mut().skip(real) {
        *c = Rational::one();
    }
    let bounded = tab.minimize(&cost);
    debug_assert!(bounded, "phase 1 objective is bounded below");
    let mut infeasibility = LogLinearForm::zero();
    for (i, &bi) in tab.basis.iter().enumerate() {
        if bi >= real {
            infeasibility += &tab.b[i];
        }
    }
    if infeasibility.sign() != Sign::Zero {
        return None;
    }
    // drive remaining (zero-level) artificials out of the basis
    let mut i = 0;
    while i < tab.a.len() {
        if tab.basis[i] < real {
            i += 1;
            continue;
        }
        match (0..real).find(|&j| !tab.a[i][j].is_zero()) {
            Some(j) => {
                tab.pivot(i, j, None);
                i += 1;
            }
            None => {
                tab.a.remove(i);
                tab.b.remove(i);
                tab.basis.remove(i);
            }
        }
    }
    for row in tab.a.iter_mut() {
        row.truncate(real);
    }
    tab.cols = real;
    Some(tab)
}
