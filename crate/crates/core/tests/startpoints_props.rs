#![allow(clippy::needless_range_loop)]

mod common;

use archtrop_core::polyhedra::Point;
use archtrop_core::startpoints::{
    binomial_log_norms, smith_normal_form, solve_binomials, start_system, tropical_start, BinomialSystem,
};
use archtrop_core::tropical::{cell_at, contains, CellKind};
use archtrop_core::{LogLinearForm, PolynomialSystem};
use num_complex::Complex64;
use proptest::prelude::*;

use common::{frac, polynomial, rational_point};

fn det(b: &[Vec<i64>]) -> i64 {
    match b.len() {
        1 => b[0][0],
        2 => b[0][0] * b[1][1] - b[0][1] * b[1][0],
        _ => (0..b.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = b[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * b[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn binomial_system() -> impl Strategy<Value = BinomialSystem> {
    (1usize..=3).prop_flat_map(|n| {
        let rows = prop::collection::vec(prop::collection::vec(-3i64..=3, n), n);
        let targets = prop::collection::vec((-3.0f64..3.0, 0.0f64..std::f64::consts::TAU), n);
        (rows, targets).prop_filter_map("singular", |(b, g)| {
            (det(&b) != 0).then(|| {
                BinomialSystem::new(b, g.into_iter().map(|(r, th)| Complex64::from_polar(r.exp(), th)).collect())
                    .unwrap()
            })
        })
    })
}

fn monomial(x: &[Complex64], a: &[i64]) -> Complex64 {
    x.iter().zip(a).map(|(z, &e)| z.powi(e as i32)).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_identity(g in binomial_system()) {
        let s = smith_normal_form(&g.exponents).unwrap();
        let n = g.dim();
        let mul = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
        };
        let d = mul(&mul(&s.u, &g.exponents), &s.v);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(d[i][j], if i == j { s.d[i] } else { 0 });
            }
        }
        prop_assert_eq!(s.d.iter().product::<i64>().abs(), det(&g.exponents).abs());
    }

    #[test]
    fn binomial_roots(g in binomial_system()) {
        let roots = solve_binomials(&g).unwrap();
        prop_assert_eq!(roots.len() as i64, det(&g.exponents).abs());
        let norms = binomial_log_norms(&g).unwrap();
        for x in &roots {
            for (row, gamma) in g.exponents.iter().zip(&g.targets) {
                prop_assert!((monomial(x, row) - gamma).norm() < 1e-8 * gamma.norm().max(1.0));
            }
            for (z, l) in x.iter().zip(&norms) {
                prop_assert!((z.norm().ln() - l).abs() < 1e-12);
            }
        }
    }
}

fn square_system() -> impl Strategy<Value = PolynomialSystem> {
    (polynomial(2, 5, 3, 1000), polynomial(2, 5, 3, 1000)).prop_map(|(a, b)| PolynomialSystem::new(vec![a, b]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn mixed_vertices_on_every_variety(f in square_system(), w in rational_point(2, 5, 2)) {
        let out = tropical_start(&f, &w).unwrap();
        prop_assert!(out.cell().closure.contains(&w));
        for c in out.candidates() {
            for p in f.polys() {
                prop_assert!(contains(p, &c.vertex.coordinates).unwrap());
            }
            for (set, p) in c.index_sets.sets.iter().zip(f.polys()) {
                prop_assert!(set.len() >= 2 && set.iter().all(|&j| j < p.len()));
            }
            if c.index_sets.binomial {
                let g = start_system(&f, &c.index_sets).unwrap();
                prop_assert_eq!(g.dim(), 2);
            }
        }
    }

    /// Interior points of a no-roots certificate lie on no variety.
    #[test]
    fn no_roots_interior_is_clear(
        f in square_system(),
        w in rational_point(2, 5, 2),
        offsets in prop::collection::vec((-40i64..=40, -40i64..=40), 40),
    ) {
        let out = tropical_start(&f, &w).unwrap();
        let Some(cert) = out.no_roots_certificate() else { return Ok(()) };
        prop_assert!(cert.contains(&w));
        if out.cell().kind != CellKind::Complement {
            return Ok(());
        }
        for (dx, dy) in offsets {
            let x: Point = vec![&w[0] + &LogLinearForm::from_rational(frac(dx, 10)), &w[1] + &LogLinearForm::from_rational(frac(dy, 10))];
            let interior = cert.constraints().iter().all(|h| h.slack(&x).sign() == archtrop_core::Sign::Positive);
            if interior {
                for p in f.polys() {
                    prop_assert!(!contains(p, &x).unwrap());
                }
            }
        }
        // the certificate is the intersection of the individual cells
        for p in f.polys() {
            prop_assert!(cell_at(p, &w).unwrap().closure.contains(&w));
        }
    }
}
