mod common;

use archtrop_core::amoeba::{
    aberth_roots, archtrop_distance_f64, cloud_distance, directed_hausdorff_cloud_to_trop,
    directed_hausdorff_trop_to_cloud, float_terms, sample_amoeba_2d, univariate_log_norms, Window, ABERTH_MAX_SWEEPS,
    ABERTH_TOL,
};
use archtrop_core::tropical::distance_to_archtrop;
use archtrop_core::{LaurentPolynomial, Rational};
use num_complex::Complex64;
use proptest::prelude::*;

use common::{polynomial, rational_point, to_f64};

fn ln(x: f64) -> f64 {
    x.ln()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Every root log-norm lies within log(t − 1) of ArchTrop(f).
    #[test]
    fn univariate_points_near_archtrop(f in polynomial(1, 8, 12, 1000)) {
        let (e, l) = float_terms(&f);
        let bound = ln((f.len() - 1) as f64) + 0.02;
        for r in univariate_log_norms(&f).unwrap() {
            prop_assert!(archtrop_distance_f64(&e, &l, &[r]) <= bound);
        }
    }

    #[test]
    fn plane_points_near_archtrop(f in polynomial(2, 8, 4, 1000)) {
        let cloud = sample_amoeba_2d(&f, &Window::square(8.0), 50, 12, 9).unwrap();
        let bound = ln((f.len() - 1) as f64) + 0.02;
        prop_assert!(directed_hausdorff_cloud_to_trop(&cloud, &f) <= bound);
    }

    /// Aberth roots reproduce the polynomial they were computed from.
    #[test]
    fn aberth_roots_rebuild_coefficients(roots in prop::collection::vec((-3.0f64..3.0, 0.0f64..std::f64::consts::TAU), 1..10), seed in any::<u64>()) {
        let roots: Vec<Complex64> = roots.iter().map(|&(r, th)| Complex64::from_polar(r.exp(), th)).collect();
        // monic polynomial with these roots, ascending coefficients
        let mut a = vec![Complex64::new(1.0, 0.0)];
        for z in &roots {
            let mut next = vec![Complex64::new(0.0, 0.0); a.len() + 1];
            for (k, c) in a.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * z;
            }
            a = next;
        }
        let got = aberth_roots(&a, seed, ABERTH_TOL, ABERTH_MAX_SWEEPS).unwrap();
        prop_assert_eq!(got.len(), roots.len());
        for z in &got {
            let p = a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
            let s: f64 = a.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
            prop_assert!(p.norm() <= 1e-10 * s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// The amoeba distance estimate and the ArchTrop distance differ by at
    /// most the proven margins plus sampling slack.
    #[test]
    fn distance_sandwich(f in polynomial(2, 6, 2, 100), w in rational_point(2, 4, 3)) {
        let t = f.len() as f64;
        let trop = distance_to_archtrop(&f, &w).unwrap().value;
        let wf = to_f64(&w);
        let r = trop + ln(t - 1.0) + 1.0;
        let win = Window::new(wf[0] - r, wf[0] + r, wf[1] - r, wf[1] + r).unwrap();
        let cloud = sample_amoeba_2d(&f, &win, 120, 32, 3).unwrap();
        let slack = 0.05 + 2.0 * r / 119.0;
        let est = cloud_distance(&cloud, [wf[0], wf[1]]);
        let diff = est - trop;
        prop_assert!(diff >= -ln(t - 1.0) - slack, "{} - {}", est, trop);
        prop_assert!(diff <= (2.0 * t - 3.0) * ln(t - 1.0) + slack, "{} - {}", est, trop);
    }
}

/// Symmetric Hausdorff estimate between the rescaled amoeba of `f^{*s}` and
/// `ArchTrop(f)` shrinks as `s` grows.
#[test]
fn deformation_decay() {
    let f = LaurentPolynomial::parse("1 + x1^3 + x2^2 - 3*x1*x2", 2).unwrap();
    let win = Window::square(7.0);
    let mut last = f64::INFINITY;
    for s in [1i64, 2, 4, 8] {
        let g = f.power_deform(&Rational::from_integer(s.into())).unwrap();
        let cloud = sample_amoeba_2d(&g, &win.scale(s as f64), 150, 24, 1).unwrap().scaled(1.0 / s as f64);
        let h = directed_hausdorff_cloud_to_trop(&cloud, &f)
            .max(directed_hausdorff_trop_to_cloud(&f, &cloud, &win, 0.02).unwrap());
        assert!(h <= last, "s = {s}: {h} after {last}");
        assert!(h <= ln(3.0) / s as f64 + 0.1);
        last = h;
    }
}
