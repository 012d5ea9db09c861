use std::time::Instant;

use archtrop_core::hardness::{
    brute_force_mixed_vertex, has_balanced_partition, has_balanced_product_partition, log_partition_to_instance,
    partition_to_instance, verify_certificate,
};
use archtrop_core::LogLinearForm;
use proptest::prelude::*;

fn is_unit(x: &LogLinearForm) -> bool {
    x.eq_value(&LogLinearForm::from_integer(1)) || x.eq_value(&LogLinearForm::from_integer(-1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn reduction_matches_subset_sum(alpha in prop::collection::vec(1i64..=9, 1..=8)) {
        let inst = partition_to_instance(&alpha).unwrap();
        prop_assert!(inst.polyhedra[..alpha.len()].iter().all(|p| p.len() == 2 * inst.n));
        let found = brute_force_mixed_vertex(&inst).unwrap();
        prop_assert_eq!(found.is_some(), has_balanced_partition(&alpha));
        if let Some(v) = found {
            prop_assert!(v.iter().all(is_unit));
            prop_assert!(verify_certificate(&v, &inst));
            // the signs of v give the partition
            let s: i64 = alpha.iter().zip(&v).map(|(a, x)| if x.sign() == archtrop_core::Sign::Positive { *a } else { -a }).sum();
            prop_assert_eq!(s, 0);
        }
    }

    #[test]
    fn logarithmic_reduction_matches_product_partition(alpha in prop::collection::vec(1i64..=9, 1..=6)) {
        let inst = log_partition_to_instance(&alpha).unwrap();
        let found = brute_force_mixed_vertex(&inst).unwrap();
        prop_assert_eq!(found.is_some(), has_balanced_product_partition(&alpha));
        if let Some(v) = found {
            prop_assert!(verify_certificate(&v, &inst));
            // coordinates are ±ln α_i, or ±1 for α_i = 1, and ±1 last
            for (x, &a) in v.iter().zip(&alpha) {
                let l = if a == 1 { LogLinearForm::from_integer(1) } else { LogLinearForm::ln(&archtrop_core::Rational::from_integer(a.into())).unwrap() };
                prop_assert!(x.eq_value(&l) || x.eq_value(&-&l));
            }
            prop_assert!(is_unit(&v[alpha.len()]));
        }
    }
}

#[test]
fn certificate_check_scales_near_linearly() {
    let time = |d: usize| {
        let alpha: Vec<i64> = (0..d as i64).map(|i| 1 + i % 9).collect();
        let inst = partition_to_instance(&alpha).unwrap();
        let v: Vec<LogLinearForm> = (0..=d).map(|_| LogLinearForm::from_integer(1)).collect();
        let start = Instant::now();
        for _ in 0..3 {
            std::hint::black_box(verify_certificate(&v, &inst));
        }
        (start.elapsed().as_secs_f64(), inst.polyhedra.iter().map(|p| p.len()).sum::<usize>())
    };
    let (t1, m1) = time(8);
    let (t2, m2) = time(32);
    // constraint count grows quadratically in d; the check is linear in it
    // up to the final rank computation
    let exponent = (t2 / t1).ln() / (m2 as f64 / m1 as f64).ln();
    assert!(exponent < 2.0, "empirical exponent {exponent}");
}
