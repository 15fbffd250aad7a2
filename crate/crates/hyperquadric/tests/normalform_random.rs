//! Randomized normal-form properties at moderate bounds.

use hyperquadric::algebra::Delta;
use hyperquadric::normalform::{check, is_matrix_surface, kappa, normalize, InitialData};
use hyperquadric::sample;
use num_rational::BigRational;
use proptest::prelude::*;

fn delta() -> impl Strategy<Value = Delta> {
    prop_oneof![Just(Delta::Plus), Just(Delta::Minus)]
}

proptest! {
    // each case runs exact solves through weight 6
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn matrix_surfaces_normalize_to_matrix_normal_forms(seed in any::<u64>(), d in delta()) {
        let mut r = sample::rng(seed);
        let s = sample::matrix_surface(&mut r, d, 6, 3);
        prop_assert!(is_matrix_surface(&s).unwrap());
        let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 6).unwrap();
        let rep = check(&n.normal_form).unwrap();
        prop_assert!(rep.satisfied, "{:?}", rep.violations);
        prop_assert!(rep.matrix_flag);
        prop_assert_eq!(rep.kappa, BigRational::from_integer(0.into()));
    }

    #[test]
    fn normal_forms_are_fixed_by_the_identity_normalization(seed in any::<u64>(), d in delta()) {
        let mut r = sample::rng(seed);
        let s = sample::non_matrix_surface(&mut r, d, 6, 5);
        let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 6).unwrap();
        let again = normalize(&n.normal_form, &InitialData::identity(d), 6).unwrap();
        prop_assert_eq!(again.normal_form, n.normal_form);
    }

    #[test]
    fn kappa_does_not_depend_on_the_initial_data(seed in any::<u64>(), d in delta()) {
        let mut r = sample::rng(seed);
        let s = sample::non_matrix_surface(&mut r, d, 6, 5);
        let expected = BigRational::new(1.into(), 5.into());
        for _ in 0..2 {
            let n = normalize(&s, &sample::initial_data(&mut r, d, 2), 6).unwrap();
            prop_assert_eq!(kappa(&n.normal_form).unwrap(), expected.clone());
        }
    }
}
