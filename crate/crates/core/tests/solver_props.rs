mod common;

use common::{random_cloud_problem, random_scalarized, random_subset, rng, Literal};
use proptest::prelude::*;
use psiset_core::solver::{is_subset, SetValuedProblem};
use psiset_core::{construct_solution, hausdorff_distance, is_infimizer, is_solution, min_set, Mode};

const EPS: [f64; 4] = [0.0, 0.1, 0.25, 0.5];

fn problem(seed: u64, cloud: bool) -> SetValuedProblem {
    let mut r = rng(seed);
    if cloud {
        random_cloud_problem(&mut r)
    } else {
        random_scalarized(&mut r)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn min_sets_are_nested(seed in any::<u64>(), cloud in any::<bool>()) {
        let prob = problem(seed, cloud);
        for mode in [Mode::Strict, Mode::Plus] {
            for w in EPS.windows(2) {
                let a = min_set(&prob, w[0], mode).unwrap();
                let b = min_set(&prob, w[1], mode).unwrap();
                prop_assert!(is_subset(&a.indices, &b.indices));
            }
        }
        for eps in EPS {
            let s = min_set(&prob, eps, Mode::Strict).unwrap();
            let p = min_set(&prob, eps, Mode::Plus).unwrap();
            prop_assert!(is_subset(&s.indices, &p.indices));
        }
    }

    #[test]
    fn dom_is_an_infimizer(seed in any::<u64>(), cloud in any::<bool>()) {
        let prob = problem(seed, cloud);
        let dom = prob.dom();
        prop_assume!(!dom.is_empty());
        for eps in EPS {
            prop_assert!(is_infimizer(&prob, &dom, eps).unwrap());
        }
    }

    #[test]
    fn constructed_solutions_are_solutions(seed in any::<u64>(), cloud in any::<bool>()) {
        let prob = problem(seed, cloud);
        prop_assume!(!prob.dom().is_empty());
        for eps in [0.1, 0.25, 0.5] {
            let m = construct_solution(&prob, eps).unwrap();
            prop_assert!(is_solution(&prob, &m, eps, Mode::Strict).unwrap());
            prop_assert!(is_subset(&m, &min_set(&prob, eps, Mode::Strict).unwrap().indices));
        }
    }

    #[test]
    fn supersets_of_infimizers_are_infimizers(seed in any::<u64>(), cloud in any::<bool>()) {
        let prob = problem(seed, cloud);
        let mut r = rng(seed ^ 0x5eed);
        let m = random_subset(&mut r, prob.len());
        let mut bigger = m.clone();
        bigger.extend(random_subset(&mut r, prob.len()));
        bigger.sort_unstable();
        bigger.dedup();
        for eps in EPS {
            if is_infimizer(&prob, &m, eps).unwrap() {
                prop_assert!(is_infimizer(&prob, &bigger, eps).unwrap());
            }
        }
    }

    #[test]
    fn hausdorff_is_a_metric(seed in any::<u64>()) {
        let prob = problem(seed, true);
        let mut r = rng(seed ^ 0xd15);
        let a = random_subset(&mut r, prob.len());
        let b = random_subset(&mut r, prob.len());
        let c = random_subset(&mut r, prob.len());
        let d = |x: &[usize], y: &[usize]| hausdorff_distance(&prob, x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0.0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
    }

    #[test]
    fn solver_matches_literal_definitions(seed in any::<u64>(), cloud in any::<bool>()) {
        let prob = problem(seed, cloud);
        let lit = Literal::new(&prob);
        let mut r = rng(seed ^ 0xc0ffee);
        let m = random_subset(&mut r, prob.len());
        for eps in EPS {
            for mode in [Mode::Strict, Mode::Plus] {
                prop_assert_eq!(&min_set(&prob, eps, mode).unwrap().indices, &lit.min_set(eps, mode));
                prop_assert_eq!(is_solution(&prob, &m, eps, mode).unwrap(), lit.is_solution(&m, eps, mode));
            }
            prop_assert_eq!(is_infimizer(&prob, &m, eps).unwrap(), lit.is_infimizer(&m, eps));
        }
    }
}

#[test]
fn negative_and_nan_eps_are_rejected() {
    let prob = problem(7, true);
    assert!(min_set(&prob, -0.1, Mode::Strict).is_err());
    assert!(min_set(&prob, f64::NAN, Mode::Plus).is_err());
    assert!(construct_solution(&prob, 0.0).is_err());
    assert!(is_infimizer(&prob, &[], 0.1).is_err());
}
