use pmb_core::algorithms::ucb_index;
use pmb_core::distributions::{PARAM_HIGH, PARAM_LOW, UNIFORM_MIN_WIDTH};
use pmb_core::rng::stream_from_seed;
use pmb_core::{
    gen_instance, p_mean, p_mean_regret_per_run, run_explore_then_ucb, ArmDistribution, BanditInstance, Estimator,
    FamilyKind, InstanceFamily, RegretParams,
};
use proptest::prelude::*;

const GRID: [f64; 8] = [-2.0, -1.0, -0.5, -1e-6, 0.0, 1e-6, 0.5, 1.0];

fn positive_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6f64..=1.0, 1..100)
}

proptest! {
    #[test]
    fn power_mean_non_decreasing_in_p(v in positive_vec()) {
        let ms: Vec<f64> = GRID.iter().map(|&p| p_mean(&v, p).unwrap()).collect();
        for w in ms.windows(2) {
            prop_assert!(w[1] >= w[0] * (1.0 - 1e-12), "{:?}", ms);
        }
    }

    #[test]
    fn power_mean_homogeneous(v in positive_vec(), c in 0.01f64..100.0, pick in 0usize..8) {
        let p = GRID[pick];
        let scaled: Vec<f64> = v.iter().map(|x| c * x).collect();
        let lhs = p_mean(&scaled, p).unwrap();
        let rhs = c * p_mean(&v, p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn power_mean_between_min_and_max(v in positive_vec(), p in -20.0f64..=1.0) {
        let m = p_mean(&v, p).unwrap();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(0.0, f64::max);
        prop_assert!(lo <= m && m <= hi);
    }

    #[test]
    fn classical_means(v in positive_vec()) {
        let n = v.len() as f64;
        let arith = v.iter().sum::<f64>() / n;
        let harm = n / v.iter().map(|x| 1.0 / x).sum::<f64>();
        prop_assert!((p_mean(&v, 1.0).unwrap() - arith).abs() <= 1e-15 * arith);
        prop_assert!((p_mean(&v, -1.0).unwrap() - harm).abs() <= 1e-12 * harm);
    }

    #[test]
    fn ucb_index_monotone(mean in 0.0f64..=1.0, n in 1u64..1_000_000, t in 2u64..10_000_000) {
        let a = ucb_index(mean, n, t as f64).unwrap();
        prop_assert!(ucb_index(mean, n + 1, t as f64).unwrap() < a);
        prop_assert!(ucb_index(mean + 1e-3, n, t as f64).unwrap() > a);
    }

    #[test]
    fn regret_bounded_by_optimum(seed in any::<u64>(), p in -5.0f64..=1.0) {
        let family = InstanceFamily::new(FamilyKind::Triangular, 4).unwrap();
        let inst = gen_instance(family, &mut stream_from_seed(seed)).unwrap();
        let trace = run_explore_then_ucb(&inst, 300, 40, &mut stream_from_seed(seed ^ 1)).unwrap();
        prop_assert_eq!(trace.recount(), trace.final_counts.clone());
        let r = p_mean_regret_per_run(&trace, &inst, RegretParams::new(p, Estimator::PerRunTrueMean).unwrap()).unwrap();
        prop_assert!(r >= 0.0 && r <= inst.mu_star());
    }
}

#[test]
fn regret_non_increasing_in_p_for_fixed_trace() {
    let inst = BanditInstance::bernoulli(&[0.2, 0.45, 0.7, 0.9]).unwrap();
    let trace = run_explore_then_ucb(&inst, 2000, 300, &mut stream_from_seed(12)).unwrap();
    let regrets: Vec<f64> = GRID
        .iter()
        .map(|&p| p_mean_regret_per_run(&trace, &inst, RegretParams::new(p, Estimator::PerRunTrueMean).unwrap()).unwrap())
        .collect();
    for w in regrets.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "{regrets:?}");
    }
}

#[test]
fn generated_parameters_stay_in_range() {
    for seed in 0..1000u64 {
        for kind in FamilyKind::ALL {
            let inst = gen_instance(InstanceFamily::new(kind, 6).unwrap(), &mut stream_from_seed(seed)).unwrap();
            for arm in inst.arms() {
                match *arm {
                    ArmDistribution::Bernoulli { rho } => assert!((PARAM_LOW..1.0).contains(&rho)),
                    ArmDistribution::Triangular { mode } => assert!((PARAM_LOW..PARAM_HIGH).contains(&mode)),
                    ArmDistribution::Beta { alpha, beta } => {
                        assert!((PARAM_LOW..PARAM_HIGH).contains(&alpha));
                        assert!((PARAM_LOW..PARAM_HIGH).contains(&beta));
                    }
                    ArmDistribution::UniformInterval { lower, upper } => {
                        assert!((PARAM_LOW..PARAM_HIGH).contains(&lower));
                        assert!(upper >= lower + UNIFORM_MIN_WIDTH && upper < 1.0);
                    }
                }
            }
        }
    }
}
