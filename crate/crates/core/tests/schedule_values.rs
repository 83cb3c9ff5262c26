use pmb_core::schedule::{check_min_reward, exploration_period, remark_threshold, ScheduleBranch, ScheduleInput};
use pmb_core::BanditInstance;
use proptest::prelude::*;

fn raw(p: f64, t: u64, k: usize) -> f64 {
    exploration_period(ScheduleInput::new(p, t, k).unwrap()).raw
}

#[test]
fn positive_branch_does_not_meet_nash_branch_at_zero() {
    // The p > 0 row tends to 16 sqrt(T ln T / ln k); the Nash row carries an extra k.
    for k in [2usize, 10, 50] {
        let gap = raw(0.0, 20_000, k) / raw(1e-6, 20_000, k);
        assert!((gap - (k as f64).sqrt()).abs() < 1e-3 * gap, "k={k}: {gap}");
        assert_eq!(ScheduleBranch::of(1e-6), ScheduleBranch::Positive);
        assert_eq!(ScheduleBranch::of(0.0), ScheduleBranch::Nash);
    }
}

#[test]
fn negative_branch_is_continuous_away_from_zero() {
    let a = raw(-1.0 - 1e-9, 50_000, 20);
    let b = raw(-1.0, 50_000, 20);
    assert!((a - b).abs() < 1e-6 * b);
}

proptest! {
    #[test]
    fn period_increases_with_horizon(p in -3.0f64..=1.0, k in 2usize..200, t in 3u64..10_000_000) {
        prop_assert!(raw(p, t + 1, k) > raw(p, t, k));
    }

    #[test]
    fn period_rounds_up_and_clamps(p in -3.0f64..=1.0, k in 2usize..200, t in 2u64..10_000_000) {
        let e = exploration_period(ScheduleInput::new(p, t, k).unwrap());
        prop_assert_eq!(e.rounds, (e.raw.ceil() as u64).min(t));
        prop_assert_eq!(e.clamped, e.raw.ceil() > t as f64);
    }

    #[test]
    fn min_reward_margin_monotone_in_horizon(mean in 0.01f64..1.0, k in 2usize..50, t in 2u64..1_000_000_000) {
        let inst = BanditInstance::bernoulli(&vec![mean; k]).unwrap();
        let a = check_min_reward(&inst, t).margin;
        let b = check_min_reward(&inst, t.saturating_mul(2)).margin;
        prop_assert!(b >= a - 1e-12);
    }

    #[test]
    fn remark_threshold_decreasing_in_period(k in 2usize..50, t in 10u64..1_000_000, e in 1u64..1_000_000) {
        prop_assert!(remark_threshold(t, e + 1, k) < remark_threshold(t, e, k));
    }
}
