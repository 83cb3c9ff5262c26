//! Stochastic multi-armed bandit simulation under p-mean regret.
//!
//! The p-mean regret of a policy over `T` rounds is
//! `mu* - M_p(E[mu_{I_1}], ..., E[mu_{I_T}])`, where `M_p` is the power mean
//! (`p = 1` arithmetic, `p = 0` geometric, `p = -1` harmonic). Smaller `p`
//! weighs poorly served rounds more heavily.
//!
//! * [`arm`], [`instance`], [`trace`]: reward laws, instances and run records.
//! * [`distributions`]: seeded generators for the synthetic instance families.
//! * [`algorithms`]: Explore-Then-UCB, UCB1 and a Nash-confidence baseline.
//! * [`schedule`]: exploration periods and instance/period diagnostics.
//! * [`regret`]: stable power means and the p-mean regret estimators.
//! * [`bounds`]: regret-bound expressions.
//! * [`harness`]: replicated experiments, good-event monitors, the results table.
//!
//! ```
//! use pmb_core::{run_explore_then_ucb, rng, BanditInstance, Estimator, RegretParams};
//!
//! let instance = BanditInstance::bernoulli(&[0.3, 0.5, 0.8]).unwrap();
//! let trace = run_explore_then_ucb(&instance, 5_000, 400, &mut rng::stream_from_seed(1)).unwrap();
//! let params = RegretParams::new(-1.0, Estimator::PerRunTrueMean).unwrap();
//! let regret = pmb_core::p_mean_regret_per_run(&trace, &instance, params).unwrap();
//! assert!(regret > 0.0 && regret < instance.mu_star());
//! ```

pub mod algorithms;
pub mod arm;
pub mod bounds;
pub mod distributions;
mod error;
pub mod harness;
pub mod instance;
pub mod regret;
pub mod rng;
pub mod schedule;
pub mod trace;

pub use algorithms::{
    run_explore_then_ucb, run_ncb, run_ncb_preset, run_ucb1, ucb_index, Algorithm, ConfidenceIndex, PolicyState,
};
pub use arm::{mean_of, sample_reward, ArmDistribution};
pub use bounds::{explicit_nash_bound, table1_bound, BoundResult};
pub use distributions::{gen_instance, min_mean, FamilyKind, InstanceFamily};
pub use error::{Error, Result};
pub use harness::{good_event_rate, reproduce_table, run_experiment, ExperimentConfig, GoodEventRates, TableSpec};
pub use instance::{optimal_mean, BanditInstance};
pub use regret::{
    nash_regret, nash_regret_cross_run, p_mean, p_mean_regret_cross_run, p_mean_regret_per_run, Estimator,
    RegretParams, RegretReport,
};
pub use schedule::{
    check_exploration_period, check_min_reward, check_remark_bound, exploration_period, CheckResult,
    ExplorationPeriod, ScheduleInput,
};
pub use trace::{Exploration, Phase, Round, RunTrace};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/instances.md")]
mod book_instances {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/welfare.md")]
mod book_welfare {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/explore_then_ucb.md")]
mod book_explore_then_ucb {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/schedule.md")]
mod book_schedule {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
mod book_experiments {}
