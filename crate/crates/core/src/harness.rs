//! Replicated experiments with deterministic seeding.
//!
//! One instance is drawn from `instance_seed` and held fixed; replication `r`
//! runs on [`replication_stream`]`(base_seed, r)`. Replications run on the
//! current rayon pool and their results are folded in replication order, so
//! a report depends only on its config, never on scheduling or thread count.
//!
//! Explore-Then-UCB's exploration period depends on `p`, so each distinct
//! period in the grid gets its own set of `R` runs (reusing the same streams).
//! UCB1 and NCB runs are shared by every `p`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{run_explore_then_ucb, run_ncb, run_ucb1, Algorithm, NashConfidence};
use crate::distributions::{gen_instance, FamilyKind, InstanceFamily};
use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::regret::{
    accumulate, check_p, finish_profile, mean_and_std, p_mean_regret_per_run_detail, profile_regret,
    AssumptionFlags, Estimator, PEstimate, RegretParams, RegretReport,
};
use crate::rng::{instance_stream, replication_stream};
use crate::schedule::{
    check_exploration_period, check_min_reward, check_remark_bound, exploration_period, negative_p_side_condition,
    ScheduleInput,
};
use crate::trace::RunTrace;

/// `p` values of the reference results table, in row order.
pub const REFERENCE_P_GRID: [f64; 6] = [1.0, 0.5, 0.0, -0.5, -1.0, -2.0];
pub const REFERENCE_K: usize = 50;
pub const REFERENCE_REPLICATIONS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub family: InstanceFamily,
    pub algorithm: Algorithm,
    pub horizon: u64,
    pub replications: usize,
    pub p_grid: Vec<f64>,
    pub base_seed: u64,
    pub estimator: Estimator,
    pub instance_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.family.k < 2 {
            return Err(Error::TooFewArms(self.family.k));
        }
        if self.replications == 0 {
            return Err(Error::Config("replication count must be >= 1".into()));
        }
        if self.horizon < 2 {
            return Err(Error::Config(format!("horizon must be >= 2, got {}", self.horizon)));
        }
        if self.horizon < self.family.k as u64 {
            return Err(Error::HorizonTooShort {
                horizon: self.horizon,
                minimum: self.family.k as u64,
            });
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("p grid is empty".into()));
        }
        for &p in &self.p_grid {
            check_p(p).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.estimator == Estimator::CrossRunMeanInside && self.replications < 2 {
            return Err(Error::Config(
                "the cross-run estimator needs at least 2 replications".into(),
            ));
        }
        Ok(())
    }

    pub fn instance(&self) -> Result<BanditInstance> {
        gen_instance(self.family, &mut instance_stream(self.instance_seed))
    }
}

/// Exploration period an algorithm uses when evaluated at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlannedExploration {
    pub rounds: u64,
    pub clamped: bool,
}

pub fn planned_exploration(algorithm: Algorithm, p: f64, horizon: u64, k: usize) -> Result<PlannedExploration> {
    Ok(match algorithm {
        Algorithm::Eucb => {
            let e = exploration_period(ScheduleInput::new(p, horizon, k)?);
            PlannedExploration {
                rounds: e.rounds,
                clamped: e.clamped,
            }
        }
        Algorithm::Ncb => {
            let e = exploration_period(ScheduleInput::new(0.0, horizon, k)?);
            PlannedExploration {
                rounds: e.rounds,
                clamped: e.clamped,
            }
        }
        Algorithm::Ucb1 => PlannedExploration {
            rounds: k as u64,
            clamped: false,
        },
    })
}

/// One run of `algorithm` on replication `r`'s stream.
pub fn run_replication(
    instance: &BanditInstance,
    algorithm: Algorithm,
    horizon: u64,
    explore_period: u64,
    base_seed: u64,
    replication: u64,
) -> Result<RunTrace> {
    let mut rng = replication_stream(base_seed, replication);
    match algorithm {
        Algorithm::Eucb => run_explore_then_ucb(instance, horizon, explore_period, &mut rng),
        Algorithm::Ncb => run_ncb(instance, horizon, explore_period, NashConfidence, &mut rng),
        Algorithm::Ucb1 => run_ucb1(instance, horizon, &mut rng),
    }
}

pub fn assumption_flags(instance: &BanditInstance, p: f64, horizon: u64, explore_period: u64) -> AssumptionFlags {
    AssumptionFlags {
        min_reward: check_min_reward(instance, horizon),
        exploration_period: check_exploration_period(explore_period, horizon, instance.k()),
        remark_bound: check_remark_bound(instance, horizon, explore_period),
        negative_p_side_condition: negative_p_side_condition(p, horizon, instance.k()),
    }
}

/// What one replication contributes to the report.
enum Contribution {
    /// `(regret, degenerate)` for each `p` of the group.
    PerRun(Vec<(f64, bool)>),
    /// Per-round true means.
    Profile(Vec<f64>),
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RegretReport> {
    config.validate()?;
    let instance = config.instance()?;
    let k = instance.k();

    // Group grid positions by exploration period, keeping first-seen order.
    let mut groups: Vec<(PlannedExploration, Vec<usize>)> = Vec::new();
    for (i, &p) in config.p_grid.iter().enumerate() {
        let plan = planned_exploration(config.algorithm, p, config.horizon, k)?;
        match groups.iter_mut().find(|(g, _)| *g == plan) {
            Some((_, members)) => members.push(i),
            None => groups.push((plan, vec![i])),
        }
    }

    let mut estimates: Vec<Option<PEstimate>> = vec![None; config.p_grid.len()];
    for (plan, members) in &groups {
        let ps: Vec<f64> = members.iter().map(|&i| config.p_grid[i]).collect();
        let contributions = (0..config.replications as u64)
            .into_par_iter()
            .map(|r| {
                let trace = run_replication(&instance, config.algorithm, config.horizon, plan.rounds, config.base_seed, r)?;
                contribute(&trace, &instance, &ps, config.estimator)
            })
            .collect::<Result<Vec<_>>>()?;

        let summaries = summarize(&contributions, &instance, &ps, config.horizon)?;
        for ((&i, &p), (mean, std, samples, degenerate)) in members.iter().zip(&ps).zip(summaries) {
            estimates[i] = Some(PEstimate {
                p,
                explore_period: plan.rounds,
                clamped: plan.clamped,
                mean,
                std,
                samples,
                degenerate,
                flags: assumption_flags(&instance, p, config.horizon, plan.rounds),
            });
        }
    }

    Ok(RegretReport {
        family: config.family.kind,
        algorithm: config.algorithm,
        estimator: config.estimator,
        horizon: config.horizon,
        k,
        replications: config.replications,
        instance_seed: config.instance_seed,
        base_seed: config.base_seed,
        mu_star: instance.mu_star(),
        estimates: estimates.into_iter().map(|e| e.expect("every p is in a group")).collect(),
    })
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T, F>(threads: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn contribute(trace: &RunTrace, instance: &BanditInstance, ps: &[f64], estimator: Estimator) -> Result<Contribution> {
    if !estimator.is_per_run() {
        return Ok(Contribution::Profile(trace.true_means().collect()));
    }
    ps.iter()
        .map(|&p| {
            let w = p_mean_regret_per_run_detail(trace, instance, RegretParams::new(p, estimator)?)?;
            Ok((w.value, w.degenerate))
        })
        .collect::<Result<Vec<_>>>()
        .map(Contribution::PerRun)
}

type Summary = (f64, Option<f64>, usize, usize);

fn summarize(contributions: &[Contribution], instance: &BanditInstance, ps: &[f64], horizon: u64) -> Result<Vec<Summary>> {
    match contributions.first() {
        Some(Contribution::Profile(_)) => {
            let mut sums = vec![0.0; horizon as usize];
            for c in contributions {
                let Contribution::Profile(means) = c else { unreachable!() };
                accumulate(&mut sums, means.iter().copied());
            }
            let profile = finish_profile(sums, contributions.len());
            ps.iter()
                .map(|&p| {
                    let w = profile_regret(&profile, instance, p)?;
                    Ok((w.value, None, 1, usize::from(w.degenerate)))
                })
                .collect()
        }
        _ => Ok((0..ps.len())
            .map(|j| {
                let mut degenerate = 0;
                let values: Vec<f64> = contributions
                    .iter()
                    .map(|c| {
                        let Contribution::PerRun(v) = c else { unreachable!() };
                        degenerate += usize::from(v[j].1);
                        v[j].0
                    })
                    .collect();
                let (mean, std) = mean_and_std(&values);
                (mean, std, values.len(), degenerate)
            })
            .collect()),
    }
}

/// Fractions of replications on which the good events held.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodEventRates {
    /// Every arm got at least `T~ / (2k)` exploration pulls.
    pub g1: f64,
    /// Every realized empirical mean with `s >= ceil(T~ / (2k))` samples stayed
    /// within `2 sqrt(ln T / s)` of the true mean.
    pub g2: f64,
    pub g: f64,
    pub replications: usize,
}

/// Whether `trace` satisfies the exploration-count event.
pub fn g1_holds(trace: &RunTrace) -> bool {
    let k = trace.k() as u64;
    trace
        .counts_after(trace.explore_period)
        .iter()
        .all(|&n| 2 * k * n >= trace.explore_period)
}

/// Whether `trace` satisfies the confidence-envelope event against `true_means`.
pub fn g2_holds(trace: &RunTrace, true_means: &[f64]) -> bool {
    let k = trace.k() as u64;
    let min_samples = trace.explore_period.div_ceil(2 * k).max(1);
    let ln_t = (trace.horizon as f64).ln();
    let mut sums = vec![0.0f64; trace.k()];
    let mut counts = vec![0u64; trace.k()];
    for round in &trace.rounds {
        sums[round.arm] += round.reward;
        counts[round.arm] += 1;
        let s = counts[round.arm];
        if s >= min_samples {
            let emp = sums[round.arm] / s as f64;
            if (true_means[round.arm] - emp).abs() > 2.0 * (ln_t / s as f64).sqrt() {
                return false;
            }
        }
    }
    true
}

/// Monitors the good events over `replications` seeded runs.
pub fn good_event_rate(
    instance: &BanditInstance,
    algorithm: Algorithm,
    horizon: u64,
    explore_period: u64,
    replications: usize,
    base_seed: u64,
) -> Result<GoodEventRates> {
    if !algorithm.has_uniform_phase() {
        return Err(Error::Config(format!("{algorithm} has no uniform exploration phase")));
    }
    if replications == 0 {
        return Err(Error::Config("replication count must be >= 1".into()));
    }
    let outcomes = (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let trace = run_replication(instance, algorithm, horizon, explore_period, base_seed, r)?;
            Ok((g1_holds(&trace), g2_holds(&trace, instance.means())))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = replications as f64;
    let count = |f: &dyn Fn(&(bool, bool)) -> bool| outcomes.iter().filter(|o| f(o)).count() as f64 / n;
    Ok(GoodEventRates {
        g1: count(&|o| o.0),
        g2: count(&|o| o.1),
        g: count(&|o| o.0 && o.1),
        replications,
    })
}

/// Seeds shared by every cell of a results table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableSeeds {
    /// Every family's instance is drawn from this seed.
    pub instance_seed: u64,
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSpec {
    pub families: Vec<FamilyKind>,
    pub algorithms: Vec<Algorithm>,
    pub p_grid: Vec<f64>,
    pub seeds: TableSeeds,
    pub replications: usize,
    pub estimator: Estimator,
    pub k: usize,
}

impl TableSpec {
    /// The full four-family, three-algorithm, six-`p` layout.
    pub fn reference(seeds: TableSeeds, replications: usize, estimator: Estimator) -> Self {
        Self {
            families: FamilyKind::ALL.to_vec(),
            algorithms: Algorithm::TABLE_ORDER.to_vec(),
            p_grid: REFERENCE_P_GRID.to_vec(),
            seeds,
            replications,
            estimator,
            k: REFERENCE_K,
        }
    }
}

/// One report per (family, algorithm); cells are read out in table order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultsTable {
    pub spec: TableSpec,
    pub reports: Vec<RegretReport>,
}

#[derive(Debug, Clone, Copy)]
pub struct TableCell<'a> {
    pub report: &'a RegretReport,
    pub estimate: &'a PEstimate,
}

impl ResultsTable {
    /// Cells ordered by `p` block, then algorithm row, then family column.
    pub fn cells(&self) -> Vec<TableCell<'_>> {
        let mut out = Vec::with_capacity(self.reports.len() * self.spec.p_grid.len());
        for j in 0..self.spec.p_grid.len() {
            for &alg in &self.spec.algorithms {
                for &family in &self.spec.families {
                    let report = self
                        .reports
                        .iter()
                        .find(|r| r.algorithm == alg && r.family == family)
                        .expect("a report per (family, algorithm)");
                    out.push(TableCell {
                        report,
                        estimate: &report.estimates[j],
                    });
                }
            }
        }
        out
    }
}

/// Runs every (family, algorithm) experiment at the family's reference horizon.
pub fn reproduce_table(spec: &TableSpec) -> Result<ResultsTable> {
    let mut reports = Vec::with_capacity(spec.families.len() * spec.algorithms.len());
    for &kind in &spec.families {
        for &algorithm in &spec.algorithms {
            let config = ExperimentConfig {
                family: InstanceFamily::new(kind, spec.k)?,
                algorithm,
                horizon: kind.reference_horizon(),
                replications: spec.replications,
                p_grid: spec.p_grid.clone(),
                base_seed: spec.seeds.base_seed,
                estimator: spec.estimator,
                instance_seed: spec.seeds.instance_seed,
            };
            reports.push(run_experiment(&config)?);
        }
    }
    Ok(ResultsTable {
        spec: spec.clone(),
        reports,
    })
}
