//! Index policies: Explore-Then-UCB, UCB1 with a round-robin sweep, and a
//! Nash-confidence-bound baseline, all sharing one driver.
//!
//! Every argmax breaks ties toward the smallest arm index. An arm that has
//! never been pulled has index `+inf`, so it is pulled before any arm with a
//! finite index once the exploration prefix ends.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::rng::CountingRng;
use crate::schedule::{exploration_period, ScheduleInput};
use crate::trace::{Exploration, Phase, Round, RunTrace};

/// The three policies compared by the experiment harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Explore-Then-UCB with the exploration period of the `p` being evaluated.
    #[serde(rename = "EUCB")]
    Eucb,
    /// UCB1 with a single round-robin sweep.
    #[serde(rename = "UCB1")]
    Ucb1,
    /// Explore-then-[`NashConfidence`] with the Nash-row exploration period.
    #[serde(rename = "NCB")]
    Ncb,
}

impl Algorithm {
    /// Row order of the reference results table.
    pub const TABLE_ORDER: [Algorithm; 3] = [Algorithm::Ucb1, Algorithm::Ncb, Algorithm::Eucb];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Eucb => "EUCB",
            Algorithm::Ucb1 => "UCB1",
            Algorithm::Ncb => "NCB",
        }
    }

    /// Whether the policy starts with a uniform-exploration phase.
    pub fn has_uniform_phase(self) -> bool {
        !matches!(self, Algorithm::Ucb1)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "eucb" => Ok(Algorithm::Eucb),
            "ucb1" => Ok(Algorithm::Ucb1),
            "ncb" => Ok(Algorithm::Ncb),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Constant in front of the exploration bonus.
pub const UCB_BONUS: f64 = 4.0;

/// `emp_mean + 4 * sqrt(ln(horizon) / pulls)`.
///
/// `horizon` is real-valued so the pure function can be evaluated off the
/// integer grid; policies always pass an integer horizon.
pub fn ucb_index(emp_mean: f64, pulls: u64, horizon: f64) -> Result<f64> {
    if pulls == 0 {
        return Err(Error::UndefinedIndex { arm: usize::MAX });
    }
    Ok(emp_mean + UCB_BONUS * (horizon.ln() / pulls as f64).sqrt())
}

/// A confidence index evaluated on an arm with at least one pull.
pub trait ConfidenceIndex: Sync {
    fn index(&self, emp_mean: f64, pulls: u64, horizon: u64) -> f64;
}

impl<F> ConfidenceIndex for F
where
    F: Fn(f64, u64, u64) -> f64 + Sync,
{
    fn index(&self, emp_mean: f64, pulls: u64, horizon: u64) -> f64 {
        self(emp_mean, pulls, horizon)
    }
}

/// The UCB index used in Phase II of Explore-Then-UCB and by UCB1.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ucb;

impl ConfidenceIndex for Ucb {
    fn index(&self, emp_mean: f64, pulls: u64, horizon: u64) -> f64 {
        emp_mean + UCB_BONUS * ((horizon as f64).ln() / pulls as f64).sqrt()
    }
}

/// Nash confidence bound: `emp_mean + 4 * sqrt(emp_mean * ln(horizon) / pulls)`.
///
/// The bonus shrinks with the empirical mean, so arms that look poor are
/// explored less aggressively than under [`Ucb`].
#[derive(Debug, Clone, Copy, Default)]
pub struct NashConfidence;

impl ConfidenceIndex for NashConfidence {
    fn index(&self, emp_mean: f64, pulls: u64, horizon: u64) -> f64 {
        emp_mean + UCB_BONUS * (emp_mean * (horizon as f64).ln() / pulls as f64).sqrt()
    }
}

/// Empirical mean alone.
#[derive(Debug, Clone, Copy, Default)]
pub struct Greedy;

impl ConfidenceIndex for Greedy {
    fn index(&self, emp_mean: f64, _pulls: u64, _horizon: u64) -> f64 {
        emp_mean
    }
}

/// Smallest index attaining the maximum. `+inf` entries win over finite ones.
pub fn argmax_smallest(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Per-run state of an index policy with an exploration prefix.
#[derive(Debug, Clone)]
pub struct PolicyState<I> {
    horizon: u64,
    explore_period: u64,
    exploration: Exploration,
    t: u64,
    counts: Vec<u64>,
    reward_sums: Vec<f64>,
    // Index of each arm given its current (sum, count); +inf while unpulled.
    indices: Vec<f64>,
    index: I,
}

impl<I: ConfidenceIndex> PolicyState<I> {
    pub fn new(k: usize, horizon: u64, explore_period: u64, exploration: Exploration, index: I) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewArms(k));
        }
        if explore_period > horizon {
            return Err(Error::ParameterDomain(format!(
                "exploration period {explore_period} exceeds horizon {horizon}"
            )));
        }
        if exploration == Exploration::RoundRobin && explore_period != k as u64 {
            return Err(Error::ParameterDomain(format!(
                "round-robin sweep must last exactly k = {k} rounds, got {explore_period}"
            )));
        }
        Ok(Self {
            horizon,
            explore_period,
            exploration,
            t: 0,
            counts: vec![0; k],
            reward_sums: vec![0.0; k],
            indices: vec![f64::INFINITY; k],
            index,
        })
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn explore_period(&self) -> u64 {
        self.explore_period
    }

    /// Rounds completed so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn reward_sums(&self) -> &[f64] {
        &self.reward_sums
    }

    /// Empirical mean of `arm`, `None` while it has no pulls.
    pub fn emp_mean(&self, arm: usize) -> Option<f64> {
        match self.counts[arm] {
            0 => None,
            n => Some(self.reward_sums[arm] / n as f64),
        }
    }

    /// Current confidence indices, `+inf` for unpulled arms.
    pub fn indices(&self) -> &[f64] {
        &self.indices
    }

    /// Phase of the next round, `None` once the horizon is spent.
    pub fn phase(&self) -> Option<Phase> {
        if self.t >= self.horizon {
            None
        } else if self.t < self.explore_period {
            Some(self.exploration.phase())
        } else {
            Some(Phase::Index)
        }
    }

    /// Chooses the arm for the next round without changing the state.
    pub fn select_arm<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        match self.phase() {
            None => Err(Error::HorizonExhausted {
                round: self.t + 1,
                horizon: self.horizon,
            }),
            Some(Phase::Uniform) => Ok(rng.random_range(0..self.k())),
            Some(Phase::RoundRobin) => Ok(self.t as usize),
            Some(Phase::Index) => Ok(argmax_smallest(&self.indices)),
        }
    }

    /// Records `reward` for `arm` and advances the round counter.
    pub fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&reward) {
            return Err(Error::RewardDomain(reward));
        }
        if arm >= self.k() {
            return Err(Error::ParameterDomain(format!("arm {arm} out of range for k = {}", self.k())));
        }
        self.counts[arm] += 1;
        self.reward_sums[arm] += reward;
        self.t += 1;
        let mean = self.reward_sums[arm] / self.counts[arm] as f64;
        self.indices[arm] = self.index.index(mean, self.counts[arm], self.horizon);
        Ok(())
    }
}

/// Drives `state` against `instance` until the horizon, logging every round.
pub fn run_policy<I, R>(instance: &BanditInstance, mut state: PolicyState<I>, rng: &mut CountingRng<R>) -> Result<RunTrace>
where
    I: ConfidenceIndex,
    R: RngCore,
{
    if state.k() != instance.k() {
        return Err(Error::ParameterDomain(format!(
            "policy has {} arms, instance has {}",
            state.k(),
            instance.k()
        )));
    }
    let words_before = rng.words();
    let mut rounds = Vec::with_capacity(state.horizon() as usize);
    while let Some(phase) = state.phase() {
        let arm = state.select_arm(rng)?;
        let reward = instance.arm(arm).sample(rng);
        state.update(arm, reward)?;
        rounds.push(Round {
            t: state.t(),
            arm,
            reward,
            true_mean: instance.mean(arm),
            phase,
        });
    }
    Ok(RunTrace {
        horizon: state.horizon(),
        explore_period: state.explore_period(),
        exploration: state.exploration,
        rounds,
        final_counts: state.counts,
        rng_words: rng.words() - words_before,
    })
}

/// Explore-Then-UCB: `explore_period` uniform rounds, then UCB for the rest.
pub fn run_explore_then_ucb<R: RngCore>(
    instance: &BanditInstance,
    horizon: u64,
    explore_period: u64,
    rng: &mut CountingRng<R>,
) -> Result<RunTrace> {
    run_ncb(instance, horizon, explore_period, Ucb, rng)
}

/// UCB1: one pull of every arm in index order, then UCB.
pub fn run_ucb1<R: RngCore>(instance: &BanditInstance, horizon: u64, rng: &mut CountingRng<R>) -> Result<RunTrace> {
    let k = instance.k();
    if horizon < k as u64 {
        return Err(Error::HorizonTooShort {
            horizon,
            minimum: k as u64,
        });
    }
    let state = PolicyState::new(k, horizon, k as u64, Exploration::RoundRobin, Ucb)?;
    run_policy(instance, state, rng)
}

/// Explore-then-index with a caller-supplied confidence index.
pub fn run_ncb<I, R>(
    instance: &BanditInstance,
    horizon: u64,
    explore_period: u64,
    index: I,
    rng: &mut CountingRng<R>,
) -> Result<RunTrace>
where
    I: ConfidenceIndex,
    R: RngCore,
{
    let state = PolicyState::new(instance.k(), horizon, explore_period, Exploration::Uniform, index)?;
    run_policy(instance, state, rng)
}

/// Exploration period of the NCB preset (the Nash row of the schedule).
pub fn ncb_explore_period(horizon: u64, k: usize) -> Result<u64> {
    Ok(exploration_period(ScheduleInput::new(0.0, horizon, k)?).rounds)
}

/// NCB preset: Nash-row exploration period and [`NashConfidence`] index.
pub fn run_ncb_preset<R: RngCore>(instance: &BanditInstance, horizon: u64, rng: &mut CountingRng<R>) -> Result<RunTrace> {
    let explore = ncb_explore_period(horizon, instance.k())?;
    run_ncb(instance, horizon, explore, NashConfidence, rng)
}
