//! Exploration-period formulas and the diagnostic checks on the instance and
//! the chosen period. All logarithms are natural.
//!
//! | p            | raw exploration period          |
//! |--------------|---------------------------------|
//! | `(0, 1]`     | `16 sqrt(T k^p ln T / ln k)`    |
//! | `0` (Nash)   | `16 sqrt(T k ln T / ln k)`      |
//! | `< 0`        | `16 sqrt(T ln T / k^|p|)`       |
//!
//! The two rows meeting at `p = 0` differ by a factor `sqrt(k)`; the table is
//! followed literally, so a tiny positive `p` does not approach the Nash row.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::BanditInstance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleInput {
    pub p: f64,
    pub horizon: u64,
    pub k: usize,
}

impl ScheduleInput {
    pub fn new(p: f64, horizon: u64, k: usize) -> Result<Self> {
        if !p.is_finite() || p > 1.0 {
            return Err(Error::ParameterDomain(format!("p must be a finite value <= 1, got {p}")));
        }
        if horizon < 2 {
            return Err(Error::ParameterDomain(format!("horizon must be >= 2, got {horizon}")));
        }
        if k < 2 {
            return Err(Error::TooFewArms(k));
        }
        Ok(Self { p, horizon, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleBranch {
    Positive,
    Nash,
    Negative,
}

impl ScheduleBranch {
    pub fn of(p: f64) -> Self {
        if p > 0.0 {
            ScheduleBranch::Positive
        } else if p == 0.0 {
            ScheduleBranch::Nash
        } else {
            ScheduleBranch::Negative
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplorationPeriod {
    /// Exact formula value.
    pub raw: f64,
    /// `min(ceil(raw), T)`.
    pub rounds: u64,
    /// Set when `ceil(raw) > T`.
    pub clamped: bool,
    pub branch: ScheduleBranch,
}

pub fn exploration_period(input: ScheduleInput) -> ExplorationPeriod {
    let t = input.horizon as f64;
    let k = input.k as f64;
    let ln_t = t.ln();
    let branch = ScheduleBranch::of(input.p);
    let raw = match branch {
        ScheduleBranch::Positive => 16.0 * (t * k.powf(input.p) * ln_t / k.ln()).sqrt(),
        ScheduleBranch::Nash => 16.0 * (t * k * ln_t / k.ln()).sqrt(),
        ScheduleBranch::Negative => 16.0 * (t * ln_t / k.powf(-input.p)).sqrt(),
    };
    let ceil = raw.ceil();
    let clamped = ceil > t;
    ExplorationPeriod {
        raw,
        rounds: if clamped { input.horizon } else { ceil as u64 },
        clamped,
        branch,
    }
}

/// Outcome of a diagnostic inequality `lhs >= threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    pub threshold: f64,
    /// `lhs - threshold`; negative on failure.
    pub margin: f64,
}

impl CheckResult {
    fn compare(lhs: f64, threshold: f64) -> Self {
        Self {
            passed: lhs >= threshold,
            threshold,
            margin: lhs - threshold,
        }
    }
}

/// Minimum-reward condition: `min_i mu_i >= 32 sqrt(k ln T sqrt(ln k) / T^(1/4))`.
pub fn min_reward_threshold(horizon: u64, k: usize) -> f64 {
    let t = horizon as f64;
    let k = k as f64;
    32.0 * (k * t.ln() * k.ln().sqrt() / t.powf(0.25)).sqrt()
}

pub fn check_min_reward(instance: &BanditInstance, horizon: u64) -> CheckResult {
    CheckResult::compare(instance.min_mean(), min_reward_threshold(horizon, instance.k()))
}

/// Exploration-length condition: `T~ >= 8 k ln(T k) + 16 sqrt(sqrt(T) / ln k)`.
pub fn exploration_period_threshold(horizon: u64, k: usize) -> f64 {
    let t = horizon as f64;
    let k = k as f64;
    8.0 * k * (t * k).ln() + 16.0 * (t.sqrt() / k.ln()).sqrt()
}

pub fn check_exploration_period(explore_period: u64, horizon: u64, k: usize) -> CheckResult {
    CheckResult::compare(explore_period as f64, exploration_period_threshold(horizon, k))
}

/// Consequence of the two conditions: `min_i mu_i >= 128 sqrt(k ln T / T~)`.
pub fn remark_threshold(horizon: u64, explore_period: u64, k: usize) -> f64 {
    128.0 * (k as f64 * (horizon as f64).ln() / explore_period as f64).sqrt()
}

pub fn check_remark_bound(instance: &BanditInstance, horizon: u64, explore_period: u64) -> CheckResult {
    CheckResult::compare(instance.min_mean(), remark_threshold(horizon, explore_period, instance.k()))
}

/// Side condition `|p| <= ln T / (2 ln k)` under which the `p < -1` period
/// satisfies the exploration-length condition. Always true for `p >= -1`.
pub fn negative_p_side_condition(p: f64, horizon: u64, k: usize) -> bool {
    p >= -1.0 || p.abs() <= (horizon as f64).ln() / (2.0 * (k as f64).ln())
}
