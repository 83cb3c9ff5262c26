//! Generalized-mean welfare and p-mean regret estimators.
//!
//! For `p != 0` the power mean `((1/n) sum v^p)^(1/p)` is evaluated in the log
//! domain: with `x_i = p ln v_i`,
//!
//! ```text
//! ln M = (max x + ln((1/n) sum exp(x_i - max x))) / p
//! ```
//!
//! When every `|x_i|` is small (`p` near zero) the equivalent form
//! `ln M = ln_1p(mean(expm1(x_i))) / p` is used instead, which keeps the
//! geometric-mean limit accurate. At `p <= 0` a zero entry sends the mean to
//! its limit 0 and the result is marked degenerate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithms::Algorithm;
use crate::distributions::FamilyKind;
use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::schedule::CheckResult;
use crate::trace::RunTrace;

/// Below this `max |p ln v|` the `expm1`/`ln_1p` form is used.
const SMALL_EXPONENT: f64 = 0.5;

/// Which per-round values the p-mean is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Estimator {
    /// True mean of the pulled arm, one regret per run.
    #[serde(rename = "per-run-true-mean")]
    PerRunTrueMean,
    /// Realized reward, one regret per run.
    #[serde(rename = "per-run-realized-reward")]
    PerRunRealizedReward,
    /// Per-round true means averaged across runs before the p-mean is taken.
    #[serde(rename = "cross-run-mean-inside")]
    CrossRunMeanInside,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [
        Estimator::PerRunTrueMean,
        Estimator::PerRunRealizedReward,
        Estimator::CrossRunMeanInside,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::PerRunTrueMean => "per-run-true-mean",
            Estimator::PerRunRealizedReward => "per-run-realized-reward",
            Estimator::CrossRunMeanInside => "cross-run-mean-inside",
        }
    }

    pub fn is_per_run(self) -> bool {
        !matches!(self, Estimator::CrossRunMeanInside)
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Estimator::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown estimator `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegretParams {
    pub p: f64,
    pub estimator: Estimator,
}

impl RegretParams {
    pub fn new(p: f64, estimator: Estimator) -> Result<Self> {
        check_p(p)?;
        Ok(Self { p, estimator })
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!("p must be a finite value <= 1, got {p}")))
    }
}

/// A p-mean together with whether the zero-limit convention was applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Welfare {
    pub value: f64,
    pub degenerate: bool,
}

/// Power mean of `values`, flagging the zero-limit case.
pub fn p_mean_detail(values: &[f64], p: f64) -> Result<Welfare> {
    if values.is_empty() {
        return Err(Error::MeanDomain("empty value list".into()));
    }
    if !p.is_finite() {
        return Err(Error::MeanDomain(format!("p must be finite, got {p}")));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::MeanDomain(format!("values must be finite and >= 0, got {v}")));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let n = values.len() as f64;
    let ok = |value: f64| Welfare {
        value: value.clamp(lo, hi),
        degenerate: false,
    };

    if p == 1.0 {
        return Ok(ok(values.iter().sum::<f64>() / n));
    }
    if lo == 0.0 && p <= 0.0 {
        return Ok(Welfare {
            value: 0.0,
            degenerate: true,
        });
    }
    if hi == 0.0 {
        return Ok(ok(0.0));
    }
    if p == 0.0 {
        let mean_log = values.iter().map(|v| v.ln()).sum::<f64>() / n;
        return Ok(ok(mean_log.exp()));
    }

    // With p > 0 a zero entry contributes exp(-inf) = 0, as it should.
    let exponents = values.iter().map(|&v| p * v.ln());
    let max = exponents.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = exponents.clone().fold(f64::INFINITY, f64::min);
    let log_mean = if max.abs().max(min.abs()) <= SMALL_EXPONENT {
        let s = exponents.map(f64::exp_m1).sum::<f64>() / n;
        s.ln_1p() / p
    } else {
        let s = exponents.map(|x| (x - max).exp()).sum::<f64>() / n;
        (max + s.ln()) / p
    };
    Ok(ok(log_mean.exp()))
}

/// Power mean of non-negative `values`; `p = 0` is the geometric mean.
pub fn p_mean(values: &[f64], p: f64) -> Result<f64> {
    p_mean_detail(values, p).map(|w| w.value)
}

/// Per-round values a per-run estimator aggregates.
fn per_run_values(trace: &RunTrace, estimator: Estimator) -> Result<Vec<f64>> {
    match estimator {
        Estimator::PerRunTrueMean => Ok(trace.true_means().collect()),
        Estimator::PerRunRealizedReward => Ok(trace.rewards().collect()),
        Estimator::CrossRunMeanInside => Err(Error::Arity(
            "the cross-run estimator needs several traces; use p_mean_regret_cross_run".into(),
        )),
    }
}

/// Regret of one run together with its degeneracy flag.
pub fn p_mean_regret_per_run_detail(trace: &RunTrace, instance: &BanditInstance, params: RegretParams) -> Result<Welfare> {
    check_p(params.p)?;
    check_trace(trace, instance)?;
    let values = per_run_values(trace, params.estimator)?;
    let w = p_mean_detail(&values, params.p)?;
    Ok(Welfare {
        value: instance.mu_star() - w.value,
        degenerate: w.degenerate,
    })
}

/// `mu* - M_p(x_1..x_T)` with `x_t` the pulled true mean or the realized reward.
pub fn p_mean_regret_per_run(trace: &RunTrace, instance: &BanditInstance, params: RegretParams) -> Result<f64> {
    p_mean_regret_per_run_detail(trace, instance, params).map(|w| w.value)
}

fn check_trace(trace: &RunTrace, instance: &BanditInstance) -> Result<()> {
    if trace.k() != instance.k() {
        return Err(Error::Arity(format!(
            "trace has {} arms, instance has {}",
            trace.k(),
            instance.k()
        )));
    }
    if trace.rounds.is_empty() {
        return Err(Error::Arity("trace has no rounds".into()));
    }
    Ok(())
}

/// Per-round average of the pulled true means across traces.
pub fn cross_run_profile(traces: &[RunTrace]) -> Result<Vec<f64>> {
    let first = traces
        .first()
        .ok_or_else(|| Error::Arity("no traces".into()))?;
    let mut sums = vec![0.0; first.rounds.len()];
    for trace in traces {
        if trace.rounds.len() != sums.len() || trace.horizon != first.horizon {
            return Err(Error::Arity(format!(
                "mismatched horizons {} and {}",
                first.horizon, trace.horizon
            )));
        }
        accumulate(&mut sums, trace.true_means());
    }
    Ok(finish_profile(sums, traces.len()))
}

pub(crate) fn accumulate(sums: &mut [f64], values: impl Iterator<Item = f64>) {
    for (s, v) in sums.iter_mut().zip(values) {
        *s += v;
    }
}

pub(crate) fn finish_profile(mut sums: Vec<f64>, runs: usize) -> Vec<f64> {
    let r = runs as f64;
    for s in &mut sums {
        *s /= r;
    }
    sums
}

/// Regret of a per-round expected-mean profile.
pub fn profile_regret(profile: &[f64], instance: &BanditInstance, p: f64) -> Result<Welfare> {
    check_p(p)?;
    let w = p_mean_detail(profile, p)?;
    Ok(Welfare {
        value: instance.mu_star() - w.value,
        degenerate: w.degenerate,
    })
}

/// `mu* - M_p(m_1..m_T)` with `m_t` the cross-run average of the pulled true mean.
pub fn p_mean_regret_cross_run(traces: &[RunTrace], instance: &BanditInstance, p: f64) -> Result<f64> {
    if traces.len() < 2 {
        return Err(Error::Arity(format!(
            "the cross-run estimator needs at least 2 traces, got {}",
            traces.len()
        )));
    }
    for trace in traces {
        check_trace(trace, instance)?;
    }
    let profile = cross_run_profile(traces)?;
    profile_regret(&profile, instance, p).map(|w| w.value)
}

/// Nash regret of one run (`p = 0`).
pub fn nash_regret(trace: &RunTrace, instance: &BanditInstance, estimator: Estimator) -> Result<f64> {
    p_mean_regret_per_run(trace, instance, RegretParams::new(0.0, estimator)?)
}

/// Nash regret with the expectation inside the geometric mean.
pub fn nash_regret_cross_run(traces: &[RunTrace], instance: &BanditInstance) -> Result<f64> {
    p_mean_regret_cross_run(traces, instance, 0.0)
}

/// Sample mean and (for two or more values) sample standard deviation.
pub fn mean_and_std(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, None);
    }
    let ss = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
    (mean, Some((ss / (n - 1.0)).sqrt()))
}

/// Diagnostic checks attached to an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssumptionFlags {
    pub min_reward: CheckResult,
    pub exploration_period: CheckResult,
    pub remark_bound: CheckResult,
    /// `|p| <= ln T / (2 ln k)`, reported for `p < -1`.
    pub negative_p_side_condition: bool,
}

/// Regret estimate at one value of `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PEstimate {
    pub p: f64,
    pub explore_period: u64,
    pub clamped: bool,
    pub mean: f64,
    /// `None` when fewer than two values were aggregated.
    pub std: Option<f64>,
    /// Regret values aggregated: `R` per-run, 1 cross-run.
    pub samples: usize,
    /// Runs (or profiles) where the zero-limit convention applied.
    pub degenerate: usize,
    pub flags: AssumptionFlags,
}

impl PEstimate {
    pub fn is_finite(&self) -> bool {
        self.mean.is_finite() && self.std.is_none_or(f64::is_finite)
    }
}

/// Aggregated regret of one algorithm on one instance over a grid of `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegretReport {
    pub family: FamilyKind,
    pub algorithm: Algorithm,
    pub estimator: Estimator,
    pub horizon: u64,
    pub k: usize,
    pub replications: usize,
    pub instance_seed: u64,
    pub base_seed: u64,
    pub mu_star: f64,
    pub estimates: Vec<PEstimate>,
}
