use serde::Serialize;

use crate::arm::ArmDistribution;
use crate::error::{Error, Result};

/// A fixed collection of `k >= 2` arms with their true means.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BanditInstance {
    arms: Vec<ArmDistribution>,
    means: Vec<f64>,
    mu_star: f64,
    i_star: usize,
}

impl BanditInstance {
    pub fn new(arms: Vec<ArmDistribution>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::TooFewArms(arms.len()));
        }
        let means = arms.iter().map(ArmDistribution::mean).collect::<Result<Vec<_>>>()?;
        let (mu_star, i_star) = argmax_first(&means);
        Ok(Self {
            arms,
            means,
            mu_star,
            i_star,
        })
    }

    /// Bernoulli instance with the given success probabilities.
    pub fn bernoulli(rhos: &[f64]) -> Result<Self> {
        let arms = rhos
            .iter()
            .map(|&rho| ArmDistribution::bernoulli(rho))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arms)
    }

    pub fn k(&self) -> usize {
        self.arms.len()
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn arm(&self, i: usize) -> &ArmDistribution {
        &self.arms[i]
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.means[i]
    }

    pub fn mu_star(&self) -> f64 {
        self.mu_star
    }

    pub fn i_star(&self) -> usize {
        self.i_star
    }

    pub fn min_mean(&self) -> f64 {
        self.means.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `(mu_star, i_star)`: the optimal mean and the smallest index attaining it.
pub fn optimal_mean(instance: &BanditInstance) -> (f64, usize) {
    (instance.mu_star(), instance.i_star())
}

fn argmax_first(values: &[f64]) -> (f64, usize) {
    let mut best = (values[0], 0);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.0 {
            best = (v, i);
        }
    }
    best
}
