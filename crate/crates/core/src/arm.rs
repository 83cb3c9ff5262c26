//! Reward laws on `[0, 1]`.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One arm's reward distribution.
///
/// Build through the checked constructors ([`ArmDistribution::bernoulli`] and
/// friends); the variants are public for matching.
///
/// Per-draw RNG consumption:
///
/// | variant           | words per draw |
/// |-------------------|----------------|
/// | `Bernoulli`       | 1              |
/// | `Triangular`      | 1 (inverse CDF)|
/// | `UniformInterval` | 1              |
/// | `Beta`            | variable (Cheng rejection sampler) |
///
/// The exact total for a run is recorded in [`RunTrace::rng_words`](crate::RunTrace).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ArmDistribution {
    Bernoulli { rho: f64 },
    /// Triangular law on `(0, 1)` with the given mode.
    Triangular { mode: f64 },
    Beta { alpha: f64, beta: f64 },
    UniformInterval { lower: f64, upper: f64 },
}

fn domain(msg: String) -> Error {
    Error::ParameterDomain(msg)
}

impl ArmDistribution {
    pub fn bernoulli(rho: f64) -> Result<Self> {
        Self::Bernoulli { rho }.validated()
    }

    pub fn triangular(mode: f64) -> Result<Self> {
        Self::Triangular { mode }.validated()
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        Self::Beta { alpha, beta }.validated()
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        Self::UniformInterval { lower, upper }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks the variant's parameter domain.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Bernoulli { rho } => {
                if !(0.0..=1.0).contains(&rho) {
                    return Err(domain(format!("Bernoulli rho must be in [0, 1], got {rho}")));
                }
            }
            Self::Triangular { mode } => {
                if !(mode > 0.0 && mode < 1.0) {
                    return Err(domain(format!("triangular mode must be in (0, 1), got {mode}")));
                }
            }
            Self::Beta { alpha, beta } => {
                if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
                    return Err(domain(format!(
                        "Beta shapes must be positive and finite, got ({alpha}, {beta})"
                    )));
                }
            }
            Self::UniformInterval { lower, upper } => {
                if !(0.0 <= lower && lower < upper && upper <= 1.0) {
                    return Err(domain(format!(
                        "uniform interval needs 0 <= lower < upper <= 1, got [{lower}, {upper}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Closed-form expectation.
    pub fn mean(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Self::Bernoulli { rho } => rho,
            Self::Triangular { mode } => (1.0 + mode) / 3.0,
            Self::Beta { alpha, beta } => alpha / (alpha + beta),
            Self::UniformInterval { lower, upper } => 0.5 * (lower + upper),
        })
    }

    /// Closed-form variance.
    pub fn variance(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            Self::Bernoulli { rho } => rho * (1.0 - rho),
            Self::Triangular { mode } => (1.0 - mode + mode * mode) / 18.0,
            Self::Beta { alpha, beta } => {
                let s = alpha + beta;
                alpha * beta / (s * s * (s + 1.0))
            }
            Self::UniformInterval { lower, upper } => (upper - lower).powi(2) / 12.0,
        })
    }

    /// Draws one reward. The arm is assumed valid (see [`ArmDistribution::validate`]).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Bernoulli { rho } => {
                let u: f64 = rng.random();
                if u < rho {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Triangular { mode } => triangular_inverse_cdf(mode, rng.random()),
            Self::Beta { alpha, beta } => {
                let law = rand_distr::Beta::new(alpha, beta).expect("validated Beta shapes");
                let x: f64 = law.sample(rng);
                x.clamp(0.0, 1.0)
            }
            Self::UniformInterval { lower, upper } => {
                let u: f64 = rng.random();
                (lower + (upper - lower) * u).min(upper)
            }
        }
    }
}

/// Closed-form mean of a distribution.
pub fn mean_of(dist: &ArmDistribution) -> Result<f64> {
    dist.mean()
}

/// One i.i.d. draw from `dist`.
pub fn sample_reward<R: Rng + ?Sized>(dist: &ArmDistribution, rng: &mut R) -> f64 {
    dist.sample(rng)
}

/// Inverse CDF of the triangular law on `[0, 1]` with mode `c`.
pub(crate) fn triangular_inverse_cdf(mode: f64, u: f64) -> f64 {
    if u < mode {
        (u * mode).sqrt()
    } else {
        1.0 - ((1.0 - u) * (1.0 - mode)).sqrt()
    }
}
