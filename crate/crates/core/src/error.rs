use thiserror::Error;

/// Errors raised by instance construction, policies, estimators and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("a bandit instance needs at least 2 arms, got {0}")]
    TooFewArms(usize),

    #[error("confidence index is undefined for arm {arm} with zero pulls")]
    UndefinedIndex { arm: usize },

    #[error("horizon exhausted: round {round} requested with horizon {horizon}")]
    HorizonExhausted { round: u64, horizon: u64 },

    #[error("reward {0} lies outside [0, 1]")]
    RewardDomain(f64),

    #[error("horizon {horizon} is shorter than the required minimum {minimum}")]
    HorizonTooShort { horizon: u64, minimum: u64 },

    #[error("invalid input to generalized mean: {0}")]
    MeanDomain(String),

    #[error("estimator/input arity mismatch: {0}")]
    Arity(String),

    #[error("invalid experiment configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
