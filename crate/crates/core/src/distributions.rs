//! Seeded generators for the four synthetic instance families.
//!
//! Parameters are drawn arm by arm (arm 0 first). Within an arm the draw order
//! is fixed: Beta draws `alpha` then `beta`, Uniform draws `lower` then `upper`.
//! Each parameter consumes one `f64` (one RNG word), so an instance is a pure
//! function of the seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arm::ArmDistribution;
use crate::error::{Error, Result};
use crate::instance::BanditInstance;

pub const PARAM_LOW: f64 = 0.005;
pub const BERNOULLI_HIGH: f64 = 1.0;
pub const PARAM_HIGH: f64 = 0.995;
pub const UNIFORM_MIN_WIDTH: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Bernoulli,
    Triangular,
    Beta,
    Uniform,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Bernoulli,
        FamilyKind::Triangular,
        FamilyKind::Beta,
        FamilyKind::Uniform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Triangular => "triangular",
            FamilyKind::Beta => "beta",
            FamilyKind::Uniform => "uniform",
        }
    }

    /// Horizon used for this family in the reference experiment table.
    pub fn reference_horizon(self) -> u64 {
        match self {
            FamilyKind::Bernoulli => 100_000,
            _ => 20_000,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" => Ok(FamilyKind::Bernoulli),
            "triangular" => Ok(FamilyKind::Triangular),
            "beta" => Ok(FamilyKind::Beta),
            "uniform" => Ok(FamilyKind::Uniform),
            other => Err(Error::Config(format!("unknown instance family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceFamily {
    pub kind: FamilyKind,
    pub k: usize,
}

impl InstanceFamily {
    pub fn new(kind: FamilyKind, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewArms(k));
        }
        Ok(Self { kind, k })
    }
}

/// `u * (hi - lo) + lo` with `u` uniform on `[0, 1)`.
fn uniform_in<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.random();
    u * (hi - lo) + lo
}

/// Draws a `k`-arm instance from `family`.
pub fn gen_instance<R: Rng + ?Sized>(family: InstanceFamily, rng: &mut R) -> Result<BanditInstance> {
    if family.k < 2 {
        return Err(Error::TooFewArms(family.k));
    }
    let arms = (0..family.k)
        .map(|_| match family.kind {
            FamilyKind::Bernoulli => ArmDistribution::bernoulli(uniform_in(rng, PARAM_LOW, BERNOULLI_HIGH)),
            FamilyKind::Triangular => ArmDistribution::triangular(uniform_in(rng, PARAM_LOW, PARAM_HIGH)),
            FamilyKind::Beta => {
                let alpha = uniform_in(rng, PARAM_LOW, PARAM_HIGH);
                let beta = uniform_in(rng, PARAM_LOW, PARAM_HIGH);
                ArmDistribution::beta(alpha, beta)
            }
            FamilyKind::Uniform => {
                let lower = uniform_in(rng, PARAM_LOW, PARAM_HIGH);
                let upper = uniform_in(rng, lower + UNIFORM_MIN_WIDTH, 1.0);
                ArmDistribution::uniform(lower, upper)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    BanditInstance::new(arms)
}

/// Smallest true mean of the instance.
pub fn min_mean(instance: &BanditInstance) -> f64 {
    instance.min_mean()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_from_seed;

    #[test]
    fn bernoulli_k50_means_in_range() {
        let family = InstanceFamily::new(FamilyKind::Bernoulli, 50).unwrap();
        let inst = gen_instance(family, &mut stream_from_seed(1)).unwrap();
        assert_eq!(inst.k(), 50);
        assert!(inst.means().iter().all(|&m| (PARAM_LOW..1.0).contains(&m)));
        assert!(min_mean(&inst) >= PARAM_LOW);
    }

    #[test]
    fn uniform_width_at_least_minimum() {
        let family = InstanceFamily::new(FamilyKind::Uniform, 50).unwrap();
        let inst = gen_instance(family, &mut stream_from_seed(2)).unwrap();
        for arm in inst.arms() {
            let ArmDistribution::UniformInterval { lower, upper } = *arm else {
                panic!("wrong law {arm:?}");
            };
            assert!(upper - lower >= UNIFORM_MIN_WIDTH - 1e-15);
        }
    }

    #[test]
    fn same_seed_bit_identical() {
        let family = InstanceFamily::new(FamilyKind::Beta, 3).unwrap();
        let a = gen_instance(family, &mut stream_from_seed(42)).unwrap();
        let b = gen_instance(family, &mut stream_from_seed(42)).unwrap();
        for (x, y) in a.arms().iter().zip(b.arms()) {
            let (ArmDistribution::Beta { alpha: a1, beta: b1 }, ArmDistribution::Beta { alpha: a2, beta: b2 }) = (*x, *y) else {
                panic!("expected Beta arms");
            };
            assert_eq!(a1.to_bits(), a2.to_bits());
            assert_eq!(b1.to_bits(), b2.to_bits());
        }
    }

    #[test]
    fn beta_draws_alpha_before_beta() {
        let family = InstanceFamily::new(FamilyKind::Beta, 2).unwrap();
        let inst = gen_instance(family, &mut stream_from_seed(9)).unwrap();
        let mut rng = stream_from_seed(9);
        let draws: Vec<f64> = (0..4).map(|_| uniform_in(&mut rng, PARAM_LOW, PARAM_HIGH)).collect();
        assert_eq!(inst.arm(0), &ArmDistribution::Beta { alpha: draws[0], beta: draws[1] });
        assert_eq!(inst.arm(1), &ArmDistribution::Beta { alpha: draws[2], beta: draws[3] });
    }

    #[test]
    fn min_mean_examples() {
        let inst = BanditInstance::bernoulli(&[0.3, 0.1, 0.9]).unwrap();
        assert_eq!(min_mean(&inst), 0.1);
        let flat = BanditInstance::bernoulli(&[0.5; 4]).unwrap();
        assert_eq!(min_mean(&flat), 0.5);
    }

    #[test]
    fn family_needs_two_arms() {
        assert_eq!(InstanceFamily::new(FamilyKind::Triangular, 1), Err(Error::TooFewArms(1)));
    }

    #[test]
    fn parses_names() {
        assert_eq!("Triangular".parse::<FamilyKind>().unwrap(), FamilyKind::Triangular);
        assert!("gaussian".parse::<FamilyKind>().is_err());
    }
}
