//! Regret-bound expressions used as diagnostic overlays next to measured regret.
//!
//! `dominant_term` is the rate with constants and logarithms dropped:
//!
//! | p           | rate                    | log factor        |
//! |-------------|-------------------------|-------------------|
//! | `(0, 1]`    | `sqrt(k / T)`           | `sqrt(ln T)`      |
//! | `0`         | `sqrt(k / T)`           | `sqrt(ln k ln T)` |
//! | `[-1, 0)`   | `k^(3/4) T^(-1/4)`      | `(ln T)^(1/4)`    |
//! | `< -1`      | `k^(1/2) T^(-1/(4|p|))` | `sqrt(ln T)`      |
//!
//! None of these carry constants, so they are never used as pass/fail gates.
//! The explicit Nash bound is the one expression with constants.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    Positive,
    Nash,
    /// `p` in `[-1, 0)`.
    MildlyNegative,
    /// `p < -1`.
    StronglyNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub branch: BoundBranch,
    /// Rate without constants or logarithms.
    pub dominant_term: f64,
    /// Logarithmic multiplier carried by the bound.
    pub log_factor: f64,
    /// `32 sqrt(k ln k ln T / T) + 4 / T`, only at `p = 0`.
    pub explicit_nash_bound: Option<f64>,
    /// `|p|` lies below the smallest value the bound was derived for.
    pub outside_validity: bool,
}

impl BoundResult {
    pub fn with_logs(&self) -> f64 {
        self.dominant_term * self.log_factor
    }
}

fn check(p: f64, k: usize, horizon: u64) -> Result<()> {
    if !(p.is_finite() && p <= 1.0) {
        return Err(Error::ParameterDomain(format!("p must be a finite value <= 1, got {p}")));
    }
    if k < 2 {
        return Err(Error::TooFewArms(k));
    }
    if horizon < 2 {
        return Err(Error::ParameterDomain(format!("horizon must be >= 2, got {horizon}")));
    }
    Ok(())
}

pub fn table1_bound(p: f64, k: usize, horizon: u64) -> Result<BoundResult> {
    check(p, k, horizon)?;
    let kf = k as f64;
    let t = horizon as f64;
    let ln_t = t.ln();
    let result = if p > 0.0 {
        BoundResult {
            branch: BoundBranch::Positive,
            dominant_term: (kf / t).sqrt(),
            log_factor: ln_t.sqrt(),
            explicit_nash_bound: None,
            outside_validity: p < 4.0 / (kf * t).sqrt(),
        }
    } else if p == 0.0 {
        BoundResult {
            branch: BoundBranch::Nash,
            dominant_term: (kf / t).sqrt(),
            log_factor: (kf.ln() * ln_t).sqrt(),
            explicit_nash_bound: Some(explicit_nash_bound(k, horizon)?),
            outside_validity: false,
        }
    } else if p >= -1.0 {
        BoundResult {
            branch: BoundBranch::MildlyNegative,
            dominant_term: kf.powf(0.75) * t.powf(-0.25),
            log_factor: ln_t.powf(0.25),
            explicit_nash_bound: None,
            outside_validity: -p < 4.0 / (kf * t).powf(0.75),
        }
    } else {
        BoundResult {
            branch: BoundBranch::StronglyNegative,
            dominant_term: kf.sqrt() * t.powf(1.0 / (4.0 * p)),
            log_factor: ln_t.sqrt(),
            explicit_nash_bound: None,
            outside_validity: false,
        }
    };
    Ok(result)
}

/// `32 sqrt(k ln k ln T / T) + 4 / T`.
pub fn explicit_nash_bound(k: usize, horizon: u64) -> Result<f64> {
    check(0.0, k, horizon)?;
    let kf = k as f64;
    let t = horizon as f64;
    Ok(32.0 * (kf * kf.ln() * t.ln() / t).sqrt() + 4.0 / t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nash_bound_worked_values() {
        // Direct evaluation at 30 digits.
        let a = explicit_nash_bound(10, 1_000_000).unwrap();
        assert!((a - 0.570_747_917_977_049_3).abs() < 1e-12, "{a}");
        let b = explicit_nash_bound(2, 10_000_000_000).unwrap();
        assert!((b - 0.001_807_946_800_739_346).abs() < 1e-15, "{b}");
    }

    #[test]
    fn nash_bound_decreasing_in_t() {
        let mut prev = f64::INFINITY;
        for t in [100u64, 1_000, 10_000, 100_000, 1_000_000, 10_000_000] {
            let b = explicit_nash_bound(5, t).unwrap();
            assert!(b >= 0.0 && b < prev);
            prev = b;
        }
    }

    #[test]
    fn table_rows() {
        let r = table1_bound(1.0, 50, 20_000).unwrap();
        assert_eq!(r.branch, BoundBranch::Positive);
        assert!((r.dominant_term - 0.05).abs() < 1e-15);

        let r = table1_bound(-1.0, 50, 20_000).unwrap();
        assert_eq!(r.branch, BoundBranch::MildlyNegative);
        assert!((r.dominant_term - 1.581_138_830_084_19).abs() < 1e-12);

        let r = table1_bound(-2.0, 2, 100_000_000).unwrap();
        assert_eq!(r.branch, BoundBranch::StronglyNegative);
        assert!((r.dominant_term - 0.141_421_356_237_309_5).abs() < 1e-14);

        let r = table1_bound(0.0, 10, 1_000_000).unwrap();
        assert_eq!(r.explicit_nash_bound, Some(explicit_nash_bound(10, 1_000_000).unwrap()));
    }

    #[test]
    fn documented_gap_at_minus_one() {
        let (k, t) = (16usize, 1_000_000u64);
        let at = table1_bound(-1.0, k, t).unwrap().dominant_term;
        let below = table1_bound(-1.0 - 1e-12, k, t).unwrap().dominant_term;
        assert!(((at / below) - (k as f64).powf(0.25)).abs() < 1e-9);
    }

    #[test]
    fn continuous_in_t() {
        for p in [1.0, 0.0, -0.5, -3.0] {
            let a = table1_bound(p, 10, 1_000_000).unwrap().dominant_term;
            let b = table1_bound(p, 10, 1_000_001).unwrap().dominant_term;
            assert!((a - b).abs() / a < 1e-5);
        }
    }

    #[test]
    fn validity_flags() {
        assert!(table1_bound(1e-6, 10, 1000).unwrap().outside_validity);
        assert!(!table1_bound(0.5, 10, 1000).unwrap().outside_validity);
        assert!(table1_bound(-1e-9, 10, 1000).unwrap().outside_validity);
        assert!(table1_bound(2.0, 10, 1000).is_err());
    }
}
