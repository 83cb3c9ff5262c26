//! Row schema shared by the CSV and JSON outputs.
//!
//! Real-valued fields are rounded to 6 significant digits; CSV renders them in
//! `%g` style. Column order is the field order of [`OutputRow`] and is frozen.

use std::io::Write;

use pmb_core::harness::{ResultsTable, TableCell};
use pmb_core::regret::{PEstimate, RegretReport};
use serde::{Deserialize, Serialize};

pub const HEADER: [&str; 16] = [
    "instance_family",
    "algorithm",
    "p",
    "T",
    "T_tilde",
    "clamped",
    "min_reward_ok",
    "exploration_period_ok",
    "remark_bound_ok",
    "estimator",
    "R",
    "regret_mean",
    "regret_std",
    "instance_seed",
    "base_seed",
    "degenerate_runs",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRow {
    pub instance_family: String,
    pub algorithm: String,
    pub p: f64,
    #[serde(rename = "T")]
    pub horizon: u64,
    #[serde(rename = "T_tilde")]
    pub explore_period: u64,
    pub clamped: bool,
    pub min_reward_ok: bool,
    pub exploration_period_ok: bool,
    pub remark_bound_ok: bool,
    pub estimator: String,
    #[serde(rename = "R")]
    pub replications: usize,
    pub regret_mean: f64,
    pub regret_std: Option<f64>,
    pub instance_seed: u64,
    pub base_seed: u64,
    pub degenerate_runs: usize,
}

impl OutputRow {
    pub fn new(report: &RegretReport, estimate: &PEstimate) -> Self {
        Self {
            instance_family: report.family.to_string(),
            algorithm: report.algorithm.to_string(),
            p: round_sig6(estimate.p),
            horizon: report.horizon,
            explore_period: estimate.explore_period,
            clamped: estimate.clamped,
            min_reward_ok: estimate.flags.min_reward.passed,
            exploration_period_ok: estimate.flags.exploration_period.passed,
            remark_bound_ok: estimate.flags.remark_bound.passed,
            estimator: report.estimator.to_string(),
            replications: report.replications,
            regret_mean: round_sig6(estimate.mean),
            regret_std: estimate.std.map(round_sig6),
            instance_seed: report.instance_seed,
            base_seed: report.base_seed,
            degenerate_runs: estimate.degenerate,
        }
    }

    fn record(&self) -> [String; 16] {
        [
            self.instance_family.clone(),
            self.algorithm.clone(),
            sig6(self.p),
            self.horizon.to_string(),
            self.explore_period.to_string(),
            self.clamped.to_string(),
            self.min_reward_ok.to_string(),
            self.exploration_period_ok.to_string(),
            self.remark_bound_ok.to_string(),
            self.estimator.clone(),
            self.replications.to_string(),
            sig6(self.regret_mean),
            self.regret_std.map(sig6).unwrap_or_default(),
            self.instance_seed.to_string(),
            self.base_seed.to_string(),
            self.degenerate_runs.to_string(),
        ]
    }
}

pub fn report_rows(report: &RegretReport) -> Vec<OutputRow> {
    report.estimates.iter().map(|e| OutputRow::new(report, e)).collect()
}

pub fn table_rows(table: &ResultsTable) -> Vec<OutputRow> {
    table
        .cells()
        .into_iter()
        .map(|TableCell { report, estimate }| OutputRow::new(report, estimate))
        .collect()
}

pub fn write_csv<W: Write>(out: W, rows: &[OutputRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, rows: &[OutputRow]) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")
}

/// `%.6g`-style rendering: 6 significant digits, trailing zeros dropped.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn round_sig6(x: f64) -> f64 {
    if x.is_finite() {
        sig6(x).parse().expect("sig6 output parses")
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-1.0, "-1"),
            (0.5, "0.5"),
            (0.123_456_789, "0.123457"),
            (25_457.359_9, "25457.4"),
            (123_456.7, "123457"),
            (999_999.5, "1e+06"),
            (1_234_567.0, "1.23457e+06"),
            (0.000_123_456_7, "0.000123457"),
            (0.000_012_345_67, "1.23457e-05"),
            (-2.0, "-2"),
            (0.964, "0.964"),
        ];
        for (x, want) in cases {
            assert_eq!(sig6(x), want, "{x}");
        }
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [0.570_747_917_9, 1.0 / 3.0, 12_345.678_9, 7.5e-9] {
            let r = round_sig6(x);
            assert_eq!(round_sig6(r), r);
            assert_eq!(sig6(r), sig6(x));
        }
    }
}
