//! A desk-scale randomness battery.
//!
//! Every test turns a bit sequence into a statistic and a p-value, the
//! probability under true randomness of a statistic at least as extreme. A
//! p-value below `1e-10` (or above `1 - 1e-10`) is a clear failure; below
//! `1e-4` (or above `1 - 1e-4`) is suspect. The matrix-rank and
//! linear-complexity tests target generators that are linear over GF(2).
//!
//! Words enter the bit stream most-significant bit first.

mod battery;
mod birthday;
mod bits;
mod complexity;
mod frequency;
mod gf2;
mod pvalue;

pub use battery::{
    run_battery, BatteryConfig, BatteryReport, ConfigError, GeneratorInfo, TestSpec,
};
pub use birthday::{birthday_lambda, birthday_spacings, poisson_upper_tail};
pub use bits::{read_bits, BitSeq};
pub use complexity::{berlekamp_massey, linear_complexity, linear_complexity_test};
pub use frequency::{monobit, runs_test};
pub use gf2::{gf2_rank, matrix_rank_test, rank_probabilities, BitMatrix};
pub use pvalue::{chi_square_pvalue, normal_pvalue};

use serde::Serialize;
use thiserror::Error;

pub const FAIL_THRESHOLD: f64 = 1e-10;
pub const SUSPECT_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TestError {
    #[error("{test} needs at least {needed} {unit}, got {got}")]
    InsufficientInput {
        test: &'static str,
        needed: u64,
        got: u64,
        unit: &'static str,
    },
    #[error("stream ended after {got} of {needed} bits")]
    StreamExhausted { needed: u64, got: u64 },
    #[error("{0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The test's precondition did not hold, so no p-value was computed.
    NotApplicable,
    Pass,
    Suspect,
    Fail,
}

impl Verdict {
    pub fn from_p(p: f64) -> Self {
        let extreme = p.min(1.0 - p);
        if extreme < FAIL_THRESHOLD {
            Verdict::Fail
        } else if extreme < SUSPECT_THRESHOLD {
            Verdict::Suspect
        } else {
            Verdict::Pass
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotApplicable => "not-applicable",
            Verdict::Pass => "pass",
            Verdict::Suspect => "suspect",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub name: String,
    /// Bits consumed.
    pub n: u64,
    pub statistic: f64,
    /// `None` when the test was not applicable.
    pub p_value: Option<f64>,
    pub verdict: Verdict,
}

impl TestResult {
    pub(crate) fn new(name: impl Into<String>, n: u64, statistic: f64, p: f64) -> Self {
        let p = p.clamp(0.0, 1.0);
        Self {
            name: name.into(),
            n,
            statistic,
            p_value: Some(p),
            verdict: Verdict::from_p(p),
        }
    }

    pub(crate) fn not_applicable(name: impl Into<String>, n: u64, statistic: f64) -> Self {
        Self {
            name: name.into(),
            n,
            statistic,
            p_value: None,
            verdict: Verdict::NotApplicable,
        }
    }
}
