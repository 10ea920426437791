//! Throughput measurement in random numbers per second (RN/s).
//!
//! Each trial generates `count` words in chunks and folds every word into an
//! XOR accumulator passed through [`black_box`], so the optimiser cannot drop
//! the generation. One unmeasured warm-up trial runs first.

use crate::parallel::{BlockEnsemble, ParallelError};
use crate::params::GeneratorParams;
use crate::source::WordSource;
use serde::Serialize;
use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;
use thiserror::Error;

pub const MIN_COUNT: usize = 1_000_000;
pub const MIN_TRIALS: usize = 3;
const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("count {0} below the minimum of {MIN_COUNT}")]
    CountTooSmall(usize),
    #[error("{0} trials requested, at least {MIN_TRIALS} needed")]
    TooFewTrials(usize),
    #[error(transparent)]
    Parallel(#[from] ParallelError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThroughputReport {
    pub generator: String,
    pub count: usize,
    pub trials: usize,
    pub rn_per_sec: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation over the mean.
    pub cv: f64,
    /// XOR of every generated word over all trials.
    pub checksum: u64,
}

impl ThroughputReport {
    fn from_trials(generator: &str, count: usize, rates: Vec<f64>, checksum: u64) -> Self {
        let n = rates.len() as f64;
        let mean = rates.iter().sum::<f64>() / n;
        let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            generator: generator.to_string(),
            count,
            trials: rates.len(),
            mean,
            min: rates.iter().copied().fold(f64::INFINITY, f64::min),
            max: rates.iter().copied().fold(0.0, f64::max),
            cv: var.sqrt() / mean,
            rn_per_sec: rates,
            checksum,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(count: usize, trials: usize) -> Result<(), BenchError> {
    if count < MIN_COUNT {
        return Err(BenchError::CountTooSmall(count));
    }
    if trials < MIN_TRIALS {
        return Err(BenchError::TooFewTrials(trials));
    }
    Ok(())
}

/// Times `trials` runs of `count` words each from `gen`.
pub fn measure_throughput<G: WordSource + ?Sized>(
    name: &str,
    gen: &mut G,
    count: usize,
    trials: usize,
) -> Result<ThroughputReport, BenchError> {
    check(count, trials)?;
    let mut buf = vec![0u64; CHUNK];
    let mut run = |gen: &mut G| -> (f64, u64) {
        let mut acc = 0u64;
        let start = Instant::now();
        let mut left = count;
        while left > 0 {
            let n = left.min(CHUNK);
            gen.fill(&mut buf[..n]);
            for &v in &buf[..n] {
                acc ^= v;
            }
            acc = black_box(acc);
            left -= n;
        }
        (start.elapsed().as_secs_f64(), acc)
    };
    run(gen);
    let mut checksum = 0;
    let rates = (0..trials)
        .map(|_| {
            let (secs, acc) = run(gen);
            checksum ^= acc;
            count as f64 / secs
        })
        .collect();
    Ok(ThroughputReport::from_trials(name, count, rates, checksum))
}

/// Times an ensemble of `blocks` generators producing `count` words in total
/// per trial.
pub fn measure_ensemble_throughput(
    params: GeneratorParams,
    base_seed: u64,
    blocks: usize,
    lanes: usize,
    count: usize,
    trials: usize,
) -> Result<ThroughputReport, BenchError> {
    check(count, trials)?;
    let mut ensemble = BlockEnsemble::new(params, base_seed, blocks, lanes)?;
    let per_block = (count / blocks).max(1);
    let mut out = vec![0u64; per_block * blocks];
    let mut run = |e: &mut BlockEnsemble| -> (f64, u64) {
        let start = Instant::now();
        e.generate_into(&mut out)
            .expect("length is a multiple of blocks");
        let acc = black_box(out.iter().fold(0u64, |a, &v| a ^ v));
        (start.elapsed().as_secs_f64(), acc)
    };
    run(&mut ensemble);
    let mut checksum = 0;
    let rates = (0..trials)
        .map(|_| {
            let (secs, acc) = run(&mut ensemble);
            checksum ^= acc;
            (per_block * blocks) as f64 / secs
        })
        .collect();
    let name = format!("ensemble(p={blocks}, lanes={lanes})");
    Ok(ThroughputReport::from_trials(
        &name,
        per_block * blocks,
        rates,
        checksum,
    ))
}

/// One row of a generator comparison table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSummary {
    pub generator: String,
    pub state_words: usize,
    pub period: String,
    pub rn_per_sec: Option<f64>,
}

/// Renders an aligned table with state size, nominal period and RN/s.
pub fn compare(rows: &[GeneratorSummary]) -> String {
    let header = ["Generator", "State", "Period", "RN/s"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.generator.clone(),
                format!("{} words", r.state_words),
                r.period.clone(),
                r.rn_per_sec
                    .map_or_else(|| "-".into(), |v| format!("{v:.3e}")),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cols: [&str; 4]| {
        let padded: Vec<String> = cols
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| {
                let pad = w - c.chars().count();
                if i == 0 || i == 2 {
                    format!("{c}{}", " ".repeat(pad))
                } else {
                    format!("{}{c}", " ".repeat(pad))
                }
            })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header);
    for row in &cells {
        line([&row[0], &row[1], &row[2], &row[3]]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant;
    impl WordSource for Constant {
        fn word_bits(&self) -> u32 {
            32
        }
        fn next_word(&mut self) -> u64 {
            7
        }
    }

    #[test]
    fn constant_generator_report_is_finite() {
        let r = measure_throughput("constant", &mut Constant, MIN_COUNT, 3).unwrap();
        assert_eq!(r.trials, 3);
        assert!(r.rn_per_sec.iter().all(|&v| v > 0.0 && v.is_finite()));
        assert!(r.mean > 0.0 && r.cv.is_finite());
        assert!(r.min <= r.mean && r.mean <= r.max);
    }

    #[test]
    fn argument_checks() {
        assert_eq!(
            measure_throughput("c", &mut Constant, 10, 5).unwrap_err(),
            BenchError::CountTooSmall(10)
        );
        assert_eq!(
            measure_throughput("c", &mut Constant, MIN_COUNT, 2).unwrap_err(),
            BenchError::TooFewTrials(2)
        );
    }

    #[test]
    fn table_alignment() {
        let t = compare(&[
            GeneratorSummary {
                generator: "xorgensgp32".into(),
                state_words: 129,
                period: "≈2^{4128}".into(),
                rn_per_sec: Some(1.5e9),
            },
            GeneratorSummary {
                generator: "xorwow".into(),
                state_words: 6,
                period: "2^{192}−2^{32}".into(),
                rn_per_sec: None,
            },
        ]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains("129 words") && lines[1].contains("≈2^{4128}"));
        assert!(lines[2].contains("  6 words"));
    }
}
