use super::bits::read_bits;
use super::{
    birthday_spacings, linear_complexity_test, matrix_rank_test, monobit, runs_test, TestError,
    TestResult, Verdict,
};
use crate::params::GeneratorParams;
use crate::source::WordStream;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestSpec {
    Monobit {
        bits: usize,
    },
    Runs {
        bits: usize,
    },
    MatrixRank {
        matrices: usize,
        m: usize,
    },
    LinearComplexity {
        block_length: usize,
        blocks: usize,
    },
    BirthdaySpacings {
        draws: usize,
        t_bits: u32,
        samples: usize,
    },
}

impl TestSpec {
    pub fn name(&self) -> &'static str {
        match self {
            TestSpec::Monobit { .. } => "monobit",
            TestSpec::Runs { .. } => "runs",
            TestSpec::MatrixRank { .. } => "matrix_rank",
            TestSpec::LinearComplexity { .. } => "linear_complexity",
            TestSpec::BirthdaySpacings { .. } => "birthday_spacings",
        }
    }

    /// Bits this test draws from the stream.
    pub fn bits_needed(&self) -> usize {
        match *self {
            TestSpec::Monobit { bits } | TestSpec::Runs { bits } => bits,
            TestSpec::MatrixRank { matrices, m } => matrices * m * m,
            TestSpec::LinearComplexity {
                block_length,
                blocks,
            } => block_length * blocks,
            TestSpec::BirthdaySpacings {
                draws,
                t_bits,
                samples,
            } => draws * t_bits as usize * samples,
        }
    }

    fn run(&self, source: &mut dyn WordStream) -> Result<TestResult, TestError> {
        let bits = read_bits(source, self.bits_needed())?;
        match *self {
            TestSpec::Monobit { .. } => monobit(&bits),
            TestSpec::Runs { .. } => runs_test(&bits),
            TestSpec::MatrixRank { matrices, m } => matrix_rank_test(&bits, matrices, m),
            TestSpec::LinearComplexity {
                block_length,
                blocks,
            } => linear_complexity_test(&bits, block_length, blocks),
            TestSpec::BirthdaySpacings {
                draws,
                t_bits,
                samples,
            } => birthday_spacings(&bits, draws, t_bits, samples),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not a valid value for `{key}`")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("unknown test `{0}`")]
    UnknownTest(String),
}

/// Which tests to run, in order, with their sample sizes.
///
/// The text form is one `key = value` per line; `#` starts a comment.
///
/// ```text
/// tests = monobit, runs, matrix_rank, linear_complexity, birthday_spacings
/// monobit.bits = 100000000
/// runs.bits = 100000000
/// matrix_rank.matrices = 97656
/// matrix_rank.m = 32
/// linear_complexity.block_length = 500
/// linear_complexity.blocks = 200000
/// birthday_spacings.draws = 512
/// birthday_spacings.t_bits = 24
/// birthday_spacings.samples = 8138
/// ```
///
/// Keys left out keep their defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryConfig {
    pub tests: Vec<TestSpec>,
}

const DEFAULT_BITS: usize = 100_000_000;

impl Default for BatteryConfig {
    /// About `10^8` bits per test.
    fn default() -> Self {
        Self::with_budget(DEFAULT_BITS)
    }
}

impl BatteryConfig {
    /// Every test, each sized to draw roughly `bits` bits.
    pub fn with_budget(bits: usize) -> Self {
        let birthday_sample = 512 * 24;
        Self {
            tests: vec![
                TestSpec::Monobit { bits },
                TestSpec::Runs { bits },
                TestSpec::MatrixRank {
                    matrices: (bits / 1024).max(super::gf2::MIN_MATRICES),
                    m: 32,
                },
                TestSpec::LinearComplexity {
                    block_length: 500,
                    blocks: (bits / 500).max(super::complexity::MIN_BLOCKS),
                },
                TestSpec::BirthdaySpacings {
                    draws: 512,
                    t_bits: 24,
                    samples: (bits / birthday_sample).max(1),
                },
            ],
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            values.insert(key.trim().to_string(), (i + 1, value.trim().to_string()));
        }

        let mut config = Self::default();
        if let Some((_, list)) = values.remove("tests") {
            let defaults = config.tests.clone();
            config.tests = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|name| {
                    defaults
                        .iter()
                        .find(|t| t.name() == name)
                        .copied()
                        .ok_or_else(|| ConfigError::UnknownTest(name.to_string()))
                })
                .collect::<Result<_, _>>()?;
        }

        for (key, (line, value)) in values {
            let bad = || ConfigError::BadValue {
                line,
                key: key.clone(),
                value: value.clone(),
            };
            let n: usize = value.replace('_', "").parse().map_err(|_| bad())?;
            let (test, field) = key.split_once('.').ok_or_else(|| ConfigError::UnknownKey {
                line,
                key: key.clone(),
            })?;
            let mut matched = false;
            for spec in config.tests.iter_mut().filter(|t| t.name() == test) {
                matched = true;
                let slot = match (spec, field) {
                    (TestSpec::Monobit { bits }, "bits") | (TestSpec::Runs { bits }, "bits") => {
                        bits
                    }
                    (TestSpec::MatrixRank { matrices, .. }, "matrices") => matrices,
                    (TestSpec::MatrixRank { m, .. }, "m") => m,
                    (TestSpec::LinearComplexity { block_length, .. }, "block_length") => {
                        block_length
                    }
                    (TestSpec::LinearComplexity { blocks, .. }, "blocks") => blocks,
                    (TestSpec::BirthdaySpacings { draws, .. }, "draws") => draws,
                    (TestSpec::BirthdaySpacings { samples, .. }, "samples") => samples,
                    (TestSpec::BirthdaySpacings { t_bits, .. }, "t_bits") => {
                        *t_bits = u32::try_from(n).map_err(|_| bad())?;
                        continue;
                    }
                    _ => {
                        return Err(ConfigError::UnknownKey {
                            line,
                            key: key.clone(),
                        })
                    }
                };
                *slot = n;
            }
            if !matched {
                // settings for a test that is not selected are accepted but unused,
                // provided the test exists
                if !Self::default().tests.iter().any(|t| t.name() == test) {
                    return Err(ConfigError::UnknownKey { line, key });
                }
            }
        }
        Ok(config)
    }

    pub fn total_bits(&self) -> usize {
        self.tests.iter().map(TestSpec::bits_needed).sum()
    }
}

impl fmt::Display for BatteryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.tests.iter().map(TestSpec::name).collect();
        writeln!(f, "tests = {}", names.join(", "))?;
        for t in &self.tests {
            match *t {
                TestSpec::Monobit { bits } => writeln!(f, "monobit.bits = {bits}")?,
                TestSpec::Runs { bits } => writeln!(f, "runs.bits = {bits}")?,
                TestSpec::MatrixRank { matrices, m } => {
                    writeln!(f, "matrix_rank.matrices = {matrices}")?;
                    writeln!(f, "matrix_rank.m = {m}")?;
                }
                TestSpec::LinearComplexity {
                    block_length,
                    blocks,
                } => {
                    writeln!(f, "linear_complexity.block_length = {block_length}")?;
                    writeln!(f, "linear_complexity.blocks = {blocks}")?;
                }
                TestSpec::BirthdaySpacings {
                    draws,
                    t_bits,
                    samples,
                } => {
                    writeln!(f, "birthday_spacings.draws = {draws}")?;
                    writeln!(f, "birthday_spacings.t_bits = {t_bits}")?;
                    writeln!(f, "birthday_spacings.samples = {samples}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorInfo {
    pub generator: String,
    pub params: Option<GeneratorParams>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub generator: String,
    pub params: Option<GeneratorParams>,
    pub seed: Option<u64>,
    /// Tests actually run. With many tests some small p-values are expected
    /// by chance alone.
    pub num_tests: usize,
    pub tests: Vec<TestResult>,
    pub overall: Verdict,
}

impl BatteryReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn result(&self, name_prefix: &str) -> Option<&TestResult> {
        self.tests.iter().find(|t| t.name.starts_with(name_prefix))
    }
}

/// Runs the configured tests in order, each on fresh bits from `source`.
/// The overall verdict is the worst individual verdict.
pub fn run_battery(
    source: &mut dyn WordStream,
    info: GeneratorInfo,
    config: &BatteryConfig,
) -> Result<BatteryReport, TestError> {
    let tests = config
        .tests
        .iter()
        .map(|spec| spec.run(source))
        .collect::<Result<Vec<_>, _>>()?;
    let overall = tests
        .iter()
        .map(|t| t.verdict)
        .filter(|v| *v != Verdict::NotApplicable)
        .max()
        .unwrap_or(Verdict::NotApplicable);
    Ok(BatteryReport {
        generator: info.generator,
        params: info.params,
        seed: info.seed,
        num_tests: tests.len(),
        tests,
        overall,
    })
}
