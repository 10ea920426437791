//! Command-line front end: `gen`, `test`, `bench` and `params`.
//!
//! Exit codes: 0 success (or battery pass), 2 battery suspect, 3 battery
//! fail, 64 usage errors (bad flags, unknown generator), 65 data errors
//! (lane bound, bad config, short input), 74 I/O errors.

use crate::baselines::{Mt19937, RawXorgens, Xorwow};
use crate::bench::{self, GeneratorSummary, ThroughputReport};
use crate::parallel::{fill_batched, BlockEnsemble, ParallelError};
use crate::params::{tiny_set, GeneratorParams, TINY_SETS, XORGENS_GP_32};
use crate::source::{RawLeReader, WordSource, WordStream};
use crate::stattests::{run_battery, BatteryConfig, GeneratorInfo, TestError, Verdict};
use crate::xorgens::Xorgens;
use crate::XorgensGp32;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_SUSPECT: i32 = 2;
pub const EXIT_FAIL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    fn io(context: impl Into<String>) -> impl FnOnce(io::Error) -> Self {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}

impl From<ParallelError> for CliError {
    fn from(e: ParallelError) -> Self {
        CliError::Data(e.to_string())
    }
}

/// A generator selected by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// xorgens with its Weyl stage; `tiny` names a committed small set.
    Xorgens {
        params: GeneratorParams,
        tiny: Option<&'static str>,
    },
    /// xorgens without the Weyl stage.
    RawXorgens {
        params: GeneratorParams,
        tiny: Option<&'static str>,
    },
    Xorwow,
    Mt19937,
}

pub const GENERATOR_NAMES: &str =
    "xorgensgp32, xorgens-raw, xorwow, mt19937, tiny:<set>, tiny:<set>-raw";

impl GeneratorKind {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        let kind = match name {
            "xorgensgp32" => GeneratorKind::Xorgens {
                params: XORGENS_GP_32,
                tiny: None,
            },
            "xorgens-raw" => GeneratorKind::RawXorgens {
                params: XORGENS_GP_32,
                tiny: None,
            },
            "xorwow" => GeneratorKind::Xorwow,
            "mt19937" => GeneratorKind::Mt19937,
            _ => {
                let rest = name.strip_prefix("tiny:").ok_or_else(|| unknown(name))?;
                let (set, raw) = match rest.strip_suffix("-raw") {
                    Some(set) => (set, true),
                    None => (rest, false),
                };
                let set = tiny_set(set).ok_or_else(|| unknown(name))?;
                if raw {
                    GeneratorKind::RawXorgens {
                        params: set.params,
                        tiny: Some(set.name),
                    }
                } else {
                    GeneratorKind::Xorgens {
                        params: set.params,
                        tiny: Some(set.name),
                    }
                }
            }
        };
        Ok(kind)
    }

    pub fn name(&self) -> String {
        match self {
            GeneratorKind::Xorgens { tiny: None, .. } => "xorgensgp32".into(),
            GeneratorKind::Xorgens { tiny: Some(t), .. } => format!("tiny:{t}"),
            GeneratorKind::RawXorgens { tiny: None, .. } => "xorgens-raw".into(),
            GeneratorKind::RawXorgens { tiny: Some(t), .. } => format!("tiny:{t}-raw"),
            GeneratorKind::Xorwow => "xorwow".into(),
            GeneratorKind::Mt19937 => "mt19937".into(),
        }
    }

    pub fn params(&self) -> Option<GeneratorParams> {
        match *self {
            GeneratorKind::Xorgens { params, .. } | GeneratorKind::RawXorgens { params, .. } => {
                Some(params)
            }
            _ => None,
        }
    }

    pub fn word_bits(&self) -> u32 {
        self.params().map_or(32, |p| p.w)
    }

    pub fn state_words(&self) -> usize {
        match self {
            GeneratorKind::Xorgens { params, .. } => params.state_words(),
            GeneratorKind::RawXorgens { params, .. } => params.r,
            GeneratorKind::Xorwow => Xorwow::STATE_WORDS,
            GeneratorKind::Mt19937 => Mt19937::STATE_WORDS,
        }
    }

    pub fn period(&self) -> String {
        match self {
            GeneratorKind::Xorgens { params, .. } => params.period().display,
            GeneratorKind::RawXorgens { params, .. } => {
                format!("≈2^{{{}}}", params.period().linear_exponent)
            }
            GeneratorKind::Xorwow => Xorwow::PERIOD.into(),
            GeneratorKind::Mt19937 => Mt19937::PERIOD.into(),
        }
    }

    /// Builds a seeded generator. MT19937 takes 32-bit seeds only.
    pub fn build(&self, seed: u64) -> Result<Box<dyn WordSource + Send>, CliError> {
        let bad = |e: crate::ParamError| CliError::Usage(e.to_string());
        Ok(match *self {
            GeneratorKind::Xorgens { params, .. } if params == XORGENS_GP_32 => {
                Box::new(XorgensGp32::seed(seed))
            }
            GeneratorKind::Xorgens { params, .. } => {
                Box::new(Xorgens::seed(params, seed).map_err(bad)?)
            }
            GeneratorKind::RawXorgens { params, .. } => {
                Box::new(RawXorgens::seed(params, seed).map_err(bad)?)
            }
            GeneratorKind::Xorwow => Box::new(Xorwow::seed(seed)),
            GeneratorKind::Mt19937 => {
                let seed = u32::try_from(seed).map_err(|_| {
                    CliError::Usage(format!("mt19937 seeds must fit in 32 bits, got {seed}"))
                })?;
                Box::new(Mt19937::new(seed))
            }
        })
    }
}

fn unknown(name: &str) -> CliError {
    CliError::Usage(format!(
        "unknown generator '{name}'; expected one of {GENERATOR_NAMES}"
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// w-bit little-endian words, no header
    RawLe,
    /// one zero-padded hex word per line
    Hex,
    /// one decimal word per line (w <= 32)
    U32Lines,
}

#[derive(Debug, Parser)]
#[command(
    name = "xorgensgp",
    version,
    about = "xorgens generators, statistical battery and throughput harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write generator output
    Gen(GenArgs),
    /// Run the statistical battery and print a JSON report
    Test(TestArgs),
    /// Measure throughput in random numbers per second
    Bench(BenchArgs),
    /// Show a generator's parameters, state size and period
    Params(ParamsArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// xorgensgp32, xorgens-raw, xorwow, mt19937, tiny:<set> or tiny:<set>-raw
    #[arg(long, short, default_value = "xorgensgp32")]
    pub generator: String,
    /// Seed; 0 is legal
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Total number of words written
    #[arg(long, short = 'n', default_value_t = 16)]
    pub count: u64,
    /// Independent blocks seeded seed, seed+1, ...; output is block-major
    #[arg(long, default_value_t = 1)]
    pub blocks: usize,
    /// Terms per batch inside a block, at most min(s, r - s)
    #[arg(long, default_value_t = 1)]
    pub lanes: usize,
    #[arg(long, short, value_enum, default_value_t = Format::Hex)]
    pub format: Format,
    /// Output file; stdout when absent
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Generator to test; ignored with --input
    #[arg(long, short, default_value = "xorgensgp32")]
    pub generator: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Battery config file (key = value lines)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scale every test to about this many bits instead of the default 10^8
    #[arg(long, conflicts_with = "config")]
    pub budget: Option<usize>,
    /// Test a raw-le file instead of a generator
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Word size of --input
    #[arg(long, default_value_t = 32, value_parser = parse_word_bits)]
    pub word_bits: u32,
    /// Report file; stdout when absent
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_word_bits(s: &str) -> Result<u32, String> {
    match s.parse() {
        Ok(w @ (8 | 16 | 32 | 64)) => Ok(w),
        _ => Err("expected 8, 16, 32 or 64".into()),
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Generators to time; xorgensgp32, xorwow and mt19937 when absent
    #[arg(long, short)]
    pub generator: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Words per trial
    #[arg(long, short = 'n', default_value_t = 100_000_000)]
    pub count: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Also time xorgensGP-32 ensembles of 1, 4 and #cores blocks
    #[arg(long)]
    pub ensemble: bool,
    /// Print JSON instead of a table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    /// Generator name
    #[arg(default_value = "xorgensgp32")]
    pub generator: String,
    /// Print JSON instead of key: value lines
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(&a, stdout),
        Command::Test(a) => test(&a, stdout),
        Command::Bench(a) => bench_cmd(&a, stdout).map(|()| 0),
        Command::Params(a) => params(&a, stdout).map(|()| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn open_output<'a>(
    path: Option<&Path>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(CliError::io(format!("cannot create {}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(stdout)),
    })
}

struct Encoder {
    format: Format,
    bytes: usize,
    digits: usize,
}

impl Encoder {
    fn new(format: Format, w: u32) -> Result<Self, CliError> {
        if format == Format::U32Lines && w > 32 {
            return Err(CliError::Usage(format!(
                "u32-lines cannot hold {w}-bit words"
            )));
        }
        Ok(Self {
            format,
            bytes: (w / 8) as usize,
            digits: (w / 4) as usize,
        })
    }

    fn write(&self, out: &mut dyn Write, words: &[u64]) -> io::Result<()> {
        for &v in words {
            match self.format {
                Format::RawLe => out.write_all(&v.to_le_bytes()[..self.bytes])?,
                Format::Hex => writeln!(out, "{v:0width$x}", width = self.digits)?,
                Format::U32Lines => writeln!(out, "{v}")?,
            }
        }
        Ok(())
    }
}

const GEN_CHUNK: usize = 1 << 16;

/// `count` words in total. With `p` blocks each block contributes
/// `ceil(count / p)` words, block 0 first, and the tail of the last blocks is
/// cut so exactly `count` words are written.
fn gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let kind = GeneratorKind::parse(&args.generator)?;
    let encoder = Encoder::new(args.format, kind.word_bits())?;
    let parallel = args.blocks != 1 || args.lanes != 1;
    let ensemble = match kind {
        GeneratorKind::Xorgens { params, .. } if parallel => Some(BlockEnsemble::new(
            params,
            args.seed,
            args.blocks,
            args.lanes,
        )?),
        _ if parallel => {
            return Err(CliError::Usage(format!(
                "--blocks and --lanes apply to xorgens generators with a Weyl stage, not {}",
                kind.name()
            )))
        }
        _ => None,
    };
    let mut source = match ensemble {
        Some(_) => None,
        None => Some(kind.build(args.seed)?),
    };
    let context = match &args.output {
        Some(p) => format!("cannot write {}", p.display()),
        None => "cannot write stdout".into(),
    };
    let mut out = open_output(args.output.as_deref(), stdout)?;
    let mut buf = vec![0u64; GEN_CHUNK];
    let mut left = args.count;
    match (ensemble, source.as_mut()) {
        (Some(mut ensemble), _) => {
            let blocks = ensemble.num_blocks() as u64;
            let per_block = args.count.div_ceil(blocks);
            let lanes = ensemble.lanes();
            for i in 0..ensemble.num_blocks() {
                let mut block_left = per_block.min(left);
                left -= block_left;
                while block_left > 0 {
                    let n = block_left.min(GEN_CHUNK as u64) as usize;
                    fill_batched(ensemble.block_mut(i), lanes, &mut buf[..n])?;
                    encoder
                        .write(&mut out, &buf[..n])
                        .map_err(CliError::io(&context))?;
                    block_left -= n as u64;
                }
            }
        }
        (None, Some(source)) => {
            while left > 0 {
                let n = left.min(GEN_CHUNK as u64) as usize;
                source.fill(&mut buf[..n]);
                encoder
                    .write(&mut out, &buf[..n])
                    .map_err(CliError::io(&context))?;
                left -= n as u64;
            }
        }
        (None, None) => unreachable!("either an ensemble or a serial source"),
    }
    out.flush().map_err(CliError::io(&context))?;
    Ok(0)
}

fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass | Verdict::NotApplicable => 0,
        Verdict::Suspect => EXIT_SUSPECT,
        Verdict::Fail => EXIT_FAIL,
    }
}

fn test(args: &TestArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let config = match (&args.config, args.budget) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(CliError::io(format!("cannot read {}", path.display())))?;
            BatteryConfig::parse(&text)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
        }
        (None, Some(bits)) => BatteryConfig::with_budget(bits),
        (None, None) => BatteryConfig::default(),
    };
    let report = match &args.input {
        Some(path) => {
            let file = File::open(path)
                .map_err(CliError::io(format!("cannot open {}", path.display())))?;
            let mut reader = RawLeReader::new(file, args.word_bits);
            let info = GeneratorInfo {
                generator: format!("file:{}", path.display()),
                params: None,
                seed: None,
            };
            let result = run_battery(&mut reader, info, &config);
            if let Some(e) = reader.take_error() {
                return Err(CliError::Io {
                    context: format!("cannot read {}", path.display()),
                    source: e,
                });
            }
            result
        }
        None => {
            let kind = GeneratorKind::parse(&args.generator)?;
            let mut source = kind.build(args.seed)?;
            let info = GeneratorInfo {
                generator: kind.name(),
                params: kind.params(),
                seed: Some(args.seed),
            };
            run_battery(&mut source as &mut dyn WordStream, info, &config)
        }
    }
    .map_err(|e: TestError| CliError::Data(e.to_string()))?;
    let mut out = open_output(args.output.as_deref(), stdout)?;
    writeln!(out, "{}", report.to_json())
        .and_then(|()| out.flush())
        .map_err(CliError::io("cannot write report"))?;
    Ok(verdict_exit_code(report.overall))
}

#[derive(Serialize)]
struct BenchOutput {
    reports: Vec<ThroughputReport>,
    summary: Vec<GeneratorSummary>,
}

fn bench_cmd(args: &BenchArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let names: Vec<String> = if args.generator.is_empty() {
        ["xorgensgp32", "xorwow", "mt19937"]
            .map(String::from)
            .to_vec()
    } else {
        args.generator.clone()
    };
    let kinds = names
        .iter()
        .map(|n| GeneratorKind::parse(n))
        .collect::<Result<Vec<_>, _>>()?;
    let bench_err = |e: bench::BenchError| CliError::Usage(e.to_string());
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for kind in &kinds {
        let mut gen = kind.build(args.seed)?;
        let report = bench::measure_throughput(&kind.name(), &mut gen, args.count, args.trials)
            .map_err(bench_err)?;
        summary.push(GeneratorSummary {
            generator: kind.name(),
            state_words: kind.state_words(),
            period: kind.period(),
            rn_per_sec: Some(report.mean),
        });
        reports.push(report);
    }
    if args.ensemble {
        let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
        let mut counts = vec![1, 4, cores];
        counts.dedup();
        for blocks in counts {
            let lanes = XORGENS_GP_32.lane_bound();
            let report = bench::measure_ensemble_throughput(
                XORGENS_GP_32,
                args.seed,
                blocks,
                lanes,
                args.count,
                args.trials,
            )
            .map_err(bench_err)?;
            reports.push(report);
        }
    }
    let text = if args.json {
        serde_json::to_string_pretty(&BenchOutput { reports, summary }).expect("serializes")
    } else {
        let mut t = bench::compare(&summary);
        for r in &reports {
            t.push_str(&format!(
                "\n{}: mean {:.3e} RN/s, min {:.3e}, max {:.3e}, cv {:.2}% over {} x {} words (checksum {:016x})",
                r.generator, r.mean, r.min, r.max, 100.0 * r.cv, r.trials, r.count, r.checksum
            ));
        }
        t
    };
    writeln!(stdout, "{text}").map_err(CliError::io("cannot write stdout"))
}

#[derive(Serialize)]
struct ParamsOutput {
    generator: String,
    params: Option<GeneratorParams>,
    lane_bound: Option<usize>,
    state_words: usize,
    period: String,
    verified_linear_period: Option<u64>,
    verified_output_period: Option<String>,
}

fn params(args: &ParamsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let kind = GeneratorKind::parse(&args.generator)?;
    let tiny = match kind {
        GeneratorKind::Xorgens { tiny, .. } | GeneratorKind::RawXorgens { tiny, .. } => tiny,
        _ => None,
    };
    let linear = tiny.and_then(|t| TINY_SETS.iter().find(|s| s.name == t)?.linear_period);
    let output_period = match (kind, linear) {
        (GeneratorKind::Xorgens { params, .. }, Some(l)) => Some(format!("{l}·2^{}", params.w)),
        (GeneratorKind::RawXorgens { .. }, Some(l)) => Some(l.to_string()),
        _ => None,
    };
    let p = ParamsOutput {
        generator: kind.name(),
        params: kind.params(),
        lane_bound: kind.params().map(|p| p.lane_bound()),
        state_words: kind.state_words(),
        period: kind.period(),
        verified_linear_period: linear,
        verified_output_period: output_period,
    };
    let text = if args.json {
        serde_json::to_string_pretty(&p).expect("serializes")
    } else {
        let mut lines = vec![format!("generator: {}", p.generator)];
        if let Some(g) = p.params {
            lines.push(format!(
                "r: {}\ns: {}\na: {}\nb: {}\nc: {}\nd: {}\nw: {}\ngamma: {}\nomega: {:#x}",
                g.r, g.s, g.a, g.b, g.c, g.d, g.w, g.gamma, g.omega
            ));
        }
        if let Some(l) = p.lane_bound {
            lines.push(format!("lane bound: {l}"));
        }
        lines.push(format!("state: {} words", p.state_words));
        lines.push(format!("period: {}", p.period));
        if let Some(l) = p.verified_linear_period {
            lines.push(format!("verified linear period: {l}"));
        }
        if let Some(o) = &p.verified_output_period {
            lines.push(format!("verified output period: {o}"));
        }
        lines.join("\n")
    };
    writeln!(stdout, "{text}").map_err(CliError::io("cannot write stdout"))
}
