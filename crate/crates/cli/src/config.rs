use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdeficit::{JointPmf3, LogBase, StateSpec};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qdeficit", version, about = "Quantum deficit monogamy scans and classical mutual-information checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Nats,
    Bits,
}

impl From<BaseArg> for LogBase {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Nats => LogBase::Nats,
            BaseArg::Bits => LogBase::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Human-readable table, values rounded to three decimals.
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Logarithm base for every entropy-valued quantity.
    #[arg(long, global = true, value_enum, default_value = "nats")]
    pub base: BaseArg,

    /// Largest power tried when searching for the minimal monogamous power.
    #[arg(long, global = true, default_value_t = qdeficit::monogamy::DEFAULT_N_MAX)]
    pub n_max: u32,

    #[arg(long, global = true, default_value_t = 0.02)]
    pub theta_start: f64,

    #[arg(long, global = true, default_value_t = PI)]
    pub theta_stop: f64,

    #[arg(long, global = true, default_value_t = 0.02)]
    pub theta_step: f64,

    /// Number of random distributions for `classical-scan`.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: u64,

    /// Alphabet sizes of X, Y, Z, e.g. `2,3,2`.
    #[arg(long, global = true, default_value = "2,2,2")]
    pub dims: String,

    /// Base seed; instance `i` of a batch uses `seed + i`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Deficit powers n = 1..5 for W and WWBAR.
    Table1,
    /// delta_n(θ) over the θ family, plus the minimal monogamous power per θ.
    Fig1 {
        /// Powers to emit, e.g. `1,2,3`.
        #[arg(long, default_value = "1,2,3,4,5,6,7,8,9,10,11,12")]
        powers: String,
    },
    /// Deficit report and residual tangle of one state.
    Deficit {
        /// State as inline JSON: `{"name": "W"}`, `{"theta": 1.0}` or `{"amplitudes": [[re, im], ...]}`.
        #[arg(long, conflicts_with = "spec_file", required_unless_present = "spec_file")]
        spec: Option<String>,
        /// File holding the state JSON.
        #[arg(long)]
        spec_file: Option<PathBuf>,
    },
    /// Inequality chain and minimal mutual-information power over random distributions.
    ClassicalScan {
        /// Analyse one explicit distribution instead of sampling:
        /// `{"dims": [2,2,2], "p": [...]}`, row-major over (x, y, z).
        #[arg(long, conflicts_with = "pmf_file")]
        pmf: Option<String>,
        #[arg(long)]
        pmf_file: Option<PathBuf>,
    },
}

/// What a command needs after validation.
#[derive(Debug, Clone)]
pub enum Job {
    Table1,
    Fig1 { grid: Vec<f64>, powers: Vec<u32> },
    Deficit { spec: StateSpec },
    ClassicalScan { source: PmfSource },
}

#[derive(Debug, Clone)]
pub enum PmfSource {
    Sampled { samples: u64, dims: [usize; 3], seed: u64 },
    Explicit(JointPmf3),
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub job: Job,
    pub base: LogBase,
    pub n_max: u32,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PmfRecord {
    dims: [usize; 3],
    p: Vec<f64>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadInput(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| bad(format!("bad {what} entry `{t}`"))))
        .collect()
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_state_spec(json: &str) -> Result<StateSpec, CliError> {
    serde_json::from_str(json).map_err(|e| bad(format!("invalid state spec: {e}")))
}

pub fn parse_pmf(json: &str) -> Result<JointPmf3, CliError> {
    let rec: PmfRecord =
        serde_json::from_str(json).map_err(|e| bad(format!("invalid distribution: {e}")))?;
    JointPmf3::new(rec.dims, rec.p).map_err(|e| bad(e.to_string()))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let g = &cli.global;
        if g.n_max == 0 {
            return Err(bad("--n-max must be at least 1"));
        }
        let (job, default_format) = match &cli.command {
            Command::Table1 => (Job::Table1, Format::Table),
            Command::Fig1 { powers } => {
                let grid = qdeficit::theta_grid(g.theta_start, g.theta_stop, g.theta_step)
                    .map_err(|e| bad(e.to_string()))?;
                let powers: Vec<u32> = parse_list(powers, "power")?;
                if powers.is_empty() || powers.contains(&0) {
                    return Err(bad("--powers must list positive integers"));
                }
                (Job::Fig1 { grid, powers }, Format::Csv)
            }
            Command::Deficit { spec, spec_file } => {
                let text = match (spec, spec_file) {
                    (Some(s), _) => s.clone(),
                    (None, Some(path)) => read_file(path)?,
                    (None, None) => return Err(bad("one of --spec or --spec-file is required")),
                };
                (Job::Deficit { spec: parse_state_spec(&text)? }, Format::Json)
            }
            Command::ClassicalScan { pmf, pmf_file } => {
                let source = match (pmf, pmf_file) {
                    (Some(s), _) => PmfSource::Explicit(parse_pmf(s)?),
                    (None, Some(path)) => PmfSource::Explicit(parse_pmf(&read_file(path)?)?),
                    (None, None) => {
                        if g.samples == 0 {
                            return Err(bad("--samples must be at least 1"));
                        }
                        let dims: Vec<usize> = parse_list(&g.dims, "dims")?;
                        let dims: [usize; 3] = dims
                            .try_into()
                            .map_err(|_| bad("--dims needs three comma-separated sizes"))?;
                        if dims.iter().any(|d| !(2..=qdeficit::classical::MAX_SAMPLED_ALPHABET).contains(d)) {
                            return Err(bad("--dims entries must lie in 2..=4"));
                        }
                        PmfSource::Sampled {
                            samples: g.samples,
                            dims,
                            seed: g.seed,
                        }
                    }
                };
                (Job::ClassicalScan { source }, Format::Csv)
            }
        };
        Ok(Self {
            job,
            base: g.base.into(),
            n_max: g.n_max,
            out: g.out.clone(),
            format: g.format.unwrap_or(default_format),
        })
    }
}
