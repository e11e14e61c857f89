//! Command-line flags and the run configuration they resolve to.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ffca_core::engine::DEFAULT_SNAPSHOT_STEPS;
use ffca_core::scenario::ParamKey;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ffca", version, about = "Floor-field evacuation simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario once per seed.
    Run(CommonArgs),
    /// Run every value of one parameter against every seed.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Scenario file.
    #[arg(long)]
    pub scenario: PathBuf,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    /// Seeds, e.g. `1-20` or `1,5,9`. Defaults to the scenario's seed.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Steps at which snapshots and spread probes are taken.
    #[arg(long, value_delimiter = ',')]
    pub snapshot_steps: Option<Vec<u64>>,
    /// Parameter override `key=value`; wins over the scenario file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Parallel runs (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the static floor field to `sff.csv`.
    #[arg(long)]
    pub dump_sff: bool,
    /// Write every pedestrian's direction probabilities at this step.
    #[arg(long, value_name = "STEP")]
    pub dump_distributions: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Parameter and values, e.g. `k_P=6,18`.
    #[arg(long, value_name = "KEY=V1,V2,...")]
    pub sweep: String,
}

/// Everything a run or sweep needs, checked but not yet applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: PathBuf,
    pub out: PathBuf,
    pub snapshot_steps: Vec<u64>,
    /// `None` means the scenario's own seed.
    pub seeds: Option<Vec<u64>>,
    pub overrides: Vec<(ParamKey, String)>,
    pub workers: Option<usize>,
    pub dump_sff: bool,
    pub dump_distributions: Option<u64>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        if args.workers == Some(0) {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        let snapshot_steps: BTreeSet<u64> = match &args.snapshot_steps {
            Some(steps) => steps.iter().copied().collect(),
            None => DEFAULT_SNAPSHOT_STEPS.into_iter().collect(),
        };
        Ok(RunConfig {
            scenario: args.scenario.clone(),
            out: args.out.clone(),
            snapshot_steps: snapshot_steps.into_iter().collect(),
            seeds: args.seeds.as_deref().map(parse_seeds).transpose()?,
            overrides: args
                .overrides
                .iter()
                .map(|s| parse_assignment(s))
                .collect::<Result<_, _>>()?,
            workers: args.workers,
            dump_sff: args.dump_sff,
            dump_distributions: args.dump_distributions,
        })
    }
}

/// Parses `1-3,7` into `[1, 2, 3, 7]`. Order is kept; duplicates are an error.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = |part: &str| CliError::Usage(format!("invalid seed list entry `{part}`"));
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad(part))?;
                let b: u64 = b.trim().parse().map_err(|_| bad(part))?;
                if a > b {
                    return Err(bad(part));
                }
                seeds.extend(a..=b);
            }
            None => seeds.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    let distinct: BTreeSet<u64> = seeds.iter().copied().collect();
    if distinct.len() != seeds.len() {
        return Err(CliError::Usage(format!("seed list `{text}` repeats a seed")));
    }
    Ok(seeds)
}

/// Parses `key=value`.
pub fn parse_assignment(text: &str) -> Result<(ParamKey, String), CliError> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected KEY=VALUE, got `{text}`")))?;
    Ok((key.trim().parse()?, value.trim().to_string()))
}

/// Parses `key=v1,v2,...`. The value strings are kept verbatim for naming.
pub fn parse_sweep(text: &str) -> Result<(ParamKey, Vec<String>), CliError> {
    let (key, values) = parse_assignment(text)?;
    if key == ParamKey::Seed {
        return Err(CliError::Usage("sweep over seeds with --seeds".into()));
    }
    let values: Vec<String> = values
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(String::from)
        .collect();
    if values.is_empty() {
        return Err(CliError::Usage(format!("--sweep {key} has no values")));
    }
    let distinct: BTreeSet<&String> = values.iter().collect();
    if distinct.len() != values.len() {
        return Err(CliError::Usage(format!("--sweep {key} repeats a value")));
    }
    Ok((key, values))
}
