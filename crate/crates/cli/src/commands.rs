//! The `run` and `sweep` commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ffca_core::engine::RunOptions;
use ffca_core::metrics::{
    distributions_csv, export_csv, export_snapshots, sweep_csv, Aggregate, BatchSummary, SimulationResult,
};
use ffca_core::scenario::{ModelParams, ParamKey, Scenario};
use ffca_core::{compute_sff, parse_scenario, validate};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;

const SPREAD_NOTE: &str =
    "spread: mean distance of pedestrians from the exit axis, in cells (derived instrumentation, not a model output)";

/// One simulation in a batch with its own output directory.
#[derive(Debug, Clone)]
struct Job {
    dir: String,
    params: ModelParams,
}

pub fn load_scenario(config: &RunConfig) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(&config.scenario).map_err(CliError::io(&config.scenario))?;
    let mut scenario = parse_scenario(&text).map_err(|source| CliError::Parse {
        path: config.scenario.clone(),
        source,
    })?;
    for (key, value) in &config.overrides {
        scenario.params.set(*key, value)?;
    }
    Ok(scenario)
}

/// Runs the scenario once per seed; results go to `s<seed>/`.
pub fn cmd_run(config: &RunConfig, out: &mut impl Write) -> Result<(), CliError> {
    let scenario = prepare(config)?;
    let jobs: Vec<Job> = seeds(config, &scenario)
        .into_iter()
        .map(|seed| Job {
            dir: format!("s{seed}"),
            params: ModelParams { seed, ..scenario.params },
        })
        .collect();
    warn(&scenario.params);
    header(config, &scenario, out)?;
    let results = execute(config, &scenario, &jobs)?;
    for (job, r) in jobs.iter().zip(&results) {
        report_line(out, &job.dir, r, &config.snapshot_steps)?;
    }
    let batch = BatchSummary::new(config.snapshot_steps.clone(), &results);
    write_file(&config.out.join("batch.csv"), batch.to_csv())?;
    Ok(())
}

/// Runs every value of one parameter against every seed; results go to
/// `p<value>_s<seed>/`, with `batch_p<value>.csv` per value and
/// `aggregate.csv` comparing the values.
pub fn cmd_sweep(config: &RunConfig, key: ParamKey, values: &[String], out: &mut impl Write) -> Result<(), CliError> {
    let scenario = prepare(config)?;
    let seeds = seeds(config, &scenario);
    let mut variants = Vec::new();
    for value in values {
        let mut params = scenario.params;
        params.set(key, value)?;
        variants.push((value, params));
    }
    let jobs: Vec<Job> = variants
        .iter()
        .flat_map(|(value, params)| {
            seeds.iter().map(move |&seed| Job {
                dir: format!("p{value}_s{seed}"),
                params: ModelParams { seed, ..*params },
            })
        })
        .collect();
    for (_, params) in &variants {
        warn(params);
    }
    header(config, &scenario, out)?;
    let results = execute(config, &scenario, &jobs)?;

    let mut rows: Vec<(String, Aggregate)> = Vec::new();
    for ((value, _), chunk) in variants.iter().zip(results.chunks(seeds.len())) {
        let batch = BatchSummary::new(config.snapshot_steps.clone(), chunk);
        write_file(&config.out.join(format!("batch_p{value}.csv")), batch.to_csv())?;
        let agg = batch.aggregate();
        let mean = agg.evac_mean.map_or("-".to_string(), |m| format!("{m:.2}"));
        write!(out, "{key}={value}: {}/{} evacuated, mean evacuation time {mean} steps", agg.completed, agg.runs)
            .and_then(|_| {
                for (t, s) in config.snapshot_steps.iter().zip(&agg.spread_means) {
                    if let Some(s) = s {
                        write!(out, ", spread t{t} {s:.3}")?;
                    }
                }
                writeln!(out)
            })
            .map_err(CliError::io("<stdout>"))?;
        rows.push((value.to_string(), agg));
    }
    write_file(
        &config.out.join("aggregate.csv"),
        sweep_csv(key.as_str(), &config.snapshot_steps, &rows),
    )?;
    Ok(())
}

/// Loads, validates and creates the output directory.
fn prepare(config: &RunConfig) -> Result<Scenario, CliError> {
    let scenario = load_scenario(config)?;
    let field = compute_sff(&scenario.grid);
    let violations = validate(&scenario, &field);
    if !violations.is_empty() {
        return Err(ffca_core::engine::InvalidScenario(violations).into());
    }
    fs::create_dir_all(&config.out).map_err(CliError::io(&config.out))?;
    if config.dump_sff {
        write_file(&config.out.join("sff.csv"), field.to_csv())?;
    }
    Ok(scenario)
}

fn seeds(config: &RunConfig, scenario: &Scenario) -> Vec<u64> {
    config.seeds.clone().unwrap_or_else(|| vec![scenario.params.seed])
}

fn warn(params: &ModelParams) {
    for w in params.warnings() {
        eprintln!("warning: {w}");
    }
}

fn header(config: &RunConfig, scenario: &Scenario, out: &mut impl Write) -> Result<(), CliError> {
    writeln!(
        out,
        "scenario {} ({} rows x {} columns, {} pedestrians)\n{SPREAD_NOTE}",
        config.scenario.display(),
        scenario.grid.height(),
        scenario.grid.width(),
        scenario.initial_agents.len()
    )
    .map_err(CliError::io("<stdout>"))
}

fn report_line(out: &mut impl Write, name: &str, r: &SimulationResult, probes: &[u64]) -> Result<(), CliError> {
    let mut line = match r.evac_time.steps() {
        Some(t) => format!("{name}: evacuated in {t} steps"),
        None => format!(
            "{name}: incomplete, {} remaining after {} steps",
            r.evac_curve.last().map_or(0, |p| p.remaining),
            r.evac_curve.len()
        ),
    };
    for &t in probes {
        if let Some(s) = r.spread_at(t) {
            line.push_str(&format!(", spread t{t} {s:.3}"));
        }
    }
    writeln!(out, "{line}").map_err(CliError::io("<stdout>"))
}

/// Runs the jobs on a worker pool and writes each job's files. Results come
/// back in job order.
fn execute(config: &RunConfig, scenario: &Scenario, jobs: &[Job]) -> Result<Vec<SimulationResult>, CliError> {
    let options = RunOptions {
        snapshot_steps: config.snapshot_steps.iter().copied().collect(),
        distributions_at: config.dump_distributions,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start workers: {e}")))?;
    pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let s = Scenario {
                    params: job.params,
                    ..scenario.clone()
                };
                let result = ffca_core::run_with(&s, &options)?;
                write_result(&config.out.join(&job.dir), &s, &result)?;
                Ok(result)
            })
            .collect()
    })
}

fn write_result(dir: &Path, scenario: &Scenario, result: &SimulationResult) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    export_csv(result, &dir.join("curve.csv"))?;
    export_snapshots(result, &scenario.grid, dir)?;
    if let Some((step, entries)) = &result.distributions {
        write_file(&dir.join(format!("distributions_t{step:04}.csv")), distributions_csv(entries))?;
    }
    Ok(())
}

fn write_file(path: &PathBuf, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, contents).map_err(CliError::io(path))
}
