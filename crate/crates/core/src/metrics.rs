//! Run results, the spread measure, snapshot rendering and CSV export.
//!
//! The spread of a crowd is the mean absolute distance of pedestrians from
//! the exit axis (the line through the exit centroid, perpendicular to the
//! exit wall). It is derived instrumentation: a number for how far the
//! stream fans out around the direct route.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::engine::AgentId;
use crate::scenario::{render_map, Cell, Grid, Occupancy};
use crate::transition::TransitionDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvacTime {
    Complete(u64),
    /// The room was not empty after `max_steps`.
    Incomplete,
}

impl EvacTime {
    pub fn steps(self) -> Option<u64> {
        match self {
            EvacTime::Complete(t) => Some(t),
            EvacTime::Incomplete => None,
        }
    }
}

impl std::fmt::Display for EvacTime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvacTime::Complete(t) => write!(f, "{t}"),
            EvacTime::Incomplete => f.write_str("incomplete"),
        }
    }
}

/// State of the room after `step` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub step: u64,
    pub remaining: usize,
    /// `None` once the room is empty.
    pub spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub step: u64,
    pub occupancy: Occupancy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentDistribution {
    pub agent: AgentId,
    pub cell: Cell,
    pub dist: TransitionDistribution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub seed: u64,
    /// One point per executed step, starting at step 1.
    pub evac_curve: Vec<CurvePoint>,
    pub evac_time: EvacTime,
    pub snapshots: Vec<Snapshot>,
    pub distributions: Option<(u64, Vec<AgentDistribution>)>,
}

impl SimulationResult {
    pub fn spread_at(&self, step: u64) -> Option<f64> {
        self.evac_curve
            .iter()
            .find(|p| p.step == step)
            .and_then(|p| p.spread)
    }

    pub fn is_monotone(&self) -> bool {
        self.evac_curve
            .windows(2)
            .all(|w| w[1].remaining <= w[0].remaining)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadMetric {
    pub step: u64,
    pub value: f64,
}

/// Reference line for the spread measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExitAxis {
    /// Exit in a horizontal wall; offsets are measured along columns.
    Vertical { col: f64 },
    /// Exit in a vertical wall; offsets are measured along rows.
    Horizontal { row: f64 },
}

impl ExitAxis {
    /// Axis through the centroid of all exit cells. The exit wall runs
    /// along the longer extent of the exit set; a single-cell exit takes
    /// its orientation from the border it sits on.
    pub fn from_grid(grid: &Grid) -> ExitAxis {
        let exits = grid.exits();
        let n = exits.len() as f64;
        let row = exits.iter().map(|c| c.row as f64).sum::<f64>() / n;
        let col = exits.iter().map(|c| c.col as f64).sum::<f64>() / n;
        let span = |f: fn(&Cell) -> usize| {
            let lo = exits.iter().map(f).min().unwrap_or(0);
            let hi = exits.iter().map(f).max().unwrap_or(0);
            hi - lo
        };
        let (row_span, col_span) = (span(|c| c.row), span(|c| c.col));
        if col_span > row_span {
            return ExitAxis::Vertical { col };
        }
        if row_span > col_span {
            return ExitAxis::Horizontal { row };
        }
        let on_side = exits
            .iter()
            .all(|c| (c.col == 0 || c.col + 1 == grid.width()) && c.row != 0 && c.row + 1 != grid.height());
        if on_side {
            ExitAxis::Horizontal { row }
        } else {
            ExitAxis::Vertical { col }
        }
    }

    pub fn offset(self, cell: Cell) -> f64 {
        match self {
            ExitAxis::Vertical { col } => (cell.col as f64 - col).abs(),
            ExitAxis::Horizontal { row } => (cell.row as f64 - row).abs(),
        }
    }

    /// Mean offset of `cells`; `None` for an empty set.
    pub fn spread(self, cells: &[Cell]) -> Option<f64> {
        if cells.is_empty() {
            return None;
        }
        Some(cells.iter().map(|&c| self.offset(c)).sum::<f64>() / cells.len() as f64)
    }
}

pub fn spread_metric(step: u64, cells: &[Cell], axis: ExitAxis) -> Option<SpreadMetric> {
    axis.spread(cells).map(|value| SpreadMetric { step, value })
}

/// A snapshot drawn as text and as a binary graymap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedSnapshot {
    pub ascii: String,
    pub pgm: Vec<u8>,
}

pub const GRAY_WALL: u8 = 0;
pub const GRAY_AGENT: u8 = 64;
pub const GRAY_EXIT: u8 = 128;
pub const GRAY_EMPTY: u8 = 255;

pub fn render_snapshot(grid: &Grid, occupancy: &Occupancy) -> RenderedSnapshot {
    let mut pgm = format!("P5\n{} {}\n255\n", grid.width(), grid.height()).into_bytes();
    pgm.extend(grid.cells().map(|c| {
        if occupancy.get(c) {
            GRAY_AGENT
        } else if grid.is_wall(c) {
            GRAY_WALL
        } else if grid.is_exit(c) {
            GRAY_EXIT
        } else {
            GRAY_EMPTY
        }
    }));
    RenderedSnapshot {
        ascii: render_map(grid, occupancy),
        pgm,
    }
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("evacuation curve increases at step {step}")]
    NonMonotone { step: u64 },
}

impl ExportError {
    fn io(path: &Path) -> impl FnOnce(io::Error) -> ExportError + '_ {
        move |source| ExportError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub const CURVE_HEADER: &str = "step,remaining,spread";

/// Writes `step,remaining,spread`, one row per executed step. An empty
/// spread field means the room was empty.
pub fn write_curve_csv<W: Write>(result: &SimulationResult, mut out: W) -> Result<(), ExportError> {
    if let Some(w) = result
        .evac_curve
        .windows(2)
        .find(|w| w[1].remaining > w[0].remaining)
    {
        return Err(ExportError::NonMonotone { step: w[1].step });
    }
    let mut text = String::new();
    text.push_str(CURVE_HEADER);
    text.push('\n');
    for p in &result.evac_curve {
        let _ = write!(text, "{},{},", p.step, p.remaining);
        if let Some(s) = p.spread {
            let _ = write!(text, "{s}");
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(|source| ExportError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })
}

pub fn export_csv(result: &SimulationResult, path: &Path) -> Result<(), ExportError> {
    let mut buf = Vec::new();
    write_curve_csv(result, &mut buf)?;
    fs::write(path, buf).map_err(ExportError::io(path))
}

/// Writes `snapshot_tNNNN.txt` and `snapshot_tNNNN.pgm` for every snapshot.
pub fn export_snapshots(result: &SimulationResult, grid: &Grid, dir: &Path) -> Result<Vec<PathBuf>, ExportError> {
    let mut written = Vec::new();
    for snap in &result.snapshots {
        let r = render_snapshot(grid, &snap.occupancy);
        let base = dir.join(format!("snapshot_t{:04}", snap.step));
        let txt = base.with_extension("txt");
        let pgm = base.with_extension("pgm");
        fs::write(&txt, &r.ascii).map_err(ExportError::io(&txt))?;
        fs::write(&pgm, &r.pgm).map_err(ExportError::io(&pgm))?;
        written.push(txt);
        written.push(pgm);
    }
    Ok(written)
}

/// `agent,row,col,up,right,down,left,norm_zero`
pub fn distributions_csv(entries: &[AgentDistribution]) -> String {
    let mut out = String::from("agent,row,col,up,right,down,left,norm_zero\n");
    for e in entries {
        let p = e.dist.p;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            e.agent, e.cell.row, e.cell.col, p[0], p[1], p[2], p[3], e.dist.norm_zero
        );
    }
    out
}

/// Per-seed outcome kept for batch statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub evac_time: EvacTime,
    /// Spread at each of the batch's probe steps.
    pub spreads: Vec<Option<f64>>,
}

/// Statistics over a set of runs that share parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub runs: usize,
    pub completed: usize,
    pub evac_mean: Option<f64>,
    pub evac_min: Option<u64>,
    pub evac_max: Option<u64>,
    pub evac_p50: Option<u64>,
    pub evac_p90: Option<u64>,
    /// Mean over the runs where the spread is defined.
    pub spread_means: Vec<Option<f64>>,
}

/// Nearest-rank percentile of sorted data.
pub fn percentile(sorted: &[u64], pct: f64) -> Option<u64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((pct / 100.0) * sorted.len() as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, sorted.len()) - 1])
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    /// Steps at which the spread is reported.
    pub probe_steps: Vec<u64>,
    pub runs: Vec<RunSummary>,
}

impl BatchSummary {
    pub fn new(probe_steps: Vec<u64>, results: &[SimulationResult]) -> Self {
        let runs = results
            .iter()
            .map(|r| RunSummary {
                seed: r.seed,
                evac_time: r.evac_time,
                spreads: probe_steps.iter().map(|&t| r.spread_at(t)).collect(),
            })
            .collect();
        BatchSummary { probe_steps, runs }
    }

    pub fn aggregate(&self) -> Aggregate {
        let mut times: Vec<u64> = self.runs.iter().filter_map(|r| r.evac_time.steps()).collect();
        times.sort_unstable();
        Aggregate {
            runs: self.runs.len(),
            completed: times.len(),
            evac_mean: mean(times.iter().map(|&t| t as f64)),
            evac_min: times.first().copied(),
            evac_max: times.last().copied(),
            evac_p50: percentile(&times, 50.0),
            evac_p90: percentile(&times, 90.0),
            spread_means: (0..self.probe_steps.len())
                .map(|i| mean(self.runs.iter().filter_map(|r| r.spreads[i])))
                .collect(),
        }
    }

    /// `seed,evac_time,spread_tN...` per run, then a `mean` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,evac_time");
        for t in &self.probe_steps {
            let _ = write!(out, ",spread_t{t}");
        }
        out.push('\n');
        for r in &self.runs {
            let _ = write!(out, "{},{}", r.seed, r.evac_time);
            for s in &r.spreads {
                out.push(',');
                out.push_str(&opt(*s));
            }
            out.push('\n');
        }
        let agg = self.aggregate();
        let _ = write!(out, "mean,{}", opt(agg.evac_mean));
        for s in &agg.spread_means {
            out.push(',');
            out.push_str(&opt(*s));
        }
        out.push('\n');
        out
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per swept value comparing evacuation time and spread.
pub fn sweep_csv(key: &str, probe_steps: &[u64], rows: &[(String, Aggregate)]) -> String {
    let mut out = String::from(
        "param,value,runs,completed,evac_time_mean,evac_time_min,evac_time_p50,evac_time_p90,evac_time_max",
    );
    for t in probe_steps {
        let _ = write!(out, ",spread_t{t}_mean");
    }
    out.push('\n');
    for (value, a) in rows {
        let _ = write!(
            out,
            "{key},{value},{},{},{},{},{},{},{}",
            a.runs,
            a.completed,
            opt(a.evac_mean),
            opt(a.evac_min),
            opt(a.evac_p50),
            opt(a.evac_p90),
            opt(a.evac_max)
        );
        for s in &a.spread_means {
            out.push(',');
            out.push_str(&opt(*s));
        }
        out.push('\n');
    }
    out
}
