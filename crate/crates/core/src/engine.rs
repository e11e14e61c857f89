//! Parallel-update stepping.
//!
//! One step:
//!
//! 1. every pedestrian draws a direction from its transition distribution,
//!    all evaluated against the occupancy at the start of the step; a
//!    pedestrian with no admissible direction stays;
//! 2. a drawn neighbour that is free becomes the target. An occupied one
//!    triggers a second draw in which each occupied neighbour's probability
//!    is handed to staying put and free neighbours keep theirs;
//! 3. when several pedestrians target one cell, with probability `mu` none
//!    of them moves, otherwise one of them, chosen uniformly, does;
//! 4. permitted moves happen simultaneously;
//! 5. pedestrians standing on exit cells leave the room.
//!
//! All randomness comes from one stream. Draws happen in ascending agent
//! id order, then conflicts are settled in raster order of the contested
//! cell, so a seed fixes the whole trajectory.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::metrics::{
    AgentDistribution, CurvePoint, EvacTime, ExitAxis, SimulationResult, Snapshot,
};
use crate::scenario::{validate, Cell, Direction, Grid, ModelParams, Occupancy, Scenario, Violation};
use crate::transition::{transition_distribution, Landscape, TransitionDistribution};

/// The simulation's random stream.
pub type SimRng = ChaCha8Rng;

/// Generator for `seed`. Distinct `stream`s of one seed are independent.
pub fn seeded_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub type AgentId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Agent {
    pub id: AgentId,
    pub cell: Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Proposal {
    pub agent: AgentId,
    pub source: Cell,
    /// Equal to `source` when the pedestrian stays.
    pub target: Cell,
}

impl Proposal {
    pub fn is_move(&self) -> bool {
        self.source != self.target
    }
}

#[derive(Debug, Clone)]
pub struct SimulationState {
    pub occupancy: Occupancy,
    /// Sorted by id.
    pub agents: Vec<Agent>,
    pub step: u64,
    pub rng: SimRng,
}

impl SimulationState {
    pub fn new(grid: &Grid, cells: &[Cell], seed: u64) -> Self {
        let agents = cells
            .iter()
            .enumerate()
            .map(|(i, &cell)| Agent {
                id: i as AgentId,
                cell,
            })
            .collect();
        SimulationState {
            occupancy: Occupancy::from_cells(grid, cells.iter().copied()),
            agents,
            step: 0,
            rng: seeded_rng(seed, 0),
        }
    }

    pub fn remaining(&self) -> usize {
        self.agents.len()
    }
}

/// Counters for a single step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepReport {
    pub moved: usize,
    pub removed: usize,
    /// Cells claimed by two or more pedestrians.
    pub conflicts: usize,
    /// Conflicts in which friction kept everyone in place.
    pub blocked: usize,
}

/// Draws a direction with probabilities `p`. Zero entries are never drawn.
pub fn sample_direction(p: &[f64; 4], rng: &mut SimRng) -> Option<Direction> {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = None;
    for d in Direction::ALL {
        let pd = p[d.index()];
        if pd > 0.0 {
            acc += pd;
            last = Some(d);
            if u < acc {
                return Some(d);
            }
        }
    }
    // rounding left u above the accumulated total
    last
}

/// Target selection for one pedestrian (steps 1 and 2 above).
pub fn choose_target(
    agent: &Agent,
    dist: &TransitionDistribution,
    grid: &Grid,
    occupancy: &Occupancy,
    rng: &mut SimRng,
) -> Proposal {
    let stay = Proposal {
        agent: agent.id,
        source: agent.cell,
        target: agent.cell,
    };
    if dist.norm_zero {
        return stay;
    }
    let Some(dir) = sample_direction(&dist.p, rng) else {
        return stay;
    };
    let first = grid
        .neighbor(agent.cell, dir)
        .expect("positive probability implies an in-bounds neighbour");
    if !occupancy.get(first) {
        return Proposal { target: first, ..stay };
    }

    // Patience: occupied neighbours give their mass to staying.
    let mut free: [Option<Cell>; 4] = [None; 4];
    let mut stay_mass = 0.0;
    let mut total = 0.0;
    for d in Direction::ALL {
        let pd = dist.p[d.index()];
        if pd <= 0.0 {
            continue;
        }
        total += pd;
        match grid.neighbor(agent.cell, d) {
            Some(n) if !occupancy.get(n) => free[d.index()] = Some(n),
            _ => stay_mass += pd,
        }
    }
    debug_assert!(stay_mass > 0.0);
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for d in Direction::ALL {
        if let Some(n) = free[d.index()] {
            acc += dist.p[d.index()];
            if u < acc {
                return Proposal { target: n, ..stay };
            }
        }
    }
    stay
}

/// Settles contested targets. Returns the permitted moves in proposal
/// order, plus the number of contested cells and how many were blocked.
pub fn resolve_conflicts(
    proposals: &[Proposal],
    mu: f64,
    rng: &mut SimRng,
) -> (Vec<Proposal>, usize, usize) {
    let mut by_target: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (i, p) in proposals.iter().enumerate().filter(|(_, p)| p.is_move()) {
        by_target.entry(p.target).or_default().push(i);
    }
    let mut winners = Vec::with_capacity(by_target.len());
    let (mut conflicts, mut blocked) = (0, 0);
    for group in by_target.values() {
        if group.len() == 1 {
            winners.push(group[0]);
            continue;
        }
        conflicts += 1;
        if rng.random_bool(mu) {
            blocked += 1;
        } else {
            winners.push(group[rng.random_range(0..group.len())]);
        }
    }
    winners.sort_unstable();
    (winners.into_iter().map(|i| proposals[i]).collect(), conflicts, blocked)
}

/// Distributions for every live pedestrian against the current occupancy.
pub fn distributions(
    state: &SimulationState,
    land: &Landscape,
    params: &ModelParams,
) -> Vec<TransitionDistribution> {
    state
        .agents
        .iter()
        .map(|a| transition_distribution(land, &state.occupancy, a.cell, params))
        .collect()
}

/// Advances the state by one parallel-update step.
pub fn step(state: &mut SimulationState, land: &Landscape, params: &ModelParams) -> StepReport {
    let grid = &land.grid;
    let dists = distributions(state, land, params);
    let proposals: Vec<Proposal> = state
        .agents
        .iter()
        .zip(&dists)
        .map(|(a, d)| {
            if grid.is_exit(a.cell) {
                // already leaving; removed at the end of this step (5 above)
                Proposal {
                    agent: a.id,
                    source: a.cell,
                    target: a.cell,
                }
            } else {
                choose_target(a, d, grid, &state.occupancy, &mut state.rng)
            }
        })
        .collect();
    let (moves, conflicts, blocked) = resolve_conflicts(&proposals, params.mu, &mut state.rng);

    for m in &moves {
        state.occupancy.set(m.source, false);
    }
    for m in &moves {
        assert!(
            !state.occupancy.get(m.target),
            "two pedestrians moved into {}",
            m.target
        );
        state.occupancy.set(m.target, true);
    }
    let mut moved_iter = moves.iter().peekable();
    for a in state.agents.iter_mut() {
        if let Some(m) = moved_iter.next_if(|m| m.agent == a.id) {
            a.cell = m.target;
        }
    }

    let before = state.agents.len();
    let occupancy = &mut state.occupancy;
    state.agents.retain(|a| {
        let leaving = grid.is_exit(a.cell);
        if leaving {
            occupancy.set(a.cell, false);
        }
        !leaving
    });
    state.step += 1;

    StepReport {
        moved: moves.len(),
        removed: before - state.agents.len(),
        conflicts,
        blocked,
    }
}

/// Default snapshot times for the room experiment.
pub const DEFAULT_SNAPSHOT_STEPS: [u64; 6] = [25, 65, 135, 165, 180, 225];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// States to keep as snapshots, by step count (0 is the initial state).
    pub snapshot_steps: BTreeSet<u64>,
    /// Record every pedestrian's distribution at this step.
    pub distributions_at: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            snapshot_steps: DEFAULT_SNAPSHOT_STEPS.into_iter().collect(),
            distributions_at: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scenario is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidScenario(pub Vec<Violation>);

/// A validated scenario ready to step.
#[derive(Debug, Clone)]
pub struct Simulation {
    land: Landscape,
    params: ModelParams,
    axis: ExitAxis,
    state: SimulationState,
}

impl Simulation {
    pub fn new(scenario: &Scenario) -> Result<Self, InvalidScenario> {
        let land = Landscape::new(scenario.grid.clone(), scenario.params.r);
        let violations = validate(scenario, &land.field);
        if !violations.is_empty() {
            return Err(InvalidScenario(violations));
        }
        Ok(Simulation::from_landscape(land, &scenario.initial_agents, scenario.params))
    }

    /// Skips validation; the caller guarantees the scenario invariants.
    pub fn from_landscape(land: Landscape, agents: &[Cell], params: ModelParams) -> Self {
        let state = SimulationState::new(&land.grid, agents, params.seed);
        let axis = ExitAxis::from_grid(&land.grid);
        Simulation {
            land,
            params,
            axis,
            state,
        }
    }

    pub fn landscape(&self) -> &Landscape {
        &self.land
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn state(&self) -> &SimulationState {
        &self.state
    }

    pub fn axis(&self) -> ExitAxis {
        self.axis
    }

    pub fn is_finished(&self) -> bool {
        self.state.agents.is_empty() || self.state.step >= self.params.max_steps
    }

    pub fn step(&mut self) -> StepReport {
        step(&mut self.state, &self.land, &self.params)
    }

    pub fn agent_distributions(&self) -> Vec<AgentDistribution> {
        self.state
            .agents
            .iter()
            .zip(distributions(&self.state, &self.land, &self.params))
            .map(|(a, dist)| AgentDistribution {
                agent: a.id,
                cell: a.cell,
                dist,
            })
            .collect()
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            step: self.state.step,
            occupancy: self.state.occupancy.clone(),
        }
    }

    /// Steps until the room is empty or `max_steps` is reached.
    pub fn run(mut self, options: &RunOptions) -> SimulationResult {
        let mut curve = Vec::new();
        let mut snapshots = Vec::new();
        let mut dumped = None;
        loop {
            if options.snapshot_steps.contains(&self.state.step) {
                snapshots.push(self.snapshot());
            }
            if options.distributions_at == Some(self.state.step) {
                dumped = Some((self.state.step, self.agent_distributions()));
            }
            if self.is_finished() {
                break;
            }
            self.step();
            let cells: Vec<Cell> = self.state.agents.iter().map(|a| a.cell).collect();
            curve.push(CurvePoint {
                step: self.state.step,
                remaining: self.state.agents.len(),
                spread: self.axis.spread(&cells),
            });
        }
        let evac_time = if self.state.agents.is_empty() {
            EvacTime::Complete(self.state.step)
        } else {
            EvacTime::Incomplete
        };
        SimulationResult {
            seed: self.params.seed,
            evac_curve: curve,
            evac_time,
            snapshots,
            distributions: dumped,
        }
    }
}

/// Validates and runs a scenario with the default snapshot steps.
pub fn run(scenario: &Scenario) -> Result<SimulationResult, InvalidScenario> {
    run_with(scenario, &RunOptions::default())
}

pub fn run_with(scenario: &Scenario, options: &RunOptions) -> Result<SimulationResult, InvalidScenario> {
    Ok(Simulation::new(scenario)?.run(options))
}
