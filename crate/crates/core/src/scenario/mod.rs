//! Scenario definition: geometry, starting positions and model parameters.

mod grid;
mod params;
mod parse;

use std::collections::HashSet;
use std::fmt;

pub use grid::{Cell, Direction, Grid, GridError, Occupancy, CELL_SIZE_M};
pub use params::{ModelParams, ParamError, ParamKey};
pub use parse::{parse_map, parse_scenario, render_map, ParseError, AGENT, EXIT, FLOOR, WALL};

use crate::floorfield::StaticField;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub grid: Grid,
    /// Starting cells; the index in this list is the pedestrian id.
    pub initial_agents: Vec<Cell>,
    pub params: ModelParams,
}

/// A broken scenario invariant. Each variant maps to exactly one rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    AgentOutOfBounds(Cell),
    AgentOnWall(Cell),
    DuplicateAgent(Cell),
    UnreachableAgent(Cell),
    /// Border cells must be walls or exits.
    OpenBorder(Cell),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AgentOutOfBounds(c) => write!(f, "agent outside the map at {c}"),
            Violation::AgentOnWall(c) => write!(f, "agent on wall at {c}"),
            Violation::DuplicateAgent(c) => write!(f, "cell occupied twice at {c}"),
            Violation::UnreachableAgent(c) => write!(f, "unreachable agent at {c}"),
            Violation::OpenBorder(c) => write!(f, "open border cell at {c}"),
        }
    }
}

/// Checks every scenario invariant against a field computed for its grid.
/// An empty list means the scenario can be simulated.
pub fn validate(scenario: &Scenario, field: &StaticField) -> Vec<Violation> {
    let grid = &scenario.grid;
    let mut out = Vec::new();
    let mut seen = HashSet::with_capacity(scenario.initial_agents.len());
    for &cell in &scenario.initial_agents {
        if !grid.contains(cell) {
            out.push(Violation::AgentOutOfBounds(cell));
        } else if grid.is_wall(cell) {
            out.push(Violation::AgentOnWall(cell));
        } else if !seen.insert(cell) {
            out.push(Violation::DuplicateAgent(cell));
        } else if !field.is_finite(cell) {
            out.push(Violation::UnreachableAgent(cell));
        }
    }
    for cell in grid.cells().filter(|&c| grid.is_border(c)) {
        if !grid.is_wall(cell) && !grid.is_exit(cell) {
            out.push(Violation::OpenBorder(cell));
        }
    }
    out
}
