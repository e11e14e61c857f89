//! Stochastic floor-field cellular automaton for pedestrian evacuation.
//!
//! Pedestrians walk on a square grid toward the nearest exit. Each step
//! every pedestrian picks one of its four neighbours with probabilities
//! that combine three things: progress along the static floor field
//! (shortest path), the crowd density seen along each direction (shortest
//! time) and proximity of walls ahead. Moves are decided against a frozen
//! snapshot and applied simultaneously, with friction `mu` on contested
//! cells.
//!
//! Module map:
//!
//! - [`scenario`]: geometry, parameters, the text file format, validation
//! - [`floorfield`]: the static distance field and its neighbour deltas
//! - [`perception`]: ray lengths and kernel density along a direction
//! - [`transition`]: direction weights and probabilities
//! - [`engine`]: the parallel update loop
//! - [`metrics`]: results, spread, snapshots, CSV

pub mod engine;
pub mod floorfield;
pub mod metrics;
pub mod perception;
pub mod scenario;
pub mod transition;

pub use engine::{run, run_with, RunOptions, Simulation, SimulationState};
pub use floorfield::{compute_sff, StaticField};
pub use metrics::{EvacTime, SimulationResult};
pub use scenario::{parse_scenario, validate, Cell, Direction, Grid, ModelParams, Scenario};
pub use transition::{transition_distribution, Landscape, TransitionDistribution};
