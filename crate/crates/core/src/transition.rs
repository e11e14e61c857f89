//! Transition probabilities to the four von Neumann neighbours.
//!
//! For a direction `d` with free neighbour the unnormalized weight is
//!
//! ```text
//! p̃_d = exp( k_S·ΔS_d − k_P·D_d(r*_d) − k_W·(1 − r*_d/r)·[ΔS_d ≥ max ΔS] )
//! ```
//!
//! and zero when the neighbour is a wall. The three terms are the exit
//! drive, crowd avoidance along the ray, and wall avoidance, which applies
//! only to directions that make the best progress toward the exit.
//! Probabilities are `p̃_d / Σ p̃`. Staying put is not part of this
//! distribution.
//!
//! Every exponent lies in `[−(k_S + k_P + k_W), k_S]` because
//! `|ΔS| ≤ 1`, `D ∈ [0,1]` and `r*/r ∈ [0,1]`; weights stay finite and
//! positive for any realistic parameters regardless of room size.

use crate::floorfield::{compute_sff, StaticField};
use crate::perception::Perception;
use crate::scenario::{Cell, Direction, Grid, ModelParams, Occupancy};

/// The static inputs of a simulation: geometry, its floor field and the
/// ray cache for one visibility radius.
#[derive(Debug, Clone)]
pub struct Landscape {
    pub grid: Grid,
    pub field: StaticField,
    pub perception: Perception,
}

impl Landscape {
    pub fn new(grid: Grid, r: u32) -> Self {
        let field = compute_sff(&grid);
        Landscape::with_field(grid, field, r)
    }

    pub fn with_field(grid: Grid, field: StaticField, r: u32) -> Self {
        assert_eq!(
            (field.height(), field.width()),
            (grid.height(), grid.width()),
            "field shape differs from grid"
        );
        let perception = Perception::new(&grid, r);
        Landscape {
            grid,
            field,
            perception,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionWeights {
    /// Indexed by [`Direction::index`].
    pub p_tilde: [f64; 4],
    pub norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionDistribution {
    pub p: [f64; 4],
    /// All weights vanished; the pedestrian cannot move this step.
    pub norm_zero: bool,
}

impl TransitionDistribution {
    pub fn prob(&self, dir: Direction) -> f64 {
        self.p[dir.index()]
    }
}

fn check_radius(land: &Landscape, params: &ModelParams) {
    debug_assert_eq!(
        land.perception.radius(),
        params.r,
        "landscape built for a different visibility radius"
    );
}

fn weight(
    land: &Landscape,
    occupancy: &Occupancy,
    cell: Cell,
    dir: Direction,
    params: &ModelParams,
    deltas: &[f64; 4],
    max_delta: f64,
) -> f64 {
    let delta = deltas[dir.index()];
    if delta == f64::NEG_INFINITY {
        return 0.0;
    }
    let r_star = land.perception.r_star(cell, dir);
    assert!(r_star >= 1, "free neighbour implies a ray of length >= 1");
    let crowd = land.perception.density(occupancy, cell, dir);
    let wall = if delta >= max_delta {
        params.k_w * (1.0 - r_star as f64 / params.r as f64)
    } else {
        0.0
    };
    (params.k_s * delta - params.k_p * crowd - wall).exp()
}

/// `p̃` for one direction: zero toward walls, the exponential otherwise.
pub fn unnormalized_weight(
    land: &Landscape,
    occupancy: &Occupancy,
    cell: Cell,
    dir: Direction,
    params: &ModelParams,
) -> f64 {
    check_radius(land, params);
    let deltas = land.field.deltas(&land.grid, cell);
    let max_delta = deltas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    weight(land, occupancy, cell, dir, params, &deltas, max_delta)
}

pub fn direction_weights(
    land: &Landscape,
    occupancy: &Occupancy,
    cell: Cell,
    params: &ModelParams,
) -> DirectionWeights {
    check_radius(land, params);
    let deltas = land.field.deltas(&land.grid, cell);
    let max_delta = deltas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let p_tilde =
        Direction::ALL.map(|d| weight(land, occupancy, cell, d, params, &deltas, max_delta));
    DirectionWeights {
        p_tilde,
        norm: p_tilde.iter().sum(),
    }
}

pub fn transition_distribution(
    land: &Landscape,
    occupancy: &Occupancy,
    cell: Cell,
    params: &ModelParams,
) -> TransitionDistribution {
    let w = direction_weights(land, occupancy, cell, params);
    if w.norm > 0.0 {
        TransitionDistribution {
            p: w.p_tilde.map(|x| x / w.norm),
            norm_zero: false,
        }
    } else {
        TransitionDistribution {
            p: [0.0; 4],
            norm_zero: true,
        }
    }
}
