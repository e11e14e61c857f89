//! What a pedestrian sees along each of its four directions: how far the
//! way is free of walls (`r*`) and how crowded that stretch is (`D`).
//!
//! Density is a discrete kernel estimate over the `r*` free cells of the
//! ray, using a truncated quadratic kernel with support `|z| ≤ √5` and
//! bandwidth `C(r*) = (r* + 1)/√5`. Other pedestrians do not shorten a ray;
//! only walls do.

use crate::scenario::{Cell, Direction, Grid, Occupancy};

const SQRT_5: f64 = 2.23606797749979;

/// A direction ray from a cell, cut at the first wall or at the visibility
/// radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ray {
    pub origin: Cell,
    pub dir: Direction,
    pub r_star: u32,
}

impl Ray {
    pub fn cast(grid: &Grid, origin: Cell, dir: Direction, r: u32) -> Ray {
        Ray {
            origin,
            dir,
            r_star: obstacle_distance(grid, origin, dir, r),
        }
    }
}

/// Number of consecutive non-wall cells after `cell` along `dir`, at most `r`.
pub fn obstacle_distance(grid: &Grid, cell: Cell, dir: Direction, r: u32) -> u32 {
    (1..=r as usize)
        .take_while(|&m| grid.offset(cell, dir, m).is_some_and(|c| grid.is_walkable(c)))
        .count() as u32
}

/// The density kernel `Φ(z) = (0.335 − 0.067 z²)·4.4742` on `|z| ≤ √5`,
/// zero outside.
pub fn kernel_phi(z: f64) -> f64 {
    let z2 = z * z;
    if z2 >= 5.0 {
        // the polynomial vanishes at the boundary; float rounding there
        // would otherwise give ±1e-16
        return 0.0;
    }
    ((0.335 - 0.067 * z2) * 4.4742).max(0.0)
}

/// Kernel bandwidth for a ray of `r_star` free cells.
pub fn bandwidth(r_star: u32) -> f64 {
    (r_star as f64 + 1.0) / SQRT_5
}

/// Weights `Φ(m / C(r*))` for offsets `m = 1..=r*`.
pub fn kernel_weights(r_star: u32) -> Vec<f64> {
    let c = bandwidth(r_star);
    (1..=r_star).map(|m| kernel_phi(m as f64 / c)).collect()
}

fn weighted_occupancy(occupancy: &Occupancy, cell: Cell, dir: Direction, weights: &[f64]) -> f64 {
    let (dr, dc) = dir.offset();
    let mut sum = 0.0;
    for (i, w) in weights.iter().enumerate() {
        let m = i as isize + 1;
        let r = cell.row as isize + dr * m;
        let c = cell.col as isize + dc * m;
        debug_assert!(r >= 0 && c >= 0, "ray left the grid");
        if occupancy.get(Cell::new(r as usize, c as usize)) {
            sum += w;
        }
    }
    sum / weights.len() as f64
}

/// Unclamped kernel estimate. Fully occupied rays give values slightly
/// above 1 (about 1.124 for `r* = 1`, 1.022 for `r* = 10`).
pub fn raw_density(occupancy: &Occupancy, cell: Cell, dir: Direction, r_star: u32) -> f64 {
    assert!(r_star >= 1, "density needs at least one free cell on the ray");
    weighted_occupancy(occupancy, cell, dir, &kernel_weights(r_star))
}

/// Crowd density along a ray, clamped to `[0, 1]`.
///
/// # Panics
/// When `r_star` is zero.
pub fn density(occupancy: &Occupancy, cell: Cell, dir: Direction, r_star: u32) -> f64 {
    raw_density(occupancy, cell, dir, r_star).clamp(0.0, 1.0)
}

/// Per-grid cache of `r*` for every walkable cell and direction, plus the
/// kernel weights for every ray length up to `r`.
#[derive(Debug, Clone)]
pub struct Perception {
    r: u32,
    width: usize,
    reach: Vec<[u32; 4]>,
    weights: Vec<Vec<f64>>,
}

impl Perception {
    pub fn new(grid: &Grid, r: u32) -> Self {
        let reach = grid
            .cells()
            .map(|c| {
                if grid.is_walkable(c) {
                    Direction::ALL.map(|d| obstacle_distance(grid, c, d, r))
                } else {
                    [0; 4]
                }
            })
            .collect();
        let weights = (0..=r).map(kernel_weights).collect();
        Perception {
            r,
            width: grid.width(),
            reach,
            weights,
        }
    }

    pub fn radius(&self) -> u32 {
        self.r
    }

    pub fn r_star(&self, cell: Cell, dir: Direction) -> u32 {
        self.reach[cell.row * self.width + cell.col][dir.index()]
    }

    /// Same value as [`density`] for this cell's cached `r*`.
    pub fn density(&self, occupancy: &Occupancy, cell: Cell, dir: Direction) -> f64 {
        let r_star = self.r_star(cell, dir);
        assert!(r_star >= 1, "density needs at least one free cell on the ray");
        weighted_occupancy(occupancy, cell, dir, &self.weights[r_star as usize]).clamp(0.0, 1.0)
    }
}
