//! Fixture generators and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use ffca_core::engine::seeded_rng;
use ffca_core::engine::SimRng;
use ffca_core::scenario::{Cell, Grid, ModelParams, Occupancy, Scenario};
use ffca_core::transition::Landscape;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn rng(seed: u64) -> SimRng {
    seeded_rng(seed, 0xacce)
}

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

pub fn load_scenario(name: &str) -> Scenario {
    let text = std::fs::read_to_string(scenario_path(name)).expect("scenario file");
    ffca_core::parse_scenario(&text).expect("scenario parses")
}

pub fn params(k_s: f64, k_p: f64, k_w: f64, r: u32, mu: f64) -> ModelParams {
    ModelParams {
        k_s,
        k_p,
        k_w,
        r,
        mu,
        seed: 0,
        max_steps: 1000,
    }
}

/// Random grid with `wall_frac` interior walls and `exits` exit cells
/// placed on free cells. With `enclosed`, the border is wall and exits are
/// cut into it.
pub fn random_grid(rng: &mut SimRng, h: usize, w: usize, wall_frac: f64, exits: usize, enclosed: bool) -> Grid {
    loop {
        let mut walls = vec![false; h * w];
        for r in 0..h {
            for c in 0..w {
                let border = r == 0 || c == 0 || r + 1 == h || c + 1 == w;
                walls[r * w + c] = if enclosed && border {
                    true
                } else {
                    rng.random_bool(wall_frac)
                };
            }
        }
        let candidates: Vec<Cell> = (0..h)
            .flat_map(|r| (0..w).map(move |c| Cell::new(r, c)))
            .filter(|c| {
                if enclosed {
                    let corner = (c.row == 0 || c.row + 1 == h) && (c.col == 0 || c.col + 1 == w);
                    let border = c.row == 0 || c.col == 0 || c.row + 1 == h || c.col + 1 == w;
                    border && !corner
                } else {
                    true
                }
            })
            .collect();
        let chosen: Vec<Cell> = candidates.choose_multiple(rng, exits).copied().collect();
        for e in &chosen {
            walls[e.row * w + e.col] = false;
        }
        if let Ok(g) = Grid::new(h, w, walls, chosen) {
            return g;
        }
    }
}

/// Random occupancy of walkable cells with probability `fill`.
pub fn random_occupancy(rng: &mut SimRng, grid: &Grid, fill: f64) -> Occupancy {
    let cells: Vec<Cell> = grid
        .cells()
        .filter(|&c| grid.is_walkable(c) && rng.random_bool(fill))
        .collect();
    Occupancy::from_cells(grid, cells)
}

pub fn random_params(rng: &mut SimRng, k_max: f64, r_max: u32) -> ModelParams {
    let k_s = rng.random_range(0.0..k_max);
    params(
        k_s,
        rng.random_range(0.0..k_max),
        rng.random_range(0.0..k_max),
        rng.random_range(1..=r_max),
        rng.random_range(0.0..=1.0),
    )
}

/// A transition fixture: landscape, occupancy, a reachable focal cell and parameters.
pub struct Fixture {
    pub land: Landscape,
    pub occupancy: Occupancy,
    pub cell: Cell,
    pub params: ModelParams,
}

pub fn random_fixture(rng: &mut SimRng, k_max: f64) -> Fixture {
    loop {
        let h = rng.random_range(4..=14);
        let w = rng.random_range(4..=14);
        let exits = rng.random_range(1..=3);
        let wall_frac = rng.random_range(0.0..0.35);
        let grid = random_grid(rng, h, w, wall_frac, exits, false);
        let params = random_params(rng, k_max, 12);
        let land = Landscape::new(grid, params.r);
        let reachable: Vec<Cell> = land
            .grid
            .cells()
            .filter(|&c| land.field.is_finite(c))
            .collect();
        let Some(&cell) = reachable.choose(rng) else {
            continue;
        };
        let fill = rng.random_range(0.0..0.9);
        let occupancy = random_occupancy(rng, &land.grid, fill);
        return Fixture {
            land,
            occupancy,
            cell,
            params,
        };
    }
}

/// Bellman–Ford over the 8-neighbour graph, independent of the library's
/// Dijkstra. Orthogonal edges cost 1, diagonal √2; a diagonal edge needs
/// both cells it passes to be free.
pub fn sff_oracle(grid: &Grid) -> Vec<f64> {
    let (h, w) = (grid.height() as isize, grid.width() as isize);
    let free = |r: isize, c: isize| r >= 0 && c >= 0 && r < h && c < w && !grid.is_wall(Cell::new(r as usize, c as usize));
    let mut dist = vec![f64::INFINITY; (h * w) as usize];
    for e in grid.exits() {
        dist[e.row * w as usize + e.col] = 0.0;
    }
    let mut moves = Vec::new();
    for dr in -1isize..=1 {
        for dc in -1isize..=1 {
            if (dr, dc) != (0, 0) {
                moves.push((dr, dc));
            }
        }
    }
    loop {
        let mut changed = false;
        for r in 0..h {
            for c in 0..w {
                if !free(r, c) {
                    continue;
                }
                let here = (r * w + c) as usize;
                for &(dr, dc) in &moves {
                    let (nr, nc) = (r + dr, c + dc);
                    if !free(nr, nc) {
                        continue;
                    }
                    let cost = if dr != 0 && dc != 0 {
                        if !free(r + dr, c) || !free(r, c + dc) {
                            continue;
                        }
                        2f64.sqrt()
                    } else {
                        1.0
                    };
                    let cand = dist[(nr * w + nc) as usize] + cost;
                    if cand < dist[here] {
                        dist[here] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return dist;
        }
    }
}

/// Kernel density straight from its definition, without clamping.
pub fn density_oracle(occupied: &[bool]) -> f64 {
    let r_star = occupied.len() as f64;
    let c = (r_star + 1.0) / 5f64.sqrt();
    let phi = |z: f64| {
        if z.abs() <= 5f64.sqrt() {
            (0.335 - 0.067 * z * z) * 4.4742
        } else {
            0.0
        }
    };
    occupied
        .iter()
        .enumerate()
        .map(|(i, &o)| if o { phi((i + 1) as f64 / c) } else { 0.0 })
        .sum::<f64>()
        / r_star
}
