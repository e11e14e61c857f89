//! Static floor field: shortest distance from every cell to the nearest exit.
//!
//! Distances are built from orthogonal steps of length 1 and diagonal steps
//! of length √2, so every finite value is exactly `a + b·√2` for
//! non-negative integers `a`, `b`. The field stores that pair instead of a
//! float. Comparisons during the search are exact, and differences between
//! neighbours are formed from integer differences before conversion, which
//! makes `ΔS` independent of any constant offset applied to the whole field.
//!
//! Diagonal steps exist only here. A diagonal move from `(i,j)` to
//! `(i±1,j±1)` is allowed only when both orthogonal cells it passes,
//! `(i±1,j)` and `(i,j±1)`, are free; moving through a wall corner is not.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;
use std::fmt::Write as _;
use std::ops::Add;

use crate::scenario::{Cell, Direction, Grid};

/// Sentinel returned by [`delta_s`] for directions that lead into a wall.
pub const NEG_INF: f64 = f64::NEG_INFINITY;

/// A path length `orthogonal + diagonal·√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PathLength {
    pub orthogonal: u32,
    pub diagonal: u32,
}

impl PathLength {
    pub const ZERO: PathLength = PathLength {
        orthogonal: 0,
        diagonal: 0,
    };
    pub const ORTHOGONAL_STEP: PathLength = PathLength {
        orthogonal: 1,
        diagonal: 0,
    };
    pub const DIAGONAL_STEP: PathLength = PathLength {
        orthogonal: 0,
        diagonal: 1,
    };

    pub const fn new(orthogonal: u32, diagonal: u32) -> Self {
        PathLength {
            orthogonal,
            diagonal,
        }
    }

    pub fn value(self) -> f64 {
        self.orthogonal as f64 + self.diagonal as f64 * SQRT_2
    }

    /// `self − other` as a float, with the integer parts subtracted first.
    pub fn difference(self, other: PathLength) -> f64 {
        let a = self.orthogonal as i64 - other.orthogonal as i64;
        let b = self.diagonal as i64 - other.diagonal as i64;
        a as f64 + b as f64 * SQRT_2
    }
}

impl Add for PathLength {
    type Output = PathLength;

    fn add(self, rhs: PathLength) -> PathLength {
        PathLength {
            orthogonal: self.orthogonal + rhs.orthogonal,
            diagonal: self.diagonal + rhs.diagonal,
        }
    }
}

impl Ord for PathLength {
    /// Exact comparison of `a + b√2` values via the sign of `x + y√2`.
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.orthogonal as i128 - other.orthogonal as i128;
        let y = self.diagonal as i128 - other.diagonal as i128;
        match (x.signum(), y.signum()) {
            (0, 0) => Ordering::Equal,
            (sx, sy) if sx >= 0 && sy >= 0 => Ordering::Greater,
            (sx, sy) if sx <= 0 && sy <= 0 => Ordering::Less,
            // opposite signs: |x| against |y|√2, squared
            (1, _) => (x * x).cmp(&(2 * y * y)),
            _ => (2 * y * y).cmp(&(x * x)),
        }
    }
}

impl PartialOrd for PathLength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The field `S`, shaped like its grid. `None` marks walls and cells no
/// exit can reach; both read as `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticField {
    height: usize,
    width: usize,
    lengths: Vec<Option<PathLength>>,
}

const DIAGONALS: [(isize, isize); 4] = [(-1, -1), (-1, 1), (1, -1), (1, 1)];

/// Multi-source Dijkstra from every exit cell at once.
pub fn compute_sff(grid: &Grid) -> StaticField {
    let (height, width) = (grid.height(), grid.width());
    let mut lengths: Vec<Option<PathLength>> = vec![None; grid.len()];
    let mut heap = BinaryHeap::new();
    for &exit in grid.exits() {
        let idx = grid.index(exit);
        lengths[idx] = Some(PathLength::ZERO);
        heap.push(Reverse((PathLength::ZERO, idx)));
    }

    let free = |r: isize, c: isize| -> bool {
        r >= 0
            && c >= 0
            && (r as usize) < height
            && (c as usize) < width
            && grid.is_walkable(Cell::new(r as usize, c as usize))
    };

    while let Some(Reverse((dist, idx))) = heap.pop() {
        if lengths[idx] != Some(dist) {
            continue;
        }
        let (r, c) = ((idx / width) as isize, (idx % width) as isize);
        let mut relax = |nr: isize, nc: isize, step: PathLength| {
            let nidx = nr as usize * width + nc as usize;
            let cand = dist + step;
            if lengths[nidx].is_none_or(|cur| cand < cur) {
                lengths[nidx] = Some(cand);
                heap.push(Reverse((cand, nidx)));
            }
        };
        for dir in Direction::ALL {
            let (dr, dc) = dir.offset();
            if free(r + dr, c + dc) {
                relax(r + dr, c + dc, PathLength::ORTHOGONAL_STEP);
            }
        }
        for (dr, dc) in DIAGONALS {
            if free(r + dr, c + dc) && free(r + dr, c) && free(r, c + dc) {
                relax(r + dr, c + dc, PathLength::DIAGONAL_STEP);
            }
        }
    }

    StaticField {
        height,
        width,
        lengths,
    }
}

impl StaticField {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn slot(&self, cell: Cell) -> Option<usize> {
        (cell.row < self.height && cell.col < self.width).then(|| cell.row * self.width + cell.col)
    }

    /// Exact length at `cell`; `None` for walls, unreachable cells and
    /// positions outside the grid.
    pub fn length(&self, cell: Cell) -> Option<PathLength> {
        self.slot(cell).and_then(|i| self.lengths[i])
    }

    /// `S` at `cell` in steps, `+∞` where [`length`](Self::length) is `None`.
    pub fn get(&self, cell: Cell) -> f64 {
        self.length(cell).map_or(f64::INFINITY, PathLength::value)
    }

    pub fn is_finite(&self, cell: Cell) -> bool {
        self.length(cell).is_some()
    }

    /// Row-major values, `+∞` for unreachable cells.
    pub fn values(&self) -> Vec<f64> {
        self.lengths
            .iter()
            .map(|l| l.map_or(f64::INFINITY, PathLength::value))
            .collect()
    }

    /// The same field with `offset` added to every finite value.
    pub fn shifted(&self, offset: PathLength) -> StaticField {
        StaticField {
            height: self.height,
            width: self.width,
            lengths: self.lengths.iter().map(|l| l.map(|v| v + offset)).collect(),
        }
    }

    /// `ΔS` from `cell` toward `dir`. See [`delta_s`].
    pub fn delta_s(&self, grid: &Grid, cell: Cell, dir: Direction) -> f64 {
        let Some(here) = self.length(cell) else {
            return NEG_INF;
        };
        match grid.neighbor(cell, dir) {
            Some(n) if grid.is_walkable(n) => match self.length(n) {
                Some(there) => here.difference(there),
                None => NEG_INF,
            },
            _ => NEG_INF,
        }
    }

    /// All four deltas in direction order.
    pub fn deltas(&self, grid: &Grid, cell: Cell) -> [f64; 4] {
        Direction::ALL.map(|d| self.delta_s(grid, cell, d))
    }

    /// Row-major CSV, one grid row per line, `inf` for infinity.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in 0..self.height {
            for col in 0..self.width {
                if col > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", self.get(Cell::new(row, col)));
            }
            out.push('\n');
        }
        out
    }
}

/// `S[cell] − S[neighbour]`: positive when the neighbour is closer to an
/// exit. Returns [`NEG_INF`] when the neighbour is a wall, lies outside the
/// grid, or has no finite distance.
pub fn delta_s(field: &StaticField, grid: &Grid, cell: Cell, dir: Direction) -> f64 {
    field.delta_s(grid, cell, dir)
}

/// Largest of the four deltas, ignoring sentinel directions; [`NEG_INF`]
/// when every neighbour is a wall.
pub fn max_delta_s(field: &StaticField, grid: &Grid, cell: Cell) -> f64 {
    field
        .deltas(grid, cell)
        .into_iter()
        .fold(NEG_INF, f64::max)
}
