//! Cell coordinates, move directions, static geometry and the occupancy matrix.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Physical edge length of one cell in metres. Informational only; the
/// simulation works in cells and steps.
pub const CELL_SIZE_M: f64 = 0.4;

/// A cell position, `row` counted from the top and `col` from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// One of the four von Neumann moves. The discriminant is the index used
/// by every 4-vector in the crate (up, right, down, left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up = 0,
    Right = 1,
    Down = 2,
    Left = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Right,
        Direction::Down,
        Direction::Left,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    /// Row/column offset of a single step.
    pub const fn offset(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Right => (0, 1),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
        }
    }

    pub const fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Right => Direction::Left,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Right => "right",
            Direction::Down => "down",
            Direction::Left => "left",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid must have at least one row and one column")]
    Empty,
    #[error("wall matrix has {found} cells, expected {expected}")]
    WallShape { expected: usize, found: usize },
    #[error("grid has no exit cells")]
    NoExit,
    #[error("exit {0} is outside the grid")]
    ExitOutOfBounds(Cell),
    #[error("exit {0} lies on a wall")]
    ExitOnWall(Cell),
}

/// Static geometry: wall matrix and exit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    height: usize,
    width: usize,
    walls: Vec<bool>,
    exit_mask: Vec<bool>,
    exits: BTreeSet<Cell>,
}

impl Grid {
    /// Builds a grid from a row-major wall matrix and a set of exit cells.
    pub fn new(
        height: usize,
        width: usize,
        walls: Vec<bool>,
        exits: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, GridError> {
        if height == 0 || width == 0 {
            return Err(GridError::Empty);
        }
        if walls.len() != height * width {
            return Err(GridError::WallShape {
                expected: height * width,
                found: walls.len(),
            });
        }
        let exits: BTreeSet<Cell> = exits.into_iter().collect();
        if exits.is_empty() {
            return Err(GridError::NoExit);
        }
        let mut exit_mask = vec![false; height * width];
        for &e in &exits {
            if e.row >= height || e.col >= width {
                return Err(GridError::ExitOutOfBounds(e));
            }
            let idx = e.row * width + e.col;
            if walls[idx] {
                return Err(GridError::ExitOnWall(e));
            }
            exit_mask[idx] = true;
        }
        Ok(Grid {
            height,
            width,
            walls,
            exit_mask,
            exits,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn exits(&self) -> &BTreeSet<Cell> {
        &self.exits
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width
    }

    /// Row-major index of an in-bounds cell.
    pub fn index(&self, cell: Cell) -> usize {
        debug_assert!(self.contains(cell), "{cell} out of bounds");
        cell.row * self.width + cell.col
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index / self.width, index % self.width)
    }

    /// Out-of-bounds cells count as walls.
    pub fn is_wall(&self, cell: Cell) -> bool {
        !self.contains(cell) || self.walls[self.index(cell)]
    }

    pub fn is_exit(&self, cell: Cell) -> bool {
        self.contains(cell) && self.exit_mask[self.index(cell)]
    }

    pub fn is_walkable(&self, cell: Cell) -> bool {
        !self.is_wall(cell)
    }

    pub fn is_border(&self, cell: Cell) -> bool {
        cell.row == 0 || cell.col == 0 || cell.row + 1 == self.height || cell.col + 1 == self.width
    }

    /// The cell `steps` moves away along `dir`, if it is inside the grid.
    pub fn offset(&self, cell: Cell, dir: Direction, steps: usize) -> Option<Cell> {
        let (dr, dc) = dir.offset();
        let row = cell.row as isize + dr * steps as isize;
        let col = cell.col as isize + dc * steps as isize;
        if row < 0 || col < 0 {
            return None;
        }
        let next = Cell::new(row as usize, col as usize);
        self.contains(next).then_some(next)
    }

    pub fn neighbor(&self, cell: Cell, dir: Direction) -> Option<Cell> {
        self.offset(cell, dir, 1)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.len()).map(|i| self.cell_at(i))
    }

    /// Copy of this grid with one cell's wall flag changed. Exits cannot be walled.
    pub fn with_wall(&self, cell: Cell, wall: bool) -> Result<Grid, GridError> {
        let mut walls = self.walls.clone();
        walls[self.index(cell)] = wall;
        Grid::new(self.height, self.width, walls, self.exits.iter().copied())
    }
}

/// The pedestrian occupancy matrix (one pedestrian per cell at most).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occupancy {
    height: usize,
    width: usize,
    cells: Vec<bool>,
}

impl Occupancy {
    pub fn new(height: usize, width: usize) -> Self {
        Occupancy {
            height,
            width,
            cells: vec![false; height * width],
        }
    }

    pub fn for_grid(grid: &Grid) -> Self {
        Occupancy::new(grid.height(), grid.width())
    }

    pub fn from_cells(grid: &Grid, cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut occ = Occupancy::for_grid(grid);
        for c in cells {
            occ.set(c, true);
        }
        occ
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Out-of-bounds cells read as empty.
    pub fn get(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width && self.cells[cell.row * self.width + cell.col]
    }

    pub fn set(&mut self, cell: Cell, occupied: bool) {
        assert!(
            cell.row < self.height && cell.col < self.width,
            "{cell} outside occupancy matrix"
        );
        self.cells[cell.row * self.width + cell.col] = occupied;
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn occupied_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let width = self.width;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(i, _)| Cell::new(i / width, i % width))
    }
}
