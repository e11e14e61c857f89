//! Reader and writer for the plain-text scenario format.
//!
//! ```text
//! k_S = 4
//! k_P = 6
//! k_W = 4
//! r = 10
//! mu = 0.3
//! seed = 1
//! max_steps = 3000
//!
//! ##E##
//! #.P.#
//! #####
//! ```
//!
//! The parameter block and the map are separated by a blank line. Map
//! glyphs: `#` wall, `.` empty floor, `E` exit, `P` pedestrian on floor.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::grid::{Cell, Grid, GridError, Occupancy};
use super::params::{ParamError, ParamKey, ParamsBuilder};
use super::Scenario;

pub const WALL: char = '#';
pub const FLOOR: char = '.';
pub const EXIT: char = 'E';
pub const AGENT: char = 'P';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: map row has {found} cells, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Param { line: usize, source: ParamError },
    #[error("line {line}: parameter `{key}` given twice")]
    DuplicateParam { line: usize, key: ParamKey },
    #[error(transparent)]
    MissingParam(ParamError),
    #[error("scenario has no map section")]
    MissingMap,
    #[error("invalid map: {0}")]
    Grid(#[from] GridError),
}

/// Parses a complete scenario file.
pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();

    let mut idx = 0;
    while idx < lines.len() && lines[idx].trim().is_empty() {
        idx += 1;
    }

    let mut builder = ParamsBuilder::default();
    while idx < lines.len() && !lines[idx].trim().is_empty() {
        let line_no = idx + 1;
        let line = lines[idx];
        let Some((key, value)) = line.split_once('=') else {
            return Err(ParseError::Syntax {
                line: line_no,
                column: 1,
                message: format!("expected `key = value`, found `{}`", line.trim()),
            });
        };
        let key: ParamKey = key.trim().parse().map_err(|source| ParseError::Param {
            line: line_no,
            source,
        })?;
        if builder.seen(key) {
            return Err(ParseError::DuplicateParam { line: line_no, key });
        }
        builder.set(key, value).map_err(|source| ParseError::Param {
            line: line_no,
            source,
        })?;
        idx += 1;
    }
    let params = builder.finish().map_err(ParseError::MissingParam)?;

    while idx < lines.len() && lines[idx].trim().is_empty() {
        idx += 1;
    }
    let mut end = lines.len();
    while end > idx && lines[end - 1].trim().is_empty() {
        end -= 1;
    }
    if idx == end {
        return Err(ParseError::MissingMap);
    }

    let (grid, initial_agents) = parse_rows(&lines[idx..end], idx + 1)?;
    Ok(Scenario {
        grid,
        initial_agents,
        params,
    })
}

/// Parses a bare map (the second section of a scenario file, or an ASCII
/// snapshot) into geometry plus pedestrian positions.
pub fn parse_map(text: &str) -> Result<(Grid, Vec<Cell>), ParseError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .collect();
    let mut end = lines.len();
    while end > 0 && lines[end - 1].is_empty() {
        end -= 1;
    }
    if end == 0 {
        return Err(ParseError::MissingMap);
    }
    parse_rows(&lines[..end], 1)
}

fn parse_rows(rows: &[&str], first_line: usize) -> Result<(Grid, Vec<Cell>), ParseError> {
    let width = rows[0].chars().count();
    let mut walls = Vec::with_capacity(rows.len() * width);
    let mut exits = BTreeSet::new();
    let mut agents = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let line = first_line + r;
        let found = row.chars().count();
        if found == 0 {
            return Err(ParseError::Syntax {
                line,
                column: 1,
                message: "blank line inside map".to_string(),
            });
        }
        for (c, ch) in row.chars().enumerate() {
            let cell = Cell::new(r, c);
            match ch {
                WALL => walls.push(true),
                FLOOR => walls.push(false),
                EXIT => {
                    walls.push(false);
                    exits.insert(cell);
                }
                AGENT => {
                    walls.push(false);
                    agents.push(cell);
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        column: c + 1,
                        message: format!("unexpected map glyph {other:?}"),
                    })
                }
            }
        }
        if found != width {
            return Err(ParseError::RaggedRow {
                line,
                expected: width,
                found,
            });
        }
    }
    let grid = Grid::new(rows.len(), width, walls, exits)?;
    Ok((grid, agents))
}

/// Text raster of geometry with pedestrians drawn on top.
pub fn render_map(grid: &Grid, occupancy: &Occupancy) -> String {
    let mut out = String::with_capacity(grid.len() + grid.height());
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            let cell = Cell::new(row, col);
            out.push(if occupancy.get(cell) {
                AGENT
            } else if grid.is_wall(cell) {
                WALL
            } else if grid.is_exit(cell) {
                EXIT
            } else {
                FLOOR
            });
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut text = String::new();
        for key in ParamKey::ALL {
            let _ = writeln!(text, "{} = {}", key, self.params.get(key));
        }
        text.push('\n');
        let occ = Occupancy::from_cells(&self.grid, self.initial_agents.iter().copied());
        text.push_str(&render_map(&self.grid, &occ));
        f.write_str(&text)
    }
}
