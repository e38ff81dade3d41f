//! Plain-text state serialization.
//!
//! Grid snapshot: one row per line, one character per cell — `.` empty,
//! `R` type-0 object, `B` type-1 object, digits `2`-`9` for further
//! types. Ant listing: one `row,col,loaded` line per ant in id order,
//! with `loaded` as `0` or `1`. Both formats are byte-stable for
//! identical states; the grid format also parses back for golden tests.

use thiserror::Error;

use crate::engine::Ant;
use crate::grid::{Coord, Dims, GridWorld, ObjectType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SnapshotError {
    #[error("object type {0} has no single-character encoding (max 10 types)")]
    TypeOutOfRange(usize),
    #[error("snapshot text is empty")]
    EmptyText,
    #[error("line {line}: row width {got} differs from first row width {expected}")]
    RaggedRow {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("line {line}, column {col}: invalid cell character {ch:?}")]
    InvalidChar { line: usize, col: usize, ch: char },
}

fn cell_char(t: ObjectType) -> Result<char, SnapshotError> {
    match t.id() {
        0 => Ok('R'),
        1 => Ok('B'),
        n @ 2..=9 => Ok(char::from_digit(n as u32, 10).unwrap()),
        n => Err(SnapshotError::TypeOutOfRange(n)),
    }
}

fn char_cell(ch: char) -> Option<Option<ObjectType>> {
    match ch {
        '.' => Some(None),
        'R' => Some(Some(ObjectType(0))),
        'B' => Some(Some(ObjectType(1))),
        '2'..='9' => Some(Some(ObjectType(ch.to_digit(10).unwrap() as u8))),
        _ => None,
    }
}

/// Renders the grid as text, one row per line with a trailing newline.
pub fn grid_to_text(grid: &GridWorld) -> Result<String, SnapshotError> {
    let dims = grid.dims();
    let mut out = String::with_capacity((dims.width + 1) * dims.height);
    for row in 0..dims.height {
        for col in 0..dims.width {
            match grid.object_at(Coord { row, col }) {
                None => out.push('.'),
                Some(t) => out.push(cell_char(t)?),
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses a grid snapshot. All rows must be the same width; a trailing
/// newline is accepted. Never panics on malformed input.
pub fn grid_from_text(text: &str) -> Result<GridWorld, SnapshotError> {
    let mut rows: Vec<&str> = text.split('\n').collect();
    if rows.last() == Some(&"") {
        rows.pop();
    }
    if rows.is_empty() {
        return Err(SnapshotError::EmptyText);
    }
    let width = rows[0].chars().count();
    if width == 0 {
        return Err(SnapshotError::EmptyText);
    }
    // validate shape before sizing the grid by rows * width
    for (r, row) in rows.iter().enumerate() {
        let got = row.chars().count();
        if got != width {
            return Err(SnapshotError::RaggedRow {
                line: r + 1,
                got,
                expected: width,
            });
        }
    }
    let mut grid = GridWorld::new(Dims::new(rows.len(), width));
    for (r, row) in rows.iter().enumerate() {
        for (c, ch) in row.chars().enumerate() {
            match char_cell(ch) {
                Some(None) => {}
                Some(Some(t)) => {
                    grid.place_object(Coord { row: r, col: c }, t)
                        .expect("fresh cell");
                }
                None => {
                    return Err(SnapshotError::InvalidChar {
                        line: r + 1,
                        col: c + 1,
                        ch,
                    })
                }
            }
        }
    }
    Ok(grid)
}

/// Renders the ant listing: `row,col,loaded` per ant in id order.
pub fn ants_to_text(ants: &[Ant]) -> String {
    let mut out = String::new();
    for ant in ants {
        out.push_str(&format!(
            "{},{},{}\n",
            ant.position.row,
            ant.position.col,
            if ant.load.is_some() { 1 } else { 0 }
        ));
    }
    out
}
