//! Toroidal 2-D lattice holding at most one typed object per cell.
//!
//! Geometry (coordinate wrapping, neighborhood enumeration) lives on
//! [`Dims`]; occupancy lives on [`GridWorld`]. The lattice wraps on both
//! axes, so agents travel off one side and re-enter from the other.

use thiserror::Error;

/// Cell coordinate, always in bounds after construction through [`Dims::wrap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// Object type label, a small id in `[0, L)`. The text snapshot format
/// caps L at 10 (one character per cell).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectType(pub u8);

impl ObjectType {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// Grid dimensions: `height` rows by `width` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub height: usize,
    pub width: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("cell ({}, {}) already holds an object", at.row, at.col)]
    Occupied { at: Coord },
    #[error("cell ({}, {}) holds no object", at.row, at.col)]
    Empty { at: Coord },
    #[error("neighborhood side {side} is invalid: {reason}")]
    BadNeighborhood { side: usize, reason: &'static str },
}

impl Dims {
    pub fn new(height: usize, width: usize) -> Self {
        assert!(
            height >= 1 && width >= 1,
            "grid dimensions must be positive"
        );
        Self { height, width }
    }

    pub fn cell_count(&self) -> usize {
        self.height * self.width
    }

    /// Maps arbitrary integer coordinates onto the torus using
    /// mathematical (non-negative) modulo.
    pub fn wrap(&self, raw_row: i64, raw_col: i64) -> Coord {
        Coord {
            row: raw_row.rem_euclid(self.height as i64) as usize,
            col: raw_col.rem_euclid(self.width as i64) as usize,
        }
    }

    /// The `s*s - 1` cells of the `s`-by-`s` square centered at `center`,
    /// excluding the center itself, wrapped on the torus, in row-major
    /// order of the offsets. `s` must be odd, at least 3, and no larger
    /// than the smaller grid dimension (so all cells are distinct).
    pub fn neighborhood(&self, center: Coord, s: usize) -> Result<Vec<Coord>, GridError> {
        self.check_side(s)?;
        let half = (s / 2) as i64;
        let mut cells = Vec::with_capacity(s * s - 1);
        for dr in -half..=half {
            for dc in -half..=half {
                if dr == 0 && dc == 0 {
                    continue;
                }
                cells.push(self.wrap(center.row as i64 + dr, center.col as i64 + dc));
            }
        }
        Ok(cells)
    }

    pub fn check_side(&self, s: usize) -> Result<(), GridError> {
        if s < 3 {
            return Err(GridError::BadNeighborhood {
                side: s,
                reason: "must be at least 3",
            });
        }
        if s % 2 == 0 {
            return Err(GridError::BadNeighborhood {
                side: s,
                reason: "must be odd",
            });
        }
        if s > self.height.min(self.width) {
            return Err(GridError::BadNeighborhood {
                side: s,
                reason: "exceeds the smaller grid dimension",
            });
        }
        Ok(())
    }

    /// Toroidal Chebyshev distance between two cells.
    pub fn chebyshev(&self, a: Coord, b: Coord) -> usize {
        let dr = a.row.abs_diff(b.row);
        let dc = a.col.abs_diff(b.col);
        let dr = dr.min(self.height - dr);
        let dc = dc.min(self.width - dc);
        dr.max(dc)
    }
}

/// The world lattice. Each cell is empty or holds one typed object;
/// per-type running counts make conservation checks O(types).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWorld {
    dims: Dims,
    cells: Vec<Option<ObjectType>>,
    counts: Vec<usize>,
}

impl GridWorld {
    pub fn new(dims: Dims) -> Self {
        Self {
            dims,
            cells: vec![None; dims.cell_count()],
            counts: Vec::new(),
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    fn index(&self, c: Coord) -> usize {
        debug_assert!(c.row < self.dims.height && c.col < self.dims.width);
        c.row * self.dims.width + c.col
    }

    pub fn object_at(&self, c: Coord) -> Option<ObjectType> {
        self.cells[self.index(c)]
    }

    pub fn is_empty_cell(&self, c: Coord) -> bool {
        self.object_at(c).is_none()
    }

    /// Places an object on an empty cell. Placing onto an occupied cell is
    /// an engine logic bug and is surfaced as an error, never ignored.
    pub fn place_object(&mut self, c: Coord, t: ObjectType) -> Result<(), GridError> {
        let i = self.index(c);
        if self.cells[i].is_some() {
            return Err(GridError::Occupied { at: c });
        }
        self.cells[i] = Some(t);
        if self.counts.len() <= t.id() {
            self.counts.resize(t.id() + 1, 0);
        }
        self.counts[t.id()] += 1;
        Ok(())
    }

    /// Removes and returns the object at `c`. Removing from an empty cell
    /// is an engine logic bug and is surfaced as an error.
    pub fn remove_object(&mut self, c: Coord) -> Result<ObjectType, GridError> {
        let i = self.index(c);
        match self.cells[i].take() {
            Some(t) => {
                self.counts[t.id()] -= 1;
                Ok(t)
            }
            None => Err(GridError::Empty { at: c }),
        }
    }

    pub fn object_count(&self, t: ObjectType) -> usize {
        self.counts.get(t.id()).copied().unwrap_or(0)
    }

    pub fn total_objects(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Occupied cells with their objects, in row-major order.
    pub fn occupied_cells(&self) -> impl Iterator<Item = (Coord, ObjectType)> + '_ {
        self.cells.iter().enumerate().filter_map(move |(i, cell)| {
            cell.map(|t| {
                (
                    Coord {
                        row: i / self.dims.width,
                        col: i % self.dims.width,
                    },
                    t,
                )
            })
        })
    }

    /// Count of type-`t` objects among the `s*s - 1` neighbors of `center`.
    /// Allocation-free equivalent of scanning [`Dims::neighborhood`]; the
    /// engine's inner loop calls this once per ant decision.
    pub fn count_type_in_neighborhood(&self, center: Coord, s: usize, t: ObjectType) -> usize {
        debug_assert!(self.dims.check_side(s).is_ok());
        let half = (s / 2) as i64;
        let mut count = 0;
        for dr in -half..=half {
            for dc in -half..=half {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let n = self
                    .dims
                    .wrap(center.row as i64 + dr, center.col as i64 + dc);
                if self.object_at(n) == Some(t) {
                    count += 1;
                }
            }
        }
        count
    }
}
