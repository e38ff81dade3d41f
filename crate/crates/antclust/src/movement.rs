//! Ant movement: one-cell random walk for the baseline algorithm, and
//! binary-genome recombination + mutation for the hybrid variant.
//!
//! The hybrid step treats the ant's (row, column) pair as two fixed-width
//! bitstrings. The two coordinates act as the two parents of a
//! single-point crossover; both children are kept and become the new
//! (row, column) after per-bit mutation. Decoding reduces each bitstring
//! modulo the grid dimension, so any genome maps to an in-bounds cell
//! with a fixed number of random draws.

use thiserror::Error;

use crate::grid::{Coord, Dims};
use crate::rng::RngStream;

/// Which cells count as one-step moves for the baseline walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborhoodKind {
    /// 8 surrounding cells.
    Moore,
    /// 4 axis-aligned cells.
    VonNeumann,
}

/// Row-major offsets of the 8-cell Moore ring.
#[rustfmt::skip]
const MOORE_OFFSETS: [(i64, i64); 8] = [
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1),           (0, 1),
    (1, -1),  (1, 0),  (1, 1),
];

/// Row-major offsets of the 4-cell von Neumann cross.
const VON_NEUMANN_OFFSETS: [(i64, i64); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];

/// Genetic-operator parameters for the hybrid movement step.
#[derive(Clone, Copy, Debug)]
pub struct GaParams {
    /// Per-bit flip probability, in `[0, 1]`.
    pub mutation_rate: f64,
    /// Whether the single-point crossover of the two coordinates runs.
    pub crossover: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MovementError {
    #[error("bit width {width} cannot encode coordinate ({}, {})", coord.row, coord.col)]
    WidthTooSmall { coord: Coord, width: u32 },
}

/// Fixed-width binary encoding of a cell location. `row` and `col` hold
/// the coordinate values; bit `i` of a bitstring (0 = leftmost) is bit
/// `width - 1 - i` of the integer, i.e. the usual big-endian digit order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genome {
    row: u64,
    col: u64,
    width: u32,
}

/// Bits needed to index the larger grid dimension: `ceil(log2(max(Y, Z)))`.
pub fn bit_width(dims: Dims) -> u32 {
    let max = dims.height.max(dims.width) as u64;
    if max <= 1 {
        1
    } else {
        u64::BITS - (max - 1).leading_zeros()
    }
}

impl Genome {
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Bitstring of the row coordinate, most significant bit first.
    pub fn row_bits(&self) -> String {
        bits_to_string(self.row, self.width)
    }

    /// Bitstring of the column coordinate, most significant bit first.
    pub fn col_bits(&self) -> String {
        bits_to_string(self.col, self.width)
    }

    /// Builds a genome from explicit bitstrings such as `"0000011"`.
    /// Both strings must be the same length and contain only `0`/`1`.
    pub fn from_bit_strings(row: &str, col: &str) -> Self {
        assert_eq!(row.len(), col.len(), "bitstrings must have equal width");
        assert!(!row.is_empty() && row.len() <= 64);
        Self {
            row: string_to_bits(row),
            col: string_to_bits(col),
            width: row.len() as u32,
        }
    }
}

fn bits_to_string(value: u64, width: u32) -> String {
    (0..width)
        .map(|i| {
            if value >> (width - 1 - i) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn string_to_bits(s: &str) -> u64 {
    s.chars().fold(0u64, |acc, ch| match ch {
        '0' => acc << 1,
        '1' => acc << 1 | 1,
        _ => panic!("bitstring may contain only 0 and 1"),
    })
}

/// Encodes a coordinate as two zero-padded big-endian bitstrings of
/// `width` bits each. A width too small for the coordinate is a
/// configuration error.
pub fn encode(c: Coord, width: u32) -> Result<Genome, MovementError> {
    let limit = if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    if width == 0 || width > 64 || c.row as u64 > limit || c.col as u64 > limit {
        return Err(MovementError::WidthTooSmall { coord: c, width });
    }
    Ok(Genome {
        row: c.row as u64,
        col: c.col as u64,
        width,
    })
}

/// Interprets the bitstrings as unsigned integers and reduces them modulo
/// the grid dimensions, so the result is always in bounds.
pub fn decode(g: &Genome, dims: Dims) -> Coord {
    Coord {
        row: (g.row % dims.height as u64) as usize,
        col: (g.col % dims.width as u64) as usize,
    }
}

/// Single-point crossover with the row and column bitstrings as the two
/// parents, keeping both children: the child row is `row[0..cut)` spliced
/// with `col[cut..width)`, and the child column is the complement.
/// `cut` must lie in `[1, width - 1]`.
pub fn recombine(g: &Genome, cut: u32) -> Genome {
    assert!(
        cut >= 1 && cut < g.width,
        "cut {cut} outside [1, {})",
        g.width
    );
    let low_bits = g.width - cut;
    let low_mask = if low_bits >= 64 {
        u64::MAX
    } else {
        (1u64 << low_bits) - 1
    };
    let high_mask = !low_mask
        & if g.width >= 64 {
            u64::MAX
        } else {
            (1u64 << g.width) - 1
        };
    Genome {
        row: (g.row & high_mask) | (g.col & low_mask),
        col: (g.col & high_mask) | (g.row & low_mask),
        width: g.width,
    }
}

/// Flips each bit independently when its draw falls below `rate`.
/// `draws` supplies exactly `2 * width` uniform values in stream order:
/// row bits first, then column bits, each from the most significant bit.
pub fn mutate(g: &Genome, draws: &[f64], rate: f64) -> Genome {
    assert_eq!(draws.len(), 2 * g.width as usize, "need 2 * width draws");
    let mut row = g.row;
    let mut col = g.col;
    for i in 0..g.width {
        if draws[i as usize] < rate {
            row ^= 1 << (g.width - 1 - i);
        }
    }
    for i in 0..g.width {
        if draws[(g.width + i) as usize] < rate {
            col ^= 1 << (g.width - 1 - i);
        }
    }
    Genome {
        row,
        col,
        width: g.width,
    }
}

/// One-cell random walk: picks one of the wrapped neighbor cells
/// uniformly from a single draw. Never returns the current cell.
pub fn step_random(c: Coord, draw: f64, dims: Dims, kind: NeighborhoodKind) -> Coord {
    let offsets: &[(i64, i64)] = match kind {
        NeighborhoodKind::Moore => &MOORE_OFFSETS,
        NeighborhoodKind::VonNeumann => &VON_NEUMANN_OFFSETS,
    };
    let idx = ((draw * offsets.len() as f64) as usize).min(offsets.len() - 1);
    let (dr, dc) = offsets[idx];
    dims.wrap(c.row as i64 + dr, c.col as i64 + dc)
}

/// The hybrid movement step: encode, crossover (one cut draw when
/// enabled), mutate (2 * width draws in fixed order), decode. Draw order
/// is part of the trajectory contract.
pub fn step_ga(c: Coord, params: &GaParams, dims: Dims, rng: &mut RngStream) -> Coord {
    let width = bit_width(dims);
    let genome = encode(c, width).expect("bit width derived from dims always fits");
    let genome = if params.crossover && width >= 2 {
        let cut = 1 + rng.draw_index(width as usize - 1) as u32;
        recombine(&genome, cut)
    } else {
        genome
    };
    let mut draws = [0.0f64; 128];
    let n = 2 * width as usize;
    for d in &mut draws[..n] {
        *d = rng.draw();
    }
    let genome = mutate(&genome, &draws[..n], params.mutation_rate);
    decode(&genome, dims)
}
