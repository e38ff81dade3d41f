//! Shared helpers for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use antclust::grid::{Coord, Dims, GridWorld, ObjectType};
use antclust::rng::RngStream;

/// Random occupancy grid driven by the crate's own deterministic stream:
/// dimensions in `[1, max_dim]`, 1-3 object types, fill density varying
/// by seed.
pub fn random_grid(seed: u64, max_dim: usize) -> GridWorld {
    let mut rng = RngStream::from_seed(seed);
    let height = 1 + rng.draw_index(max_dim);
    let width = 1 + rng.draw_index(max_dim);
    let num_types = 1 + rng.draw_index(3);
    let density = 0.05 + 0.5 * rng.draw();
    let mut grid = GridWorld::new(Dims::new(height, width));
    for row in 0..height {
        for col in 0..width {
            if rng.draw() < density {
                let t = ObjectType(rng.draw_index(num_types) as u8);
                grid.place_object(Coord { row, col }, t).unwrap();
            }
        }
    }
    grid
}

/// Types that actually occur on the grid.
pub fn present_types(grid: &GridWorld) -> Vec<ObjectType> {
    let mut types: Vec<ObjectType> = grid.occupied_cells().map(|(_, t)| t).collect();
    types.sort();
    types.dedup();
    types
}
