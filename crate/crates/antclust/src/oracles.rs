//! Brute-force reference computations for test suites only (behind the
//! `test-oracles` feature, never part of the normal build).
//!
//! These deliberately avoid the data structures and neighbor enumeration
//! of the shipping implementations: adjacency is decided by toroidal
//! coordinate distances and components are grown by transitive closure,
//! so agreement with the union-find and flood-fill routes is meaningful.

use crate::grid::{Coord, GridWorld, ObjectType};
use crate::metrics::Adjacency;

/// True iff `a` and `b` are distinct cells whose toroidal row and column
/// distances make them neighbors under the given adjacency.
pub fn adjacent(a: Coord, b: Coord, height: usize, width: usize, adjacency: Adjacency) -> bool {
    if a == b {
        return false;
    }
    let dr = a.row.abs_diff(b.row);
    let dr = dr.min(height - dr);
    let dc = a.col.abs_diff(b.col);
    let dc = dc.min(width - dc);
    match adjacency {
        Adjacency::Eight => dr <= 1 && dc <= 1,
        Adjacency::Four => dr + dc == 1,
    }
}

/// Labels type-`t` clusters by transitive closure over the pairwise
/// adjacency relation. Quadratic in the number of objects; only suitable
/// for small grids. Output is normalized: cells sorted within clusters,
/// clusters sorted by first cell.
pub fn label_clusters_brute(
    grid: &GridWorld,
    t: ObjectType,
    adjacency: Adjacency,
) -> Vec<Vec<Coord>> {
    let dims = grid.dims();
    let cells: Vec<Coord> = grid
        .occupied_cells()
        .filter_map(|(c, ty)| (ty == t).then_some(c))
        .collect();
    let n = cells.len();
    // reachable[i][j] via repeated relaxation until a fixed point
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i == j || adjacent(cells[i], cells[j], dims.height, dims.width, adjacency))
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !reach[i][j] {
                    continue;
                }
                for k in 0..n {
                    if reach[j][k] && !reach[i][k] {
                        reach[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut assigned = vec![false; n];
    let mut clusters = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut cluster = Vec::new();
        for j in 0..n {
            if reach[i][j] {
                assigned[j] = true;
                cluster.push(cells[j]);
            }
        }
        cluster.sort();
        clusters.push(cluster);
    }
    clusters.sort_by_key(|cluster| cluster[0]);
    clusters
}

/// Normalizes a labeling for comparison across routes.
pub fn normalize(mut clusters: Vec<Vec<Coord>>) -> Vec<Vec<Coord>> {
    for cluster in &mut clusters {
        cluster.sort();
    }
    clusters.sort_by(|a, b| a[0].cmp(&b[0]));
    clusters
}
