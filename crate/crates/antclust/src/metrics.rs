//! Cluster statistics over a grid snapshot.
//!
//! A cluster is a maximal connected component of same-type objects under
//! 8-adjacency (configurable to 4) with toroidal wrap; singletons count.
//! Objects of different types never merge. Carried objects have no grid
//! location: they are excluded from labeling but enter the cluster
//! totals as singletons (un-clustered mass in transit), alongside an
//! explicit carried count. Two independent labeling routes are provided
//! so they can be cross-checked: union-find and breadth-first flood fill.

use std::collections::BTreeMap;

use crate::engine::Ant;
use crate::grid::{Coord, GridWorld, ObjectType};

/// Cell adjacency used when joining objects into clusters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Eight,
    Four,
}

impl Adjacency {
    #[rustfmt::skip]
    fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Adjacency::Eight => &[
                (-1, -1), (-1, 0), (-1, 1),
                (0, -1),           (0, 1),
                (1, -1),  (1, 0),  (1, 1),
            ],
            Adjacency::Four => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
        }
    }
}

/// Sensitivity knobs for cluster counting.
#[derive(Clone, Copy, Debug)]
pub struct ClusterParams {
    pub adjacency: Adjacency,
    /// Components smaller than this are left out of the cluster counts.
    /// The size histogram and largest-cluster size always cover every
    /// component, so the histogram total still accounts for every
    /// on-grid object.
    pub min_size: usize,
}

impl Default for ClusterParams {
    fn default() -> Self {
        Self {
            adjacency: Adjacency::Eight,
            min_size: 1,
        }
    }
}

/// Per-checkpoint cluster statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport {
    pub iteration: u64,
    pub clusters_by_type: Vec<usize>,
    pub clusters_total: usize,
    pub largest_cluster: usize,
    pub size_histogram: BTreeMap<usize, usize>,
    pub carried_count: usize,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Partitions the type-`t` objects into connected components via
/// union-find. Clusters are ordered by their first cell in row-major
/// order and each cluster's cells are sorted, so output is deterministic.
pub fn label_clusters(grid: &GridWorld, t: ObjectType, adjacency: Adjacency) -> Vec<Vec<Coord>> {
    let cells: Vec<Coord> = grid
        .occupied_cells()
        .filter_map(|(c, ty)| (ty == t).then_some(c))
        .collect();
    let index: BTreeMap<Coord, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dims = grid.dims();
    let mut uf = UnionFind::new(cells.len());
    for (i, &c) in cells.iter().enumerate() {
        for &(dr, dc) in adjacency.offsets() {
            let n = dims.wrap(c.row as i64 + dr, c.col as i64 + dc);
            if n == c {
                continue; // wrapped onto itself on a degenerate dimension
            }
            if let Some(&j) = index.get(&n) {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Coord>> = BTreeMap::new();
    let mut first_seen: Vec<usize> = Vec::new();
    for (i, &c) in cells.iter().enumerate() {
        let root = uf.find(i);
        by_root
            .entry(root)
            .or_insert_with(|| {
                first_seen.push(root);
                Vec::new()
            })
            .push(c);
    }
    let mut clusters: Vec<Vec<Coord>> = first_seen
        .into_iter()
        .map(|root| {
            let mut cluster = by_root.remove(&root).unwrap();
            cluster.sort();
            cluster
        })
        .collect();
    clusters.sort_by_key(|cluster| cluster[0]);
    clusters
}

/// Independent labeling route: breadth-first flood fill with its own
/// neighbor enumeration. Kept separate from [`label_clusters`] on purpose
/// so the two can be compared in tests.
pub fn label_clusters_flood(
    grid: &GridWorld,
    t: ObjectType,
    adjacency: Adjacency,
) -> Vec<Vec<Coord>> {
    let dims = grid.dims();
    let (h, w) = (dims.height as i64, dims.width as i64);
    let deltas: Vec<(i64, i64)> = match adjacency {
        Adjacency::Eight => (-1..=1)
            .flat_map(|dr| (-1..=1).map(move |dc| (dr, dc)))
            .filter(|&(dr, dc)| !(dr == 0 && dc == 0))
            .collect(),
        Adjacency::Four => vec![(-1, 0), (1, 0), (0, -1), (0, 1)],
    };
    let mut visited = vec![false; dims.cell_count()];
    let mut clusters = Vec::new();
    for (start, ty) in grid.occupied_cells() {
        if ty != t || visited[start.row * dims.width + start.col] {
            continue;
        }
        let mut cluster = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        visited[start.row * dims.width + start.col] = true;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            cluster.push(c);
            for &(dr, dc) in &deltas {
                let nr = ((c.row as i64 + dr) % h + h) % h;
                let nc = ((c.col as i64 + dc) % w + w) % w;
                let n = Coord::new(nr as usize, nc as usize);
                let flat = n.row * dims.width + n.col;
                if !visited[flat] && grid.object_at(n) == Some(t) {
                    visited[flat] = true;
                    queue.push_back(n);
                }
            }
        }
        cluster.sort();
        clusters.push(cluster);
    }
    clusters.sort_by_key(|cluster| cluster[0]);
    clusters
}

/// Aggregates per-type labelings into one report. `num_types` fixes the
/// length of `clusters_by_type` regardless of which types currently have
/// objects on the grid.
///
/// A carried object is un-clustered mass in transit: it contributes one
/// singleton cluster of its type to the counts. Labeling, the size
/// histogram, and the largest-cluster size cover on-grid objects only,
/// so the histogram total always equals the on-grid object count and
/// `carried_count` keeps the conservation sum auditable.
pub fn report(
    grid: &GridWorld,
    ants: &[Ant],
    iteration: u64,
    num_types: usize,
    params: &ClusterParams,
) -> ClusterReport {
    let mut clusters_by_type = Vec::with_capacity(num_types);
    let mut size_histogram = BTreeMap::new();
    let mut largest_cluster = 0;
    for id in 0..num_types {
        let t = ObjectType(id as u8);
        let clusters = label_clusters(grid, t, params.adjacency);
        let counted = clusters
            .iter()
            .filter(|cl| cl.len() >= params.min_size)
            .count();
        // carried singletons obey the same minimum-size rule
        let carried = if params.min_size <= 1 {
            ants.iter().filter(|a| a.load == Some(t)).count()
        } else {
            0
        };
        clusters_by_type.push(counted + carried);
        for cluster in &clusters {
            *size_histogram.entry(cluster.len()).or_insert(0) += 1;
            largest_cluster = largest_cluster.max(cluster.len());
        }
    }
    ClusterReport {
        iteration,
        clusters_total: clusters_by_type.iter().sum(),
        clusters_by_type,
        largest_cluster,
        size_histogram,
        carried_count: ants.iter().filter(|a| a.load.is_some()).count(),
    }
}
