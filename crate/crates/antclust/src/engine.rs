//! The simulation loop: random initialization, the per-iteration per-ant
//! update (density, pick/drop decision, movement), checkpoint reporting,
//! and end-of-run finalization.
//!
//! Ants are processed sequentially in ascending id order within an
//! iteration, each seeing the grid as already modified by lower-id ants.
//! Every stochastic choice draws from the run's single [`RngStream`] in a
//! fixed order, so a `(config, seed)` pair fully determines the
//! trajectory. Draw accounting per ant update: one draw per pick/drop
//! decision actually made, one per baseline walk step, and `1 + 2B` per
//! hybrid step (cut point plus per-bit mutation draws, `B` = genome bit
//! width; the cut draw is skipped when crossover is disabled).

use crate::config::{Algorithm, ConfigError, SimConfig};
use crate::grid::{Coord, GridWorld, ObjectType};
use crate::metrics::{self, ClusterParams, ClusterReport};
use crate::movement::{self, GaParams};
use crate::rng::RngStream;
use crate::rules;

/// One agent: a position and an optional carried object. Carried objects
/// are off-grid; they re-enter the grid on drop or at finalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ant {
    pub id: usize,
    pub position: Coord,
    pub load: Option<ObjectType>,
}

/// Full simulation state between iterations.
#[derive(Clone, Debug)]
pub struct SimState {
    pub grid: GridWorld,
    pub ants: Vec<Ant>,
    pub t: u64,
    rng: RngStream,
}

/// A copy of the world at one iteration, for snapshot output.
#[derive(Clone, Debug)]
pub struct StateSnapshot {
    pub iteration: u64,
    pub grid: GridWorld,
    pub ants: Vec<Ant>,
}

/// What a full run produces: the final state, cluster reports at every
/// checkpoint plus one final post-finalization report, and the requested
/// state snapshots.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub final_state: SimState,
    pub reports: Vec<ClusterReport>,
    pub snapshots: Vec<StateSnapshot>,
}

/// Places objects, then ants, uniformly at random. Objects are placed
/// type by type via rejection sampling over empty cells (one draw per
/// attempt); ants may share cells with anything, so each ant takes
/// exactly one draw. The config is validated before any draw.
pub fn initialize(cfg: &SimConfig) -> Result<SimState, ConfigError> {
    cfg.validate()?;
    let dims = cfg.dims();
    let mut rng = RngStream::from_seed(cfg.seed);
    let mut grid = GridWorld::new(dims);
    for (type_id, &count) in cfg.objects_per_type.iter().enumerate() {
        let t = ObjectType(type_id as u8);
        for _ in 0..count {
            loop {
                let c = draw_cell(&mut rng, dims.height, dims.width);
                if grid.is_empty_cell(c) {
                    grid.place_object(c, t).expect("cell checked empty");
                    break;
                }
            }
        }
    }
    let ants = (0..cfg.ants)
        .map(|id| Ant {
            id,
            position: draw_cell(&mut rng, dims.height, dims.width),
            load: None,
        })
        .collect();
    Ok(SimState {
        grid,
        ants,
        t: 0,
        rng,
    })
}

fn draw_cell(rng: &mut RngStream, height: usize, width: usize) -> Coord {
    let idx = rng.draw_index(height * width);
    Coord {
        row: idx / width,
        col: idx % width,
    }
}

impl SimState {
    /// Runs one iteration: every ant, in ascending id order, makes its
    /// pick/drop decision (when eligible) and then moves. `t` advances by
    /// one after all ants are processed.
    pub fn step(&mut self, cfg: &SimConfig) {
        let dims = self.grid.dims();
        let s = cfg.neighborhood_side;
        let ga = GaParams {
            mutation_rate: cfg.mutation_rate,
            crossover: cfg.crossover,
        };
        for i in 0..self.ants.len() {
            let pos = self.ants[i].position;
            match self.ants[i].load {
                None => {
                    if let Some(t) = self.grid.object_at(pos) {
                        let count = self.grid.count_type_in_neighborhood(pos, s, t);
                        let f = rules::density_from_count(count, s, cfg.density_normalized);
                        let p = rules::pick_probability(f, cfg.k1);
                        if rules::decide(p, self.rng.draw()) {
                            self.grid.remove_object(pos).expect("cell checked occupied");
                            self.ants[i].load = Some(t);
                        }
                    }
                }
                Some(t) => {
                    if self.grid.is_empty_cell(pos) {
                        let count = self.grid.count_type_in_neighborhood(pos, s, t);
                        let f = rules::density_from_count(count, s, cfg.density_normalized);
                        let p = rules::drop_probability(f, cfg.k2);
                        if rules::decide(p, self.rng.draw()) {
                            self.grid.place_object(pos, t).expect("cell checked empty");
                            self.ants[i].load = None;
                        }
                    }
                }
            }
            self.ants[i].position = match cfg.algorithm {
                Algorithm::Aca => movement::step_random(
                    self.ants[i].position,
                    self.rng.draw(),
                    dims,
                    cfg.baseline_neighborhood,
                ),
                Algorithm::Haca => {
                    movement::step_ga(self.ants[i].position, &ga, dims, &mut self.rng)
                }
            };
        }
        self.t += 1;
        debug_assert!(
            self.conservation_violation(cfg).is_none(),
            "{}",
            self.conservation_violation(cfg).unwrap_or_default()
        );
    }

    /// Checks per-type conservation: on-grid plus carried must equal the
    /// configured count for every type. Returns a diagnostic on failure.
    pub fn conservation_violation(&self, cfg: &SimConfig) -> Option<String> {
        for (type_id, &expected) in cfg.objects_per_type.iter().enumerate() {
            let t = ObjectType(type_id as u8);
            let on_grid = self.grid.object_count(t);
            let carried = self.ants.iter().filter(|a| a.load == Some(t)).count();
            if on_grid + carried != expected {
                return Some(format!(
                    "type {type_id}: {on_grid} on grid + {carried} carried != {expected} configured at t = {}",
                    self.t
                ));
            }
        }
        None
    }

    /// Forces every still-loaded ant (in ascending id order) to deposit
    /// its object at the nearest empty cell by toroidal Chebyshev
    /// distance, ties broken by row-major scan order. The feasibility
    /// invariant guarantees an empty cell exists.
    pub fn finalize(&mut self) {
        let dims = self.grid.dims();
        for i in 0..self.ants.len() {
            let Some(t) = self.ants[i].load else { continue };
            let pos = self.ants[i].position;
            let mut best: Option<(usize, Coord)> = None;
            for row in 0..dims.height {
                for col in 0..dims.width {
                    let c = Coord { row, col };
                    if !self.grid.is_empty_cell(c) {
                        continue;
                    }
                    let d = dims.chebyshev(pos, c);
                    if best.map_or(true, |(bd, _)| d < bd) {
                        best = Some((d, c));
                    }
                }
            }
            let (_, target) = best.expect("feasibility invariant guarantees an empty cell");
            self.grid
                .place_object(target, t)
                .expect("cell checked empty");
            self.ants[i].load = None;
        }
    }

    /// Total RNG draws consumed since initialization, for draw-order audits.
    pub fn draws_consumed(&self) -> u64 {
        self.rng.draws_consumed()
    }

    fn snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            iteration: self.t,
            grid: self.grid.clone(),
            ants: self.ants.clone(),
        }
    }

    fn report(&self, cfg: &SimConfig) -> ClusterReport {
        let params = ClusterParams {
            adjacency: cfg.cluster_adjacency,
            min_size: cfg.cluster_min_size,
        };
        metrics::report(&self.grid, &self.ants, self.t, cfg.num_types(), &params)
    }
}

/// Runs `max_iter` iterations from a fresh initialization. Emits a
/// cluster report at every configured checkpoint, then finalizes and
/// emits one last report (and snapshot) of the fully deposited state.
/// Snapshots cover the initial state, the final state, and any extra
/// iterations in `snapshot_at`.
pub fn run(cfg: &SimConfig, snapshot_at: &[u64]) -> Result<RunOutput, ConfigError> {
    let mut state = initialize(cfg)?;
    let mut reports = Vec::with_capacity(cfg.checkpoints.len() + 1);
    let mut snapshots = vec![state.snapshot()];
    let mut checkpoints = cfg.checkpoints.iter().copied().peekable();
    for t in 1..=cfg.max_iter {
        state.step(cfg);
        if checkpoints.peek() == Some(&t) {
            checkpoints.next();
            reports.push(state.report(cfg));
        }
        if t != cfg.max_iter && snapshot_at.contains(&t) {
            snapshots.push(state.snapshot());
        }
    }
    state.finalize();
    reports.push(state.report(cfg));
    if cfg.max_iter > 0 {
        snapshots.push(state.snapshot());
    }
    Ok(RunOutput {
        final_state: state,
        reports,
        snapshots,
    })
}
