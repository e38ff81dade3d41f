//! Deterministic ant-based clustering simulation.
//!
//! Ants roam a toroidal grid scattered with typed objects, picking up
//! isolated objects and dropping them where similar ones accumulate.
//! Two movement rules are provided: the classic one-cell random walk
//! (`aca`) and a hybrid variant (`haca`) that derives each ant's next
//! position by recombining and mutating the binary encoding of its
//! current coordinates, letting ants cover the whole grid and cluster
//! objects faster.
//!
//! The crate is organized around the simulation pipeline:
//!
//! - [`grid`]: toroidal lattice, occupancy, neighborhoods
//! - [`rules`]: perceived density and pick/drop probability laws
//! - [`movement`]: random walk and genome-based steps
//! - [`engine`]: the per-iteration loop, checkpointing, finalization
//! - [`metrics`]: connected-component cluster statistics
//! - [`config`]: simulation parameters and the `key = value` file format
//! - [`snapshot`]: plain-text grid and ant-listing serialization
//! - [`harness`]: multi-run experiment driver with CSV output
//!
//! Every stochastic choice in a run draws from a single seeded stream
//! ([`rng::RngStream`]), so trajectories, metric series, and emitted
//! files are all byte-reproducible from `(config, seed)`.

pub mod config;
pub mod engine;
pub mod grid;
pub mod harness;
pub mod metrics;
pub mod movement;
pub mod rng;
pub mod rules;
pub mod snapshot;

#[cfg(feature = "test-oracles")]
pub mod oracles;

pub use config::{Algorithm, ConfigError, ExperimentSpec, SimConfig};
pub use engine::{initialize, run, Ant, RunOutput, SimState};
pub use grid::{Coord, Dims, GridWorld, ObjectType};
pub use harness::{run_experiment, run_single, HarnessError};
pub use metrics::{Adjacency, ClusterParams, ClusterReport};
