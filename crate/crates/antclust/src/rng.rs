//! Single seedable draw stream backing every stochastic choice in a run.
//!
//! All randomness — initial placement, pick/drop decisions, walk steps,
//! crossover cut points, and per-bit mutation — is consumed as uniform
//! `f64` draws in `[0, 1)` from one stream, in a documented order. This
//! makes full trajectories reproducible from `(config, seed)` alone and
//! lets tests replay or audit the exact sequence of draws.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INV_2_POW_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Deterministic uniform draw stream seeded from a 64-bit value.
///
/// Draws are multiples of 2^-53 in `[0, 1)`, derived from the top 53 bits
/// of each ChaCha8 output word. The conversion is pinned here rather than
/// delegated to a distribution type so the stream is stable across
/// dependency upgrades.
#[derive(Clone, Debug)]
pub struct RngStream {
    inner: ChaCha8Rng,
    draws: u64,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// Next uniform value in `[0, 1)`. Consumes exactly one stream element.
    pub fn draw(&mut self) -> f64 {
        self.draws += 1;
        (self.inner.next_u64() >> 11) as f64 * INV_2_POW_53
    }

    /// Uniform index in `[0, n)` from a single draw.
    pub fn draw_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "draw_index requires n > 0");
        ((self.draw() * n as f64) as usize).min(n - 1)
    }

    /// Number of draws consumed so far; lets tests audit draw accounting.
    pub fn draws_consumed(&self) -> u64 {
        self.draws
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::from_seed(7);
        let mut b = RngStream::from_seed(7);
        for _ in 0..1000 {
            assert_eq!(a.draw(), b.draw());
        }
    }

    #[test]
    fn different_seeds_diverge() {
        let mut a = RngStream::from_seed(1);
        let mut b = RngStream::from_seed(2);
        let same = (0..100).filter(|_| a.draw() == b.draw()).count();
        assert!(same < 100);
    }

    #[test]
    fn draws_are_in_unit_interval() {
        let mut rng = RngStream::from_seed(42);
        for _ in 0..10_000 {
            let d = rng.draw();
            assert!((0.0..1.0).contains(&d));
        }
    }

    #[test]
    fn draw_index_covers_range_uniformly() {
        let mut rng = RngStream::from_seed(3);
        let mut hits = [0usize; 8];
        let trials = 100_000;
        for _ in 0..trials {
            hits[rng.draw_index(8)] += 1;
        }
        for &h in &hits {
            let freq = h as f64 / trials as f64;
            assert!((freq - 0.125).abs() < 0.01, "freq {freq} departs from 1/8");
        }
    }

    #[test]
    fn draw_counter_tracks_consumption() {
        let mut rng = RngStream::from_seed(0);
        assert_eq!(rng.draws_consumed(), 0);
        rng.draw();
        rng.draw_index(5);
        assert_eq!(rng.draws_consumed(), 2);
    }
}
