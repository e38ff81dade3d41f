//! Perceived local density and the pick-up / drop-off probability laws.
//!
//! An unloaded ant standing on an object picks it up with probability
//! `(k1 / (k1 + f))^2`; a loaded ant on an empty cell drops its object
//! with probability `(f / (k2 + f))^2`, where `f` is the fraction of
//! same-type objects among the `s*s - 1` cells around the ant. Sparse
//! surroundings favor picking, dense ones favor dropping. All functions
//! here are pure; the random draw is injected by the engine.

use crate::grid::{Coord, GridWorld, ObjectType};

/// Threshold constants for the probability laws plus the neighborhood side.
#[derive(Clone, Copy, Debug)]
pub struct RuleParams {
    /// Pick-up threshold constant, > 0.
    pub k1: f64,
    /// Drop-off threshold constant, > 0.
    pub k2: f64,
    /// Odd neighborhood side, >= 3.
    pub s: usize,
}

/// Binary occupancy indicators for the `s*s - 1` neighbor cells of one ant,
/// restricted to a single reference object type. Entry `j` is `true` iff
/// the `j`-th neighbor (row-major offset order) holds an object of that
/// type. Carried objects are off-grid and never appear here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodView {
    occupied: Vec<bool>,
}

impl NeighborhoodView {
    /// Builds a view from raw indicators. Length must be `s*s - 1` for an
    /// odd `s >= 3` (8, 24, 48, ...).
    pub fn new(occupied: Vec<bool>) -> Self {
        debug_assert!(
            is_valid_view_len(occupied.len()),
            "bad view length {}",
            occupied.len()
        );
        Self { occupied }
    }

    /// Reads indicators for `t` off the grid around `center`.
    pub fn from_grid(grid: &GridWorld, center: Coord, s: usize, t: ObjectType) -> Self {
        let cells = grid
            .dims()
            .neighborhood(center, s)
            .expect("neighborhood side must be validated by config");
        Self {
            occupied: cells
                .iter()
                .map(|&c| grid.object_at(c) == Some(t))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.occupied.iter().filter(|&&b| b).count()
    }

    pub fn indicators(&self) -> &[bool] {
        &self.occupied
    }
}

fn is_valid_view_len(len: usize) -> bool {
    // len = s^2 - 1 for odd s >= 3
    (3usize..)
        .step_by(2)
        .map(|s| s * s - 1)
        .take_while(|&n| n <= len)
        .any(|n| n == len)
}

/// Fraction of same-type neighbors: sum of indicators over `s*s - 1`.
/// Always in `[0, 1]`.
pub fn perceived_density(view: &NeighborhoodView) -> f64 {
    view.count_ones() as f64 / view.len() as f64
}

/// Density from a pre-counted neighborhood. `normalized` divides by the
/// neighborhood size; the raw-count reading keeps the bare sum for
/// sensitivity experiments.
pub fn density_from_count(count: usize, s: usize, normalized: bool) -> f64 {
    if normalized {
        count as f64 / (s * s - 1) as f64
    } else {
        count as f64
    }
}

/// Pick-up probability `(k1 / (k1 + f))^2`, strictly in `(0, 1]` for
/// `k1 > 0` and `f >= 0`. Equals 1 exactly when the neighborhood is empty.
pub fn pick_probability(f: f64, k1: f64) -> f64 {
    debug_assert!(k1 > 0.0);
    let ratio = k1 / (k1 + f);
    ratio * ratio
}

/// Drop-off probability `(f / (k2 + f))^2`, in `[0, 1)` for `k2 > 0` and
/// `f >= 0`. Equals 0 exactly when the neighborhood is empty.
pub fn drop_probability(f: f64, k2: f64) -> f64 {
    debug_assert!(k2 > 0.0);
    let ratio = f / (k2 + f);
    ratio * ratio
}

/// Bernoulli decision from one injected uniform draw: fires iff
/// `draw < p`, so `p = 0` can never fire and `p = 1` always does.
pub fn decide(p: f64, draw: f64) -> bool {
    debug_assert!((0.0..=1.0).contains(&p));
    debug_assert!((0.0..1.0).contains(&draw));
    draw < p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Dims;
    use proptest::prelude::*;

    fn view_of(bits: &[u8]) -> NeighborhoodView {
        NeighborhoodView::new(bits.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn density_empty_neighborhood() {
        assert_eq!(perceived_density(&view_of(&[0; 8])), 0.0);
    }

    #[test]
    fn density_saturated_neighborhood() {
        assert_eq!(perceived_density(&view_of(&[1; 8])), 1.0);
    }

    #[test]
    fn density_three_of_eight() {
        assert_eq!(
            perceived_density(&view_of(&[1, 0, 1, 0, 0, 1, 0, 0])),
            0.375
        );
    }

    #[test]
    fn density_matches_independent_loop() {
        let bits = [1u8, 1, 0, 0, 1, 0, 1, 1];
        let mut ones = 0usize;
        for &b in &bits {
            if b == 1 {
                ones += 1;
            }
        }
        assert_eq!(perceived_density(&view_of(&bits)), ones as f64 / 8.0);
    }

    #[test]
    fn view_from_grid_restricts_to_type() {
        let mut g = GridWorld::new(Dims::new(5, 5));
        g.place_object(Coord::new(1, 1), ObjectType(0)).unwrap();
        g.place_object(Coord::new(1, 3), ObjectType(1)).unwrap();
        let v = NeighborhoodView::from_grid(&g, Coord::new(1, 2), 3, ObjectType(0));
        assert_eq!(v.count_ones(), 1);
        let v = NeighborhoodView::from_grid(&g, Coord::new(1, 2), 3, ObjectType(1));
        assert_eq!(v.count_ones(), 1);
    }

    #[test]
    fn pick_probability_tagged_values() {
        assert_eq!(pick_probability(0.0, 0.1), 1.0);
        assert_eq!(pick_probability(0.1, 0.1), 0.25);
        let expected = 0.008264462809917356; // (0.1 / 1.1)^2
        let got = pick_probability(1.0, 0.1);
        assert!((got - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn drop_probability_tagged_values() {
        assert_eq!(drop_probability(0.0, 0.15), 0.0);
        assert_eq!(drop_probability(0.15, 0.15), 0.25);
        let expected = 0.7561436672967865; // (1.0 / 1.15)^2
        let got = drop_probability(1.0, 0.15);
        assert!((got - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn decide_boundaries() {
        assert!(decide(1.0, 0.0));
        assert!(decide(1.0, 0.999999));
        assert!(!decide(0.0, 0.0));
        // strict inequality at the boundary
        assert!(!decide(0.25, 0.25));
        assert!(decide(0.25, 0.2499999));
    }

    #[test]
    fn density_from_count_modes() {
        assert_eq!(density_from_count(3, 3, true), 0.375);
        assert_eq!(density_from_count(3, 3, false), 3.0);
        assert_eq!(density_from_count(0, 5, true), 0.0);
    }

    proptest! {
        #[test]
        fn pick_strictly_decreasing_in_f(k1 in 0.01f64..2.0) {
            let mut prev = pick_probability(0.0, k1);
            prop_assert_eq!(prev, 1.0);
            for i in 1..=100 {
                let f = i as f64 / 100.0;
                let p = pick_probability(f, k1);
                prop_assert!(p < prev, "pick not decreasing at f={f}");
                prev = p;
            }
        }

        #[test]
        fn drop_strictly_increasing_in_f(k2 in 0.01f64..2.0) {
            let mut prev = drop_probability(0.0, k2);
            prop_assert_eq!(prev, 0.0);
            for i in 1..=100 {
                let f = i as f64 / 100.0;
                let p = drop_probability(f, k2);
                prop_assert!(p > prev, "drop not increasing at f={f}");
                prev = p;
            }
        }

        #[test]
        fn probabilities_stay_in_unit_interval(f in 0.0f64..=1.0, k in 0.001f64..10.0) {
            let p = pick_probability(f, k);
            let d = drop_probability(f, k);
            prop_assert!(p > 0.0 && p <= 1.0);
            prop_assert!((0.0..1.0).contains(&d));
        }
    }
}
