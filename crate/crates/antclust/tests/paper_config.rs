//! The shipped benchmark config must parse to the documented parameters.

use antclust::config::{parse_config, Algorithm};
use std::path::Path;

#[test]
fn shipped_benchmark_config_parses_to_benchmark_parameters() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/paper.cfg");
    let spec = parse_config(&path).unwrap();
    assert_eq!(spec.base.height, 128);
    assert_eq!(spec.base.width, 128);
    assert_eq!(spec.base.ants, 500);
    assert_eq!(spec.base.objects_per_type, vec![100, 100]);
    assert_eq!(spec.base.neighborhood_side, 3);
    assert_eq!(spec.base.k1, 0.1);
    assert_eq!(spec.base.k2, 0.15);
    assert_eq!(spec.base.mutation_rate, 1.0 / 7.0);
    assert!(spec.base.crossover);
    assert_eq!(spec.base.max_iter, 1000);
    assert_eq!(
        spec.base.checkpoints,
        vec![100, 200, 300, 400, 500, 600, 700, 800, 900, 1000]
    );
    assert_eq!(spec.variants, vec![Algorithm::Aca, Algorithm::Haca]);
    assert_eq!(spec.seeds, (0..20).collect::<Vec<u64>>());
}
