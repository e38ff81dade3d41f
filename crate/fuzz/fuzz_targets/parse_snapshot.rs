#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Never panic; accepted grids must re-render and re-parse identically.
        if let Ok(grid) = antclust::snapshot::grid_from_text(text) {
            let rendered = antclust::snapshot::grid_to_text(&grid).unwrap();
            let reparsed = antclust::snapshot::grid_from_text(&rendered).unwrap();
            assert_eq!(reparsed, grid);
        }
    }
});
