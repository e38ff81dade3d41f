#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Config parsing must never panic; malformed input is a structured error.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = antclust::config::parse_config_str(text);
    }
});
