#![no_main]

use libfuzzer_sys::fuzz_target;
use mbr_core::harness::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // Accepted configs must pass their own validation.
        if let Ok(config) = ExperimentConfig::from_json_str(text) {
            config.validate().expect("parser admitted an invalid config");
        }
    }
});
