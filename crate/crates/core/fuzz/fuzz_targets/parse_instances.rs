#![no_main]

use libfuzzer_sys::fuzz_target;
use mbr_core::harness::read_instances;

fuzz_target!(|data: &[u8]| {
    if let Ok(instances) = read_instances(data) {
        // Accepted instances satisfy every invariant and round-trip.
        for instance in &instances {
            instance.validate().expect("loader admitted an invalid instance");
            let line = serde_json::to_string(instance).unwrap();
            let back: mbr_core::Instance = serde_json::from_str(&line).unwrap();
            assert_eq!(&back, instance);
        }
    }
});
