#![no_main]

use libfuzzer_sys::fuzz_target;
use mbr_core::harness::Report;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(report) = Report::from_json_str(text) {
            // Anything parsed must emit to both formats.
            let _ = report.to_csv_string().unwrap();
            let _ = report.to_json_string().unwrap();
        }
    }
});
