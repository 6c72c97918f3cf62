#![no_main]

use libfuzzer_sys::fuzz_target;
use mbr_core::harness::Report;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = Report::from_csv_reader(data) {
        // Emit and reparse: rows must survive one CSV round trip.
        let csv = report.to_csv_string().unwrap();
        let back = Report::from_csv_reader(csv.as_bytes()).expect("own output must reparse");
        assert_eq!(back.rows.len(), report.rows.len());
    }
});
