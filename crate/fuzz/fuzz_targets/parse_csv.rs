//! Fuzz the RFC-4180-subset CSV parser: no panic on any input, finite
//! values only, and the strict quoting rules never let malformed records
//! through silently.

#![no_main]

use libfuzzer_sys::fuzz_target;
use saxn::io::{parse_csv, ColumnSelector};

fuzz_target!(|data: &[u8]| {
    let (steer, text) = match data.split_first_chunk::<2>() {
        Some((steer, rest)) => (*steer, rest),
        None => ([0u8, 0u8], data),
    };
    let text = String::from_utf8_lossy(text);
    let column = if steer[0] % 2 == 0 {
        ColumnSelector::Index((steer[0] / 2) as usize % 8)
    } else {
        ColumnSelector::Name("value".to_string())
    };
    let skip_rows = (steer[1] % 4) as usize;

    if let Ok(values) = parse_csv(&text, &column, skip_rows, "fuzz.csv") {
        assert!(values.iter().all(|v| v.is_finite()));
        if !values.is_empty() {
            saxn::TimeSeries::new(values, "fuzz", "fuzz.csv").unwrap();
        }
    }
});
