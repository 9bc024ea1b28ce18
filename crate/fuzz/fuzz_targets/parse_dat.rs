//! Fuzz the whitespace-delimited .dat parser: no panic on any input, and
//! anything it accepts is finite and row-ordered.

#![no_main]

use libfuzzer_sys::fuzz_target;
use saxn::io::{parse_dat, ColumnSelector};

fuzz_target!(|data: &[u8]| {
    // first two bytes steer the column selector and skip count
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

    if let Ok(values) = parse_dat(&text, &column, skip_rows, "fuzz.dat") {
        assert!(values.iter().all(|v| v.is_finite()));
        // accepted data must construct a series when non-empty
        if !values.is_empty() {
            saxn::TimeSeries::new(values, "fuzz", "fuzz.dat").unwrap();
        }
    }
});
