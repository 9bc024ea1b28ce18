//! Fuzz study-config deserialization and validation: no panic on any
//! bytes, and every accepted config survives a serialize/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use saxn::study::StudyConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = StudyConfig::from_json(text) else {
        return;
    };
    // validated configs re-serialize losslessly
    let json = serde_json::to_string(&config).unwrap();
    let back = StudyConfig::from_json(&json).unwrap();
    assert_eq!(config, back);
});
