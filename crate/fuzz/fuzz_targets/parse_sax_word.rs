//! Fuzz SAX word parsing: no panic, and every accepted word survives a
//! render/parse round trip and has zero self-distance.

#![no_main]

use libfuzzer_sys::fuzz_target;
use saxn::sax::{breakpoints, dist_table, mindist, SaxWord};

fuzz_target!(|data: &[u8]| {
    let (steer, text) = match data.split_first_chunk::<3>() {
        Some((steer, rest)) => (*steer, rest),
        None => return,
    };
    let cardinality = steer[0] as usize;
    let origin_length = u16::from_le_bytes([steer[1], steer[2]]) as usize;
    let Ok(text) = std::str::from_utf8(text) else {
        return;
    };

    let Ok(word) = SaxWord::parse(text, cardinality, origin_length) else {
        return;
    };
    // accepted words respect their own invariants
    assert!(word.symbols().iter().all(|&s| (s as usize) < cardinality));
    assert_eq!(word.segment_width() * word.len(), word.origin_length());

    // render/parse round trip is lossless
    let rendered = word.to_string();
    let back = SaxWord::parse(&rendered, cardinality, origin_length).unwrap();
    assert_eq!(back, word);

    // MINDIST of a word against itself is exactly zero
    let table = dist_table(&breakpoints(cardinality).unwrap());
    assert_eq!(mindist(&word, &word, &table).unwrap(), 0.0);
});
