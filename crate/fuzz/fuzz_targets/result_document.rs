//! Result documents that parse must round-trip: emit → parse → emit is a
//! fixed point, value-equal and byte-equal.

#![no_main]

use latqd_cli::document::{from_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(doc) = from_json(data) {
        let emitted = to_json(&doc);
        let again = from_json(&emitted).expect("emitted documents parse");
        assert_eq!(doc, again, "value drift through one round trip");
        assert_eq!(to_json(&again), emitted, "bytes drift on the second emit");
    }
});
