#![no_main]

use hyperb_core::bcoloring::{validate_coloring, WitnessDoc};
use libfuzzer_sys::fuzz_target;

// Validation is quadratic-ish in the ball size, so only small graphs are checked.
const VALIDATE_LIMIT: u64 = 1 << 12;

fuzz_target!(|text: &str| {
    let Ok(doc) = WitnessDoc::from_json(text) else { return };
    assert_eq!(WitnessDoc::from_json(&doc.to_json()).unwrap(), doc);
    if let Ok((g, c)) = WitnessDoc::decode(text) {
        if g.vertex_count() <= VALIDATE_LIMIT {
            let cert = validate_coloring(&g, &c).expect("decoded witness fits its graph");
            assert!(!cert.valid_b || cert.valid_proper);
        }
    }
});
