#![no_main]

use hyperb_core::notation::IntRange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(r) = text.parse::<IntRange>() {
        let canonical = format!("{}..={}", r.start, r.end);
        assert_eq!(canonical.parse::<IntRange>().unwrap(), r);
        assert_eq!(r.is_empty(), r.iter().next().is_none());
    }
});
