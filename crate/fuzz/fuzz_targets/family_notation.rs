#![no_main]

use hyperb_core::notation::parse_family;
use hyperb_core::{Family, GroundSet};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let raw = parse_family(text);
    let ground = GroundSet::standard(6).unwrap();
    if let Ok(f) = Family::parse(text, &ground) {
        assert!(raw.is_ok());
        let again = Family::parse(&f.to_string(), &ground).expect("display output reparses");
        assert_eq!(again, f);
    }
});
