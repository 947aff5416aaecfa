#![no_main]

use hyperb_core::{unrank, GroundSet, SubsetMask};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let ground = GroundSet::standard(12).unwrap();
    if let Ok(x) = SubsetMask::parse(text, &ground) {
        let again = SubsetMask::parse(&x.to_string(), &ground).expect("display output reparses");
        assert_eq!(again, x);
        assert_eq!(unrank(x.rank(), &ground).unwrap(), x);
    }
});
