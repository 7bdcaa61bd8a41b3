#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::syntax::{parse_formula, render_formula};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_formula(text) {
        assert_eq!(parse_formula(&render_formula(&f)).unwrap(), f);
        assert_eq!(f.dual().dual(), f);
    }
});
