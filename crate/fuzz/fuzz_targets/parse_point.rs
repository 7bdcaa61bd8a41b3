#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::syntax::{parse_bag, parse_point, parse_points};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_point(text) {
        assert_eq!(parse_point(&p.render()).unwrap(), p);
    }
    let _ = parse_bag(text);
    let _ = parse_points(text);
});
