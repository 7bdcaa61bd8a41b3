#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::relsem::{parse_interp, render_interp};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(i) = parse_interp(text) {
        assert_eq!(parse_interp(&render_interp(&i)).unwrap(), i);
    }
});
