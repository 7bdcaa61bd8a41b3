#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::syntax::{check_proof, parse_proof, render_proof};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_proof(text) {
        assert_eq!(parse_proof(&render_proof(&p)).unwrap(), p);
        let _ = check_proof(&p);
    }
});
