#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::space::parse_table_space;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_table_space(text) {
        let again = parse_table_space(&t.render()).unwrap();
        assert!(t.entries().eq(again.entries()));
    }
});
