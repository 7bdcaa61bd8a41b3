#![no_main]

use libfuzzer_sys::fuzz_target;
use llsem::space::KSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(k) = text.parse::<KSet>() {
        assert_eq!(k.to_string().parse::<KSet>().unwrap(), k);
        assert!(!k.contains(0) && !k.contains(1));
    }
});
