#![no_main]

use decoupler::text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text::parse_hadamard(s) {
        let written = text::write_hadamard(&v);
        let back = text::parse_hadamard(&written).expect("written output must parse");
        assert_eq!(text::write_hadamard(&back), written);
    }
});
