#![no_main]

use decoupler::text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text::parse_schedule(s) {
        let written = text::write_schedule(&v);
        let back = text::parse_schedule(&written).expect("written output must parse");
        assert_eq!(text::write_schedule(&back), written);
        assert_eq!(back, v);
    }
});
