#![no_main]

use decoupler::text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text::parse_gh(s) {
        let written = text::write_gh(&v);
        let back = text::parse_gh(&written).expect("written output must parse");
        assert_eq!(text::write_gh(&back), written);
        assert_eq!(back, v);
    }
});
