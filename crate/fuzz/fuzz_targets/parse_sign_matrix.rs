#![no_main]

use decoupler::text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text::parse_sign_matrix(s) {
        let written = text::write_sign_matrix(&v);
        let back = text::parse_sign_matrix(&written).expect("written output must parse");
        assert_eq!(text::write_sign_matrix(&back), written);
    }
});
