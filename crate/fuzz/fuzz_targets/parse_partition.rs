#![no_main]

use decoupler::text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text::parse_partition(s) {
        let written = text::write_partition(&v);
        let back = text::parse_partition(&written).expect("written output must parse");
        assert_eq!(text::write_partition(&back), written);
    }
});
