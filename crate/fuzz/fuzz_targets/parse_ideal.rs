#![no_main]

use edgeideal::ideal::{parse_ideal, render_ideal};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ideal) = parse_ideal(text) {
        let again = parse_ideal(&render_ideal(&ideal)).expect("rendered ideals parse");
        assert_eq!(again, ideal);
    }
});
