#![no_main]

use edgeideal::graph::{parse_graph, render_graph, ParseOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for raw_weights in [false, true] {
        let opts = ParseOptions { raw_weights };
        if let Ok(parsed) = parse_graph(text, opts) {
            let again = parse_graph(&render_graph(&parsed.graph), opts)
                .expect("rendered graphs parse");
            assert_eq!(render_graph(&again.graph), render_graph(&parsed.graph));
        }
    }
});
