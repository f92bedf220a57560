//! The invariants the fuzz targets assert, run on the checked-in seeds and on
//! random text built from the tokens the parsers know about.

use std::path::PathBuf;

use edgeideal::graph::{parse_graph, render_graph, ParseOptions};
use edgeideal::ideal::{parse_ideal, render_ideal};
use proptest::prelude::*;

fn graph_round_trip(text: &str) -> bool {
    let mut parsed_any = false;
    for raw_weights in [false, true] {
        let opts = ParseOptions { raw_weights };
        if let Ok(parsed) = parse_graph(text, opts) {
            parsed_any = true;
            let rendered = render_graph(&parsed.graph);
            let again = parse_graph(&rendered, opts).expect("rendered graphs parse");
            assert_eq!(render_graph(&again.graph), rendered);
        }
    }
    parsed_any
}

fn ideal_round_trip(text: &str) -> bool {
    match parse_ideal(text) {
        Ok(ideal) => {
            assert_eq!(parse_ideal(&render_ideal(&ideal)).unwrap(), ideal);
            true
        }
        Err(_) => false,
    }
}

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut seeds: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path.display().to_string(), text)
        })
        .collect();
    seeds.sort();
    seeds
}

#[test]
fn graph_seeds_parse_and_round_trip() {
    let seeds = corpus("parse_graph");
    assert!(seeds.len() >= 3);
    for (name, text) in seeds {
        assert!(graph_round_trip(&text), "{name} does not parse");
    }
}

#[test]
fn ideal_seeds_parse_and_round_trip() {
    let seeds = corpus("parse_ideal");
    assert!(seeds.len() >= 3);
    for (name, text) in seeds {
        assert!(ideal_round_trip(&text), "{name} does not parse");
    }
}

fn graph_line() -> impl Strategy<Value = String> {
    let name = prop::sample::select(vec!["a", "b", "c", "x1", "y1", "1a", "", "a-b"]);
    let weight = prop::sample::select(vec!["0", "1", "2", "7", "-1", "w", "18446744073709551616"]);
    prop_oneof![
        (name.clone(), weight).prop_map(|(n, w)| format!("vertex {n} {w}")),
        (name.clone(), name.clone()).prop_map(|(a, b)| format!("edge {a} {b}")),
        name.prop_map(|n| format!("vertex {n}")),
        Just("# comment".to_string()),
        Just(String::new()),
        "[ -~]{0,12}",
    ]
}

fn ideal_line() -> impl Strategy<Value = String> {
    let factor = prop::sample::select(vec![
        "x",
        "y1",
        "z",
        "x^2",
        "y1^0",
        "x^",
        "1",
        "x^99999999999999999999",
    ]);
    prop_oneof![
        prop::collection::vec(factor, 1..4).prop_map(|f| f.join("*")),
        Just("# ring: x y1 z".to_string()),
        Just("# ring: x x".to_string()),
        Just(String::new()),
        "[ -~]{0,12}",
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn graph_parser_never_panics(lines in prop::collection::vec(graph_line(), 0..8)) {
        graph_round_trip(&lines.join("\n"));
    }

    #[test]
    fn ideal_parser_never_panics(lines in prop::collection::vec(ideal_line(), 0..8)) {
        ideal_round_trip(&lines.join("\n"));
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,64}") {
        graph_round_trip(&text);
        ideal_round_trip(&text);
    }
}
