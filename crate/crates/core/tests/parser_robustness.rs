use proptest::prelude::*;
use ump_core::dsl::{parse_document, serialize};
use ump_core::phi::Phi;

/// Same checks as the fuzz targets.
fn document_round_trips(text: &str) {
    if let Ok(bundle) = parse_document(text) {
        assert_eq!(parse_document(&serialize(&bundle)).unwrap(), bundle);
    }
}

fn phi_round_trips(text: &str) {
    if let Ok(phi) = Phi::parse(text) {
        assert_eq!(Phi::parse(&phi.to_string()).unwrap(), phi);
    }
}

fn corpus(target: &str) -> Vec<String> {
    let dir = format!("{}/../../fuzz/corpus/{target}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| String::from_utf8_lossy(&std::fs::read(e.unwrap().path()).unwrap()).into_owned())
        .collect()
}

#[test]
fn fuzz_corpus_replays_cleanly() {
    let docs = corpus("parse_document");
    assert!(!docs.is_empty());
    docs.iter().for_each(|t| document_round_trips(t));
    corpus("parse_phi").iter().for_each(|t| phi_round_trips(t));
}

fn record_line() -> impl Strategy<Value = String> {
    let word = prop_oneof![
        Just("category"),
        Just("object"),
        Just("arrow"),
        Just("compose"),
        Just("set"),
        Just("element"),
        Just("relation"),
        Just("preorder"),
        Just("predicate"),
        Just("pair"),
        Just("holds"),
        Just("on"),
        Just("objects-of"),
        Just(":"),
        Just("->"),
        Just("="),
        Just("."),
        Just("A"),
        Just("B"),
        Just("f"),
        Just("g"),
        Just("id_A"),
        Just("#"),
    ];
    prop::collection::vec(word, 0..7).prop_map(|w| w.join(" "))
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,200}") {
        document_round_trips(&text);
        phi_round_trips(&text);
    }

    #[test]
    fn keyword_soup_never_panics(lines in prop::collection::vec(record_line(), 0..20)) {
        document_round_trips(&lines.join("\n"));
    }

    #[test]
    fn formula_soup_never_panics(tokens in prop::collection::vec(
        prop_oneof![Just("Pa"), Just("Pb"), Just("!"), Just("&"), Just("|"), Just("->"), Just("("), Just(")")],
        0..30,
    )) {
        phi_round_trips(&tokens.join(" "));
    }
}
