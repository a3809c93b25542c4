#![no_main]

use libfuzzer_sys::fuzz_target;
use ump_core::dsl::{parse_document, serialize};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(bundle) = parse_document(text) {
        let again = parse_document(&serialize(&bundle)).expect("serialized output parses");
        assert_eq!(again, bundle);
    }
});
