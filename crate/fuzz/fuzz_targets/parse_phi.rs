#![no_main]

use libfuzzer_sys::fuzz_target;
use ump_core::phi::Phi;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = Phi::parse(text) {
        assert_eq!(Phi::parse(&phi.to_string()).as_ref(), Ok(&phi));
    }
});
