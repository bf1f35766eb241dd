#![no_main]

use libfuzzer_sys::fuzz_target;
use mpca::io::report::{from_text, to_text};

fuzz_target!(|data: &str| {
    if let Ok(report) = from_text(data) {
        // a successfully parsed document must survive a re-emit cycle
        let emitted = to_text(&report);
        let reparsed = from_text(&emitted).expect("emitted report must parse");
        assert_eq!(to_text(&reparsed), emitted);
    }
});
