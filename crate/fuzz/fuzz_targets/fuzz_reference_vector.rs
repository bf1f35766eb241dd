#![no_main]

use libfuzzer_sys::fuzz_target;
use mpca::commands::parse_reference;

fuzz_target!(|data: &str| {
    if let Ok(v) = parse_reference(data) {
        // accepted vectors must be non-empty, finite, and nonzero
        assert!(v.len() > 0);
        assert!(v.iter().all(|x| x.is_finite()));
        assert!(v.norm() > 0.0);
    }
});
