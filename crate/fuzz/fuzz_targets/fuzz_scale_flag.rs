#![no_main]

use libfuzzer_sys::fuzz_target;
use mpca::commands::parse_scale_flag;
use mpca::core::ScaleInterval;

fuzz_target!(|data: &str| {
    if let Ok((l, u)) = parse_scale_flag(data) {
        // anything accepted by the flag parser must build valid intervals
        // or be rejected with a structured error, never a panic
        let _ = ScaleInterval::new(l, u);
        let _ = ScaleInterval::standard(l, u);
    }
});
