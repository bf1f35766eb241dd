#![no_main]

use libfuzzer_sys::fuzz_target;
use mpca::core::NormalizeMode;
use mpca::io::csv::ingest_csv_reader;

fuzz_target!(|data: &[u8]| {
    for mode in [NormalizeMode::None, NormalizeMode::MeanDivide, NormalizeMode::ZScore] {
        for has_header in [false, true] {
            // must never panic; errors are the expected outcome
            let _ = ingest_csv_reader(data, has_header, mode);
        }
    }
});
