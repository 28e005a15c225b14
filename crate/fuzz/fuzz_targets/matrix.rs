#![no_main]
use graphstar::formats::{parse_matrix, write_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix(s) {
            assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        }
    }
});
