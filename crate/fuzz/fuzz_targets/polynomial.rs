#![no_main]
use graphstar::formats::{parse_polynomial, write_polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_polynomial(s) {
            assert_eq!(parse_polynomial(&write_polynomial(&p)).unwrap(), p);
        }
    }
});
