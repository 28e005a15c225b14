#![no_main]
use graphstar::formats::{parse_theta_spec, write_theta_spec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(spec) = parse_theta_spec(s) {
            let back = parse_theta_spec(&write_theta_spec(&spec)).unwrap();
            assert_eq!(back.doc(), spec.doc());
        }
    }
});
