#![no_main]
use graphstar::formats::parse_groups;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(gs) = parse_groups(s) {
            for g in gs {
                for a in 0..g.order() {
                    assert_eq!(g.mul(a, g.inv(a)), g.identity());
                }
            }
        }
    }
});
