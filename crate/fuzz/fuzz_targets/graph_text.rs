#![no_main]
use graphstar::formats::{parse_graph, write_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = parse_graph(s) {
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }
});
