#![no_main]
use graphstar::formats::{parse_word, parse_word_on, write_word};
use graphstar::graphwords::{normal_form, reduce, SimplicialGraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let (mask, rest) = data.split_at(1);
    let Ok(s) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = parse_word(s) {
        assert_eq!(parse_word(&write_word(&w)).unwrap(), w);
    }
    let g = SimplicialGraph::from_edge_mask(4, u64::from(mask[0] & 0x3f)).unwrap();
    if let Ok(w) = parse_word_on(&g, s) {
        if w.len() <= 32 {
            let nf = normal_form(&g, &w);
            assert_eq!(nf.len(), reduce(&g, &w).len());
            assert_eq!(normal_form(&g, &nf), nf);
        }
    }
});
