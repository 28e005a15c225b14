mod common;

use graphstar::graphwords::*;
use proptest::prelude::*;

fn graph_and_word(max_n: usize, max_len: usize) -> impl Strategy<Value = (SimplicialGraph, Vec<Vertex>)> {
    (1usize..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (0u64..(1u64 << pairs), prop::collection::vec(0..n, 0..=max_len))
            .prop_map(move |(m, w)| (SimplicialGraph::from_edge_mask(n, m).unwrap(), w))
    })
}

proptest! {
    #[test]
    fn normal_form_matches_oracle((g, w) in graph_and_word(5, 7)) {
        prop_assert_eq!(normal_form(&g, &w).into_vec(), common::oracle_normal_form(&g, &w));
    }

    #[test]
    fn dead_ends_share_one_length((g, w) in graph_and_word(5, 7)) {
        let lens = common::terminal_lengths(&g, &w);
        prop_assert_eq!(lens.len(), 1);
        prop_assert_eq!(*lens.iter().next().unwrap(), reduce(&g, &w).len());
    }

    #[test]
    fn reduce_gives_reduced_equivalent_word((g, w) in graph_and_word(5, 8)) {
        let r = reduce(&g, &w);
        prop_assert!(is_reduced(&g, &r).unwrap());
        prop_assert_eq!(normal_form(&g, &r), normal_form(&g, &w));
    }

    #[test]
    fn normal_form_is_idempotent((g, w) in graph_and_word(5, 8)) {
        let nf = normal_form(&g, &w);
        prop_assert_eq!(normal_form(&g, &nf), nf);
    }

    #[test]
    fn truncations_are_shorter_and_below((g, w) in graph_and_word(4, 6)) {
        let r = normal_form(&g, &w);
        let down = down_set(&g, &r);
        prop_assert!(down.contains(&r));
        prop_assert!(down.contains(&ReducedWord::empty()));
        prop_assert!(is_complete(&g, &down));
        for t in truncations(&g, &r) {
            prop_assert_eq!(t.len() + 1, r.len());
            prop_assert!(down.contains(&t));
        }
    }

    #[test]
    fn standard_form_concat_is_equivalent((g, w) in graph_and_word(4, 6)) {
        let r = normal_form(&g, &w);
        for &v0 in r.letters() {
            let s = standard_form(&g, &r, v0).unwrap();
            prop_assert_eq!(normal_form(&g, &s.concat()), r.clone());
            prop_assert_eq!(s.concat().len(), r.len());
        }
    }

    #[test]
    fn nc_length_bounded_by_length((g, w) in graph_and_word(5, 7), v0 in 0usize..5) {
        let r = normal_form(&g, &w);
        if v0 < g.n_vertices() {
            let l = nc_length(&g, &r, v0).unwrap();
            prop_assert!(l >= -1 && l < r.len() as i64);
        }
    }
}

#[test]
fn complete_graph_words_sort() {
    let g = SimplicialGraph::complete(3).unwrap();
    assert_eq!(normal_form(&g, &[2, 0, 1, 0, 2]).letters(), &[0, 1, 2]);
}

#[test]
fn edgeless_words_only_merge() {
    let g = SimplicialGraph::edgeless(3).unwrap();
    assert_eq!(normal_form(&g, &[2, 2, 0, 1, 1, 0]).letters(), &[2, 0, 1, 0]);
}

#[test]
fn closure_is_complete() {
    let g = SimplicialGraph::path(4).unwrap();
    let set = complete_closure(&g, &[VertexWord(vec![0, 2, 1, 3])]);
    assert!(is_complete(&g, &set));
    assert!(set.contains(&ReducedWord::empty()));
}
