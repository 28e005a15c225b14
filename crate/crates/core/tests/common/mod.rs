#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use graphstar::graphwords::{SimplicialGraph, Vertex};

/// Everything reachable from `w` by swapping adjacent commuting letters and
/// merging equal neighbours.
pub fn reachable(g: &SimplicialGraph, w: &[Vertex]) -> BTreeSet<Vec<Vertex>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            let next = if cur[i] == cur[i + 1] {
                let mut n = cur.clone();
                n.remove(i);
                n
            } else if g.adjacent(cur[i], cur[i + 1]) {
                let mut n = cur.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Lengths of the dead ends of the search: swap-classes in `reachable`
/// from which no merge is possible.
pub fn terminal_lengths(g: &SimplicialGraph, w: &[Vertex]) -> BTreeSet<usize> {
    let all: Vec<Vec<Vertex>> = reachable(g, w).into_iter().collect();
    let index: HashMap<&Vec<Vertex>, usize> = all.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut mergeable = vec![false; all.len()];
    for (i, v) in all.iter().enumerate() {
        for k in 0..v.len().saturating_sub(1) {
            if v[k] == v[k + 1] {
                mergeable[i] = true;
            } else if g.adjacent(v[k], v[k + 1]) {
                let mut n = v.clone();
                n.swap(k, k + 1);
                let j = index[&n];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut dirty = vec![false; all.len()];
    for i in 0..all.len() {
        if mergeable[i] {
            let r = find(&mut parent, i);
            dirty[r] = true;
        }
    }
    (0..all.len())
        .filter(|&i| {
            let r = find(&mut parent, i);
            !dirty[r]
        })
        .map(|i| all[i].len())
        .collect()
}

/// Lexicographically least word among the shortest reachable ones.
pub fn oracle_normal_form(g: &SimplicialGraph, w: &[Vertex]) -> Vec<Vertex> {
    let all = reachable(g, w);
    let min = all.iter().map(Vec::len).min().unwrap_or(0);
    all.into_iter().filter(|v| v.len() == min).min().unwrap_or_default()
}

/// All words of length `len` over `n` letters.
pub fn words(n: usize, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |v| {
                    let mut x = w.clone();
                    x.push(v);
                    x
                })
            })
            .collect();
    }
    out
}
