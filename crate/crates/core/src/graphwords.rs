//! Simplicial graphs and the word calculus over their vertex sets:
//! reduction, equivalence classes, lexicographic normal forms,
//! non-commutative length, truncations, complete sets and standard forms.
//!
//! Two words are equivalent when one can be turned into the other by
//! merging equal neighbouring letters and by swapping neighbouring letters
//! whose vertices are joined by an edge. A word is reduced when every pair of
//! equal letters is separated by some letter not adjacent to them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Graphs are stored as adjacency bitmasks.
pub const MAX_VERTICES: usize = 64;

/// Default cap on equivalence-class enumeration.
pub const CLASS_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadVertex { vertex: Vertex, n: usize },
    #[error("equivalence class exceeds cap of {cap} words")]
    CapExceeded { cap: usize },
    #[error("vertex {0} does not occur in the word")]
    VertexAbsent(Vertex),
    #[error("standard form is not unique: {0} candidate factorizations")]
    NonUnique(usize),
    #[error("word is not reduced")]
    NotReduced,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Undirected loop-free graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct SimplicialGraph {
    n: usize,
    adj: Vec<u64>,
}

/// Serialized form: vertex count and edge list.
#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<GraphDoc> for SimplicialGraph {
    type Error = WordError;

    fn try_from(d: GraphDoc) -> Result<Self, WordError> {
        Self::with_edges(d.n, &d.edges)
    }
}

impl From<SimplicialGraph> for GraphDoc {
    fn from(g: SimplicialGraph) -> Self {
        Self { edges: g.edges(), n: g.n }
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl SimplicialGraph {
    pub fn edgeless(n: usize) -> Result<Self, WordError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(WordError::InvalidGraph(format!(
                "vertex count must be in 1..={MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn with_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, WordError> {
        let mut g = Self::edgeless(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, WordError> {
        let mut g = Self::edgeless(n)?;
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j)?;
            }
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, WordError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::with_edges(n, &edges)
    }

    /// The graph on `n` vertices whose edge set is encoded by the bits of
    /// `mask`, in the order `(0,1), (0,2), .., (1,2), ..`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, WordError> {
        let mut g = Self::edgeless(n)?;
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j)?;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Every labelled graph on `n` vertices (`n <= 6`).
    pub fn all_on(n: usize) -> Vec<Self> {
        assert!(n <= 6, "all_on is meant for tiny graphs");
        let pairs = n * n.saturating_sub(1) / 2;
        (0..1u64 << pairs).map(|m| Self::from_edge_mask(n, m).expect("valid size")).collect()
    }

    pub fn add_edge(&mut self, i: Vertex, j: Vertex) -> Result<(), WordError> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(WordError::InvalidGraph(format!("loop at vertex {i}")));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// `(i, j)` is an edge. Never true for `i == j`.
    #[inline]
    pub fn adjacent(&self, i: Vertex, j: Vertex) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edges().len() == self.n * (self.n - 1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&a| a == 0)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), WordError> {
        if v < self.n {
            Ok(())
        } else {
            Err(WordError::BadVertex { vertex: v, n: self.n })
        }
    }

    pub fn check_word(&self, w: &[Vertex]) -> Result<(), WordError> {
        w.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Greedy proper coloring in vertex order: each vertex takes the least
    /// color unused by its lower-numbered neighbours.
    pub fn greedy_coloring(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let used: BTreeSet<usize> =
                (0..v).filter(|&u| self.adjacent(u, v)).map(|u| colors[u]).collect();
            colors.push((0..).find(|c| !used.contains(c)).expect("unbounded"));
        }
        colors
    }
}

/// A finite word over the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct VertexWord(pub Vec<Vertex>);

impl Deref for VertexWord {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

impl From<Vec<Vertex>> for VertexWord {
    fn from(v: Vec<Vertex>) -> Self {
        Self(v)
    }
}

/// A word certified reduced for the graph it was produced from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct ReducedWord(Vec<Vertex>);

impl ReducedWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(g: &SimplicialGraph, letters: Vec<Vertex>) -> Result<Self, WordError> {
        if is_reduced(g, &letters)? {
            Ok(Self(letters))
        } else {
            Err(WordError::NotReduced)
        }
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl Deref for ReducedWord {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.0))
    }
}

/// Comma-separated letters; the empty word prints as `()`.
pub fn format_word(w: &[Vertex]) -> String {
    if w.is_empty() {
        "()".to_string()
    } else {
        w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Definition check: every pair of equal letters has a separating letter not
/// adjacent to them.
pub fn is_reduced(g: &SimplicialGraph, w: &[Vertex]) -> Result<bool, WordError> {
    g.check_word(w)?;
    Ok(is_reduced_unchecked(g, w))
}

pub(crate) fn is_reduced_unchecked(g: &SimplicialGraph, w: &[Vertex]) -> bool {
    for k in 0..w.len() {
        for l in (k + 1)..w.len() {
            if w[l] == w[k] {
                if (k + 1..l).all(|p| g.adjacent(w[k], w[p])) {
                    return false;
                }
                // any later equal letter is separated by w[l] itself
                break;
            }
        }
    }
    true
}

/// Reduces by repeatedly taking the leftmost pair of equal letters whose
/// intermediate letters all commute with them and deleting the earlier one
/// (it slides right onto its partner and merges).
pub fn reduce(g: &SimplicialGraph, w: &[Vertex]) -> ReducedWord {
    let mut w = w.to_vec();
    'outer: loop {
        for k in 0..w.len() {
            if let Some(off) = w[k + 1..].iter().position(|&x| x == w[k]) {
                let l = k + 1 + off;
                if (k + 1..l).all(|p| g.adjacent(w[k], w[p])) {
                    w.remove(k);
                    continue 'outer;
                }
            }
        }
        return ReducedWord(w);
    }
}

/// Breadth-first closure of a reduced word under swaps of neighbouring
/// adjacent letters.
pub fn equivalence_class(
    g: &SimplicialGraph,
    w: &ReducedWord,
    cap: usize,
) -> Result<BTreeSet<Vec<Vertex>>, WordError> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.0.clone());
    queue.push_back(w.0.clone());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if g.adjacent(cur[i], cur[i + 1]) {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(WordError::CapExceeded { cap });
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Positions of `w` (a reduced word) listed in lexicographic-normal-form
/// order: `normal_form(w)[k] == w[perm[k]]`. Equal letters keep their
/// relative order.
pub fn normal_form_permutation(g: &SimplicialGraph, w: &[Vertex]) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..w.len()).collect();
    let mut out = Vec::with_capacity(w.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for (k, &pos) in remaining.iter().enumerate() {
            let v = w[pos];
            if remaining[..k].iter().all(|&q| g.adjacent(w[q], v))
                && best.is_none_or(|b| v < w[remaining[b]])
            {
                best = Some(k);
            }
        }
        let k = best.expect("the first remaining letter is always left-movable");
        out.push(remaining.remove(k));
    }
    out
}

/// Lexicographically least reduced representative of the class of `w`.
pub fn normal_form(g: &SimplicialGraph, w: &[Vertex]) -> ReducedWord {
    let r = reduce(g, w);
    nf_of_reduced(g, &r.0)
}

pub(crate) fn nf_of_reduced(g: &SimplicialGraph, w: &[Vertex]) -> ReducedWord {
    let perm = normal_form_permutation(g, w);
    ReducedWord(perm.into_iter().map(|p| w[p]).collect())
}

/// Positions whose letter commutes with every letter before it.
pub fn left_movable(g: &SimplicialGraph, w: &[Vertex]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[..i].iter().all(|&u| g.adjacent(u, w[i]))).collect()
}

/// Positions whose letter commutes with every letter after it.
pub fn right_movable(g: &SimplicialGraph, w: &[Vertex]) -> Vec<usize> {
    (0..w.len()).filter(|&i| w[i + 1..].iter().all(|&u| g.adjacent(u, w[i]))).collect()
}

/// The concatenation of two reduced words is reduced iff no vertex is
/// right-movable in `u` and left-movable in `w` at the same time.
pub fn concat_is_reduced(g: &SimplicialGraph, u: &[Vertex], w: &[Vertex]) -> bool {
    let right: BTreeSet<Vertex> = right_movable(g, u).into_iter().map(|i| u[i]).collect();
    left_movable(g, w).into_iter().all(|j| !right.contains(&w[j]))
}

/// Right-hand non-commutative length with respect to `v0`; `-1` when no
/// representative of `w` ends in `v0`.
pub fn nc_length(g: &SimplicialGraph, w: &ReducedWord, v0: Vertex) -> Result<i64, WordError> {
    g.check_vertex(v0)?;
    g.check_word(w)?;
    Ok(nc_length_unchecked(g, w, v0))
}

pub(crate) fn nc_length_unchecked(g: &SimplicialGraph, w: &[Vertex], v0: Vertex) -> i64 {
    let Some(pos) = w.iter().rposition(|&x| x == v0) else {
        return -1;
    };
    if !w[pos + 1..].iter().all(|&u| g.adjacent(u, v0)) {
        return -1;
    }
    w[..pos].iter().filter(|&&u| !g.adjacent(u, v0)).count() as i64
}

/// Normal forms of the words obtained by deleting one left-movable or
/// right-movable letter.
pub fn truncations(g: &SimplicialGraph, w: &ReducedWord) -> BTreeSet<ReducedWord> {
    truncations_raw(g, &w.0)
}

fn truncations_raw(g: &SimplicialGraph, w: &[Vertex]) -> BTreeSet<ReducedWord> {
    let mut positions: BTreeSet<usize> = left_movable(g, w).into_iter().collect();
    positions.extend(right_movable(g, w));
    positions
        .into_iter()
        .map(|p| {
            let mut t = w.to_vec();
            t.remove(p);
            nf_of_reduced(g, &t)
        })
        .collect()
}

/// `{w}^⪯`: everything `w` truncates to, including `w` and the empty word.
pub fn down_set(g: &SimplicialGraph, w: &ReducedWord) -> BTreeSet<ReducedWord> {
    complete_closure_reduced(g, std::iter::once(nf_of_reduced(g, &w.0)))
}

/// Smallest complete set containing the normal forms of `xs`.
pub fn complete_closure(g: &SimplicialGraph, xs: &[VertexWord]) -> BTreeSet<ReducedWord> {
    complete_closure_reduced(g, xs.iter().map(|x| normal_form(g, x)))
}

fn complete_closure_reduced(
    g: &SimplicialGraph,
    seeds: impl IntoIterator<Item = ReducedWord>,
) -> BTreeSet<ReducedWord> {
    let mut out: BTreeSet<ReducedWord> = BTreeSet::new();
    out.insert(ReducedWord::empty());
    let mut queue: VecDeque<ReducedWord> = VecDeque::new();
    for s in seeds {
        if out.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(cur) = queue.pop_front() {
        for t in truncations_raw(g, &cur.0) {
            if out.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    out
}

/// Complete-set predicate: contains the empty word, every member is a
/// reduced normal form, and the set is closed under truncations.
pub fn is_complete(g: &SimplicialGraph, set: &BTreeSet<ReducedWord>) -> bool {
    set.contains(&ReducedWord::empty())
        && set.iter().all(|w| {
            is_reduced_unchecked(g, w)
                && nf_of_reduced(g, w) == *w
                && truncations_raw(g, w).iter().all(|t| set.contains(t))
        })
}

/// Maximum non-commutative length over a set of reduced words.
pub fn nc_length_of_set<'a>(
    g: &SimplicialGraph,
    set: impl IntoIterator<Item = &'a ReducedWord>,
    v0: Vertex,
) -> i64 {
    set.into_iter().map(|w| nc_length_unchecked(g, w, v0)).max().unwrap_or(-1)
}

/// `w ~ y · c · (v0) · b` in standard form with respect to `v0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StdForm {
    pub y: ReducedWord,
    pub c: ReducedWord,
    pub b: ReducedWord,
    pub v0: Vertex,
    /// Non-commutative length of `{w}^⪯` with respect to `v0`.
    pub nc: i64,
}

impl StdForm {
    pub fn concat(&self) -> Vec<Vertex> {
        let mut out = self.y.0.clone();
        out.extend_from_slice(&self.c);
        out.push(self.v0);
        out.extend_from_slice(&self.b);
        out
    }
}

/// Standard form by brute force over the equivalence class of `w` and the
/// truncation poset below it.
///
/// Among all factorizations `r = y c (v0) b` of representatives `r` of `w`,
/// keep those whose prefix `y c (v0)` attains the non-commutative length of
/// `{w}^⪯`, then those with the shortest `b`, then those whose `y (v0)` lies
/// below `w` with the same non-commutative length, then the shortest `y`.
/// Exactly one factorization (up to equivalence of the pieces) must survive.
pub fn standard_form(g: &SimplicialGraph, w: &ReducedWord, v0: Vertex) -> Result<StdForm, WordError> {
    g.check_vertex(v0)?;
    g.check_word(w)?;
    if !w.contains(&v0) {
        return Err(WordError::VertexAbsent(v0));
    }
    let below = down_set(g, w);
    let target = nc_length_of_set(g, &below, v0);
    let class = equivalence_class(g, w, CLASS_CAP)?;

    // (representative, position of the terminal v0)
    let mut prefix_hits: Vec<(&Vec<Vertex>, usize)> = Vec::new();
    for r in &class {
        for (k, _) in r.iter().enumerate().filter(|(_, &x)| x == v0) {
            let prefix = nf_of_reduced(g, &r[..=k]);
            if nc_length_unchecked(g, &prefix, v0) == target {
                prefix_hits.push((r, k));
            }
        }
    }
    let min_b = prefix_hits.iter().map(|(r, k)| r.len() - k - 1).min().ok_or(WordError::NonUnique(0))?;

    let mut y_ok: HashMap<Vec<Vertex>, bool> = HashMap::new();
    let mut survivors: Vec<(Vec<Vertex>, Vec<Vertex>, Vec<Vertex>)> = Vec::new();
    for (r, k) in prefix_hits.into_iter().filter(|(r, k)| r.len() - k - 1 == min_b) {
        for i in 0..=k {
            let y = &r[..i];
            let ok = *y_ok.entry(y.to_vec()).or_insert_with(|| {
                let mut yv = y.to_vec();
                yv.push(v0);
                is_reduced_unchecked(g, &yv) && {
                    let nf = nf_of_reduced(g, &yv);
                    nc_length_unchecked(g, &nf, v0) == target && below.contains(&nf)
                }
            });
            if ok {
                survivors.push((y.to_vec(), r[i..k].to_vec(), r[k + 1..].to_vec()));
            }
        }
    }
    let min_y = survivors.iter().map(|s| s.0.len()).min().ok_or(WordError::NonUnique(0))?;
    let distinct: BTreeSet<(ReducedWord, ReducedWord, ReducedWord)> = survivors
        .into_iter()
        .filter(|s| s.0.len() == min_y)
        .map(|(y, c, b)| (nf_of_reduced(g, &y), nf_of_reduced(g, &c), nf_of_reduced(g, &b)))
        .collect();
    if distinct.len() != 1 {
        return Err(WordError::NonUnique(distinct.len()));
    }
    let (y, c, b) = distinct.into_iter().next().expect("one element");
    Ok(StdForm { y, c, b, v0, nc: target })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> SimplicialGraph {
        SimplicialGraph::complete(2).unwrap()
    }

    fn rw(g: &SimplicialGraph, w: &[Vertex]) -> ReducedWord {
        ReducedWord::new(g, w.to_vec()).unwrap()
    }

    #[test]
    fn reducedness_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        assert!(!is_reduced(&k2(), &[0, 1, 0]).unwrap());
        assert!(is_reduced(&e2, &[0, 1, 0]).unwrap());
        assert!(is_reduced(&e2, &[]).unwrap());
        assert!(matches!(is_reduced(&e2, &[2]), Err(WordError::BadVertex { vertex: 2, n: 2 })));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&k2(), &[0, 1, 0]).letters(), &[1, 0]);
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        assert_eq!(reduce(&e2, &[0, 0, 1]).letters(), &[0, 1]);
        let e3 = SimplicialGraph::edgeless(3).unwrap();
        assert_eq!(reduce(&e3, &[2]).letters(), &[2]);
    }

    #[test]
    fn class_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        let c = equivalence_class(&e2, &rw(&e2, &[0, 1]), 10).unwrap();
        assert_eq!(c.len(), 1);
        let c = equivalence_class(&k2(), &rw(&k2(), &[0, 1]), 10).unwrap();
        assert_eq!(c, [vec![0, 1], vec![1, 0]].into_iter().collect());
        let p3 = SimplicialGraph::path(3).unwrap();
        let c = equivalence_class(&p3, &rw(&p3, &[0, 2]), 10).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn class_cap() {
        let k4 = SimplicialGraph::complete(4).unwrap();
        let w = rw(&k4, &[0, 1, 2, 3]);
        assert_eq!(equivalence_class(&k4, &w, 24).unwrap().len(), 24);
        assert_eq!(equivalence_class(&k4, &w, 23), Err(WordError::CapExceeded { cap: 23 }));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form(&k2(), &[1, 0]).letters(), &[0, 1]);
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        assert_eq!(normal_form(&e2, &[1, 0]).letters(), &[1, 0]);
        assert!(normal_form(&e2, &[]).is_empty());
    }

    #[test]
    fn normal_form_permutation_tracks_letters() {
        let p3 = SimplicialGraph::path(3).unwrap();
        // 2 and 1 commute, 0 and 1 commute, 0 and 2 do not
        let w = [2, 1, 0];
        let perm = normal_form_permutation(&p3, &w);
        let nf: Vec<_> = perm.iter().map(|&p| w[p]).collect();
        assert_eq!(nf, normal_form(&p3, &w).letters());
        assert_eq!(nf, vec![1, 2, 0]);
    }

    #[test]
    fn nc_length_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        assert_eq!(nc_length(&e2, &rw(&e2, &[0, 1, 0]), 0).unwrap(), 2);
        let p3 = SimplicialGraph::path(3).unwrap();
        assert_eq!(nc_length(&p3, &rw(&p3, &[0, 2, 1]), 1).unwrap(), 0);
        assert_eq!(nc_length(&e2, &rw(&e2, &[0]), 1).unwrap(), -1);
        // last v0 is blocked by a non-adjacent letter
        assert_eq!(nc_length(&e2, &rw(&e2, &[0, 1]), 0).unwrap(), -1);
        assert!(nc_length(&e2, &rw(&e2, &[0]), 5).is_err());
    }

    #[test]
    fn truncation_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        let t = truncations(&e2, &rw(&e2, &[0, 1]));
        assert_eq!(t, [rw(&e2, &[0]), rw(&e2, &[1])].into_iter().collect());
        let t = truncations(&e2, &rw(&e2, &[0, 1, 0]));
        assert_eq!(t, [rw(&e2, &[0, 1]), rw(&e2, &[1, 0])].into_iter().collect());
        let t = truncations(&e2, &rw(&e2, &[0]));
        assert_eq!(t, [ReducedWord::empty()].into_iter().collect());
    }

    #[test]
    fn closure_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        let c = complete_closure(&e2, &[VertexWord(vec![0, 1])]);
        let want: BTreeSet<_> =
            [vec![], vec![0], vec![1], vec![0, 1]].into_iter().map(|w| rw(&e2, &w)).collect();
        assert_eq!(c, want);
        let c = complete_closure(&e2, &[VertexWord(vec![0, 1, 0])]);
        assert_eq!(c.len(), 6);
        assert!(c.contains(&rw(&e2, &[1, 0])));
        assert!(is_complete(&e2, &c));
        let c = complete_closure(&e2, &[]);
        assert_eq!(c, [ReducedWord::empty()].into_iter().collect());
    }

    #[test]
    fn standard_form_examples() {
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        let sf = standard_form(&e2, &rw(&e2, &[0, 1, 0]), 0).unwrap();
        assert_eq!((sf.y.letters(), sf.c.letters(), sf.b.letters()), (&[0, 1][..], &[][..], &[][..]));
        assert_eq!(sf.nc, 2);

        let p3 = SimplicialGraph::path(3).unwrap();
        let sf = standard_form(&p3, &rw(&p3, &[0, 2, 1]), 1).unwrap();
        assert!(sf.y.is_empty());
        assert_eq!(sf.c.letters(), &[0, 2]);
        assert!(sf.b.is_empty());

        let sf = standard_form(&p3, &rw(&p3, &[1]), 1).unwrap();
        assert!(sf.y.is_empty() && sf.c.is_empty() && sf.b.is_empty());

        assert_eq!(standard_form(&p3, &rw(&p3, &[0]), 1), Err(WordError::VertexAbsent(1)));
    }

    #[test]
    fn standard_form_with_trailing_b() {
        // edgeless on 2: (0,1) w.r.t. 0 has nc 0 and b = (1)
        let e2 = SimplicialGraph::edgeless(2).unwrap();
        let sf = standard_form(&e2, &rw(&e2, &[0, 1]), 0).unwrap();
        assert_eq!(sf.nc, 0);
        assert!(sf.y.is_empty() && sf.c.is_empty());
        assert_eq!(sf.b.letters(), &[1]);
    }

    #[test]
    fn coloring_is_proper() {
        let p3 = SimplicialGraph::path(3).unwrap();
        assert_eq!(p3.greedy_coloring(), vec![0, 1, 0]);
        let k3 = SimplicialGraph::complete(3).unwrap();
        assert_eq!(k3.greedy_coloring(), vec![0, 1, 2]);
    }

    #[test]
    fn graph_validation() {
        assert!(SimplicialGraph::edgeless(0).is_err());
        assert!(SimplicialGraph::with_edges(2, &[(0, 0)]).is_err());
        assert!(SimplicialGraph::with_edges(2, &[(0, 2)]).is_err());
        assert_eq!(SimplicialGraph::all_on(3).len(), 8);
    }
}
