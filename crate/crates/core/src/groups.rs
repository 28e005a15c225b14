//! Finite groups, graph products of finite groups with normal-form
//! multiplication, and graph products of positive-definite functions.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphwords::{self, SimplicialGraph, Vertex};
use crate::mathcore::{self, CMatrix, MathError, PsdVerdict, C64, ONE, ZERO};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    Invalid(String),
    #[error("unknown group spec `{0}` (expected `cyclic:k` or `sym:3`)")]
    BadSpec(String),
    #[error("ball exceeds size cap of {cap}")]
    SizeCap { cap: usize },
    #[error("vertex {vertex} or element {element} out of range")]
    BadLetter { vertex: Vertex, element: usize },
    #[error("positive-definite family invalid: {0}")]
    InvalidFunction(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupDoc", into = "GroupDoc")]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    name: String,
    table: Vec<Vec<usize>>,
}

impl TryFrom<GroupDoc> for FiniteGroup {
    type Error = GroupError;

    fn try_from(d: GroupDoc) -> Result<Self, GroupError> {
        if d.table.len() > MAX_TABLE_ORDER {
            return Err(GroupError::Invalid(format!("order {} exceeds {MAX_TABLE_ORDER}", d.table.len())));
        }
        Self::from_table(d.name, d.table)
    }
}

impl From<FiniteGroup> for GroupDoc {
    fn from(g: FiniteGroup) -> Self {
        Self { name: g.name, table: g.table }
    }
}

/// Largest Cayley table accepted from serialized input.
pub const MAX_TABLE_ORDER: usize = 64;

impl FiniteGroup {
    /// Validates the group axioms exhaustively.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Invalid("table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupError::Invalid("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::Invalid(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::Invalid("table is not associative".into()));
                    }
                }
            }
        }
        Ok(Self { name: name.into(), table, identity, inverse })
    }

    /// `Z_k` with element `i` standing for `i mod k`.
    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::Invalid("cyclic group of order 0".into()));
        }
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Self::from_table(format!("cyclic:{k}"), table)
    }

    /// `S_3` acting on `{0,1,2}`; elements are the permutations in
    /// lexicographic order, composed as functions (`(ab)(i) = a(b(i))`).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table("sym:3", table).expect("S3 is a group")
    }

    /// Parses `cyclic:k` or `sym:3`.
    pub fn from_spec(spec: &str) -> Result<Self, GroupError> {
        let spec = spec.trim();
        if let Some(k) = spec.strip_prefix("cyclic:") {
            let k: usize = k.parse().map_err(|_| GroupError::BadSpec(spec.to_string()))?;
            if k == 0 || k > 64 {
                return Err(GroupError::BadSpec(spec.to_string()));
            }
            Self::cyclic(k)
        } else if spec == "sym:3" {
            Ok(Self::symmetric3())
        } else {
            Err(GroupError::BadSpec(spec.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&g| g != self.identity)
    }

    /// Left regular representation: `λ(g) e_h = e_{gh}`.
    pub fn regular_rep(&self, g: usize) -> CMatrix {
        let n = self.order();
        CMatrix::from_fn(n, n, |i, j| if self.mul(g, j) == i { ONE } else { ZERO })
    }
}

/// Element of a graph product of finite groups: a normal-form word of
/// `(vertex, non-identity element)` letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct GpGroupElement {
    letters: Vec<(Vertex, usize)>,
}

impl GpGroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[(Vertex, usize)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn vertex_word(&self) -> Vec<Vertex> {
        self.letters.iter().map(|l| l.0).collect()
    }
}

/// A graph together with one finite group per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProductGroup {
    pub graph: SimplicialGraph,
    pub groups: Vec<FiniteGroup>,
}

impl GraphProductGroup {
    pub fn new(graph: SimplicialGraph, groups: Vec<FiniteGroup>) -> Result<Self, GroupError> {
        if groups.len() != graph.n_vertices() {
            return Err(GroupError::Invalid(format!(
                "{} groups for {} vertices",
                groups.len(),
                graph.n_vertices()
            )));
        }
        Ok(Self { graph, groups })
    }

    pub fn letter(&self, v: Vertex, g: usize) -> Result<GpGroupElement, GroupError> {
        if v >= self.groups.len() || g >= self.groups[v].order() {
            return Err(GroupError::BadLetter { vertex: v, element: g });
        }
        Ok(self.normalize(vec![(v, g)]))
    }

    /// Arbitrary product of letters, brought to normal form.
    pub fn from_letters(&self, letters: &[(Vertex, usize)]) -> Result<GpGroupElement, GroupError> {
        for &(v, g) in letters {
            if v >= self.groups.len() || g >= self.groups[v].order() {
                return Err(GroupError::BadLetter { vertex: v, element: g });
            }
        }
        Ok(self.normalize(letters.to_vec()))
    }

    /// Drops identity letters, merges same-vertex letters that can be brought
    /// together across commuting letters, then sorts into normal form.
    fn normalize(&self, mut w: Vec<(Vertex, usize)>) -> GpGroupElement {
        w.retain(|&(v, g)| g != self.groups[v].identity());
        'outer: loop {
            for k in 0..w.len() {
                let v = w[k].0;
                if let Some(off) = w[k + 1..].iter().position(|l| l.0 == v) {
                    let l = k + 1 + off;
                    if (k + 1..l).all(|p| self.graph.adjacent(v, w[p].0)) {
                        let prod = self.groups[v].mul(w[k].1, w[l].1);
                        w.remove(l);
                        if prod == self.groups[v].identity() {
                            w.remove(k);
                        } else {
                            w[k].1 = prod;
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        let verts: Vec<Vertex> = w.iter().map(|l| l.0).collect();
        let perm = graphwords::normal_form_permutation(&self.graph, &verts);
        GpGroupElement { letters: perm.into_iter().map(|p| w[p]).collect() }
    }

    pub fn mul(&self, a: &GpGroupElement, b: &GpGroupElement) -> GpGroupElement {
        let mut w = a.letters.clone();
        w.extend_from_slice(&b.letters);
        self.normalize(w)
    }

    pub fn inverse(&self, a: &GpGroupElement) -> GpGroupElement {
        let w = a.letters.iter().rev().map(|&(v, g)| (v, self.groups[v].inv(g))).collect();
        self.normalize(w)
    }

    /// Single-letter generators `(v, g)` with `g` not the identity.
    pub fn generators(&self) -> Vec<GpGroupElement> {
        let mut out = Vec::new();
        for (v, grp) in self.groups.iter().enumerate() {
            for g in grp.non_identity() {
                out.push(GpGroupElement { letters: vec![(v, g)] });
            }
        }
        out
    }

    /// All elements of normal-form length at most `radius`.
    pub fn ball(&self, radius: usize, cap: usize) -> Result<BTreeSet<GpGroupElement>, GroupError> {
        let gens = self.generators();
        let mut seen = BTreeSet::new();
        seen.insert(GpGroupElement::identity());
        let mut frontier = VecDeque::from([GpGroupElement::identity()]);
        while let Some(cur) = frontier.pop_front() {
            if cur.len() >= radius {
                continue;
            }
            for s in &gens {
                let next = self.mul(&cur, s);
                if next.len() <= radius && seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(GroupError::SizeCap { cap });
                    }
                    frontier.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    /// Uniformly random product of `len` generators.
    pub fn random_element<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> GpGroupElement {
        let gens = self.generators();
        let mut acc = GpGroupElement::identity();
        if gens.is_empty() {
            return acc;
        }
        for _ in 0..len {
            acc = self.mul(&acc, &gens[rng.gen_range(0..gens.len())]);
        }
        acc
    }
}

/// A `D x D`-matrix-valued function on a finite group, indexed by element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdFunction {
    pub values: Vec<CMatrix>,
}

impl PdFunction {
    pub fn dim(&self) -> usize {
        self.values[0].rows()
    }

    /// Full Gram `[f(g^{-1} h)]` over the group.
    pub fn full_gram(&self, group: &FiniteGroup) -> CMatrix {
        let n = group.order();
        let d = self.dim();
        let mut out = CMatrix::zeros(n * d, n * d);
        for g in 0..n {
            for h in 0..n {
                out.set_block(g * d, h * d, &self.values[group.mul(group.inv(g), h)]);
            }
        }
        out
    }

    pub fn check(&self, group: &FiniteGroup, tol: f64) -> Result<PsdVerdict, GroupError> {
        if self.values.len() != group.order() {
            return Err(GroupError::InvalidFunction("one value per group element required".into()));
        }
        let d = self.dim();
        if self.values.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(GroupError::InvalidFunction("values must share one square shape".into()));
        }
        if self.values[group.identity()].dist(&CMatrix::identity(d)) > 1e-10 {
            return Err(GroupError::InvalidFunction("f(e) must be the identity".into()));
        }
        Ok(mathcore::is_psd(&self.full_gram(group), tol)?)
    }
}

/// `f(g) = W* (λ(g) ⊗ I_m) W` for the left regular representation `λ` and a
/// random isometry `W: C^D -> C^{|G| m}`.
pub fn random_pd<R: Rng + ?Sized>(group: &FiniteGroup, dim: usize, rng: &mut R) -> PdFunction {
    let n = group.order();
    let m = dim.div_ceil(n).max(1);
    let w = mathcore::random_isometry(dim, n * m, rng).expect("dim <= n*m");
    let wa = w.adjoint();
    let values = (0..n)
        .map(|g| {
            let rep = group.regular_rep(g).kron(&CMatrix::identity(m));
            let img = &(&wa * &rep) * &w;
            // f(e) is exactly the identity in exact arithmetic
            if g == group.identity() {
                CMatrix::identity(dim)
            } else {
                img
            }
        })
        .collect();
    PdFunction { values }
}

/// Positive-definite functions on the vertex groups of a graph product, all
/// valued in one matrix algebra, with commuting ranges along edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdFamily {
    pub product: GraphProductGroup,
    pub functions: Vec<PdFunction>,
}

impl PdFamily {
    pub fn new(product: GraphProductGroup, functions: Vec<PdFunction>) -> Result<Self, GroupError> {
        if functions.len() != product.groups.len() {
            return Err(GroupError::InvalidFunction("one function per vertex required".into()));
        }
        let d = functions[0].dim();
        for (f, g) in functions.iter().zip(&product.groups) {
            if f.dim() != d {
                return Err(GroupError::InvalidFunction("functions differ in dimension".into()));
            }
            let v = f.check(g, 1e-9)?;
            if !v.pass {
                return Err(GroupError::InvalidFunction(format!(
                    "vertex function not positive-definite (min eigenvalue {:.3e})",
                    v.min_eig
                )));
            }
        }
        for (i, j) in product.graph.edges() {
            for a in &functions[i].values {
                for b in &functions[j].values {
                    if a.commutator(b).max_abs() > 1e-10 {
                        return Err(GroupError::InvalidFunction(format!(
                            "ranges at adjacent vertices {i} and {j} do not commute"
                        )));
                    }
                }
            }
        }
        Ok(Self { product, functions })
    }

    pub fn dim(&self) -> usize {
        self.functions[0].dim()
    }

    /// The graph product function: product of vertex values along the
    /// normal-form letters, identity at `e`.
    pub fn eval(&self, g: &GpGroupElement) -> CMatrix {
        g.letters.iter().fold(CMatrix::identity(self.dim()), |acc, &(v, x)| {
            &acc * &self.functions[v].values[x]
        })
    }

    /// Block Gram `[F(g_i^{-1} g_j)]` over a sample.
    pub fn gram(&self, sample: &[GpGroupElement]) -> CMatrix {
        let d = self.dim();
        let n = sample.len();
        let inverses: Vec<_> = sample.iter().map(|g| self.product.inverse(g)).collect();
        let mut out = CMatrix::zeros(n * d, n * d);
        for i in 0..n {
            for j in 0..n {
                let h = self.product.mul(&inverses[i], &sample[j]);
                out.set_block(i * d, j * d, &self.eval(&h));
            }
        }
        out
    }

    pub fn check_gp_pd(&self, sample: &[GpGroupElement], tol: f64) -> Result<PsdVerdict, GroupError> {
        Ok(mathcore::is_psd(&self.gram(sample), tol)?)
    }
}

/// Builds a commuting-range family by the coloring-block recipe: the target
/// is `⊗_c C^{leg_dims[c]}` over the greedy coloring, and the vertex function
/// acts on its color's leg.
pub fn random_pd_family<R: Rng + ?Sized>(
    product: GraphProductGroup,
    leg_dims: &[usize],
    rng: &mut R,
) -> Result<PdFamily, GroupError> {
    let colors = product.graph.greedy_coloring();
    let n_colors = colors.iter().max().map_or(0, |c| c + 1);
    if leg_dims.len() < n_colors || leg_dims.contains(&0) {
        return Err(GroupError::InvalidFunction(format!(
            "need {n_colors} positive leg dimensions, got {leg_dims:?}"
        )));
    }
    let legs = &leg_dims[..n_colors];
    let functions = product
        .groups
        .iter()
        .zip(&colors)
        .map(|(grp, &c)| {
            let local = random_pd(grp, legs[c], rng);
            PdFunction { values: local.values.iter().map(|m| embed_leg(m, legs, c)).collect() }
        })
        .collect();
    PdFamily::new(product, functions)
}

/// `I ⊗ .. ⊗ m ⊗ .. ⊗ I` with `m` on leg `c`.
pub fn embed_leg(m: &CMatrix, legs: &[usize], c: usize) -> CMatrix {
    let before: usize = legs[..c].iter().product();
    let after: usize = legs[c + 1..].iter().product();
    CMatrix::identity(before).kron(m).kron(&CMatrix::identity(after))
}

/// Scalar function on `Z_2` with `f(1) = r`; positive-definite iff `|r| <= 1`.
pub fn scalar_z2(r: f64) -> PdFunction {
    PdFunction {
        values: vec![CMatrix::identity(1), CMatrix::scalar(1, C64::new(r, 0.0))],
    }
}

/// Parameters of the positive-definite suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdSuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Fixed graph and vertex groups; random otherwise.
    pub graph: Option<SimplicialGraph>,
    pub groups: Option<Vec<FiniteGroup>>,
    pub max_vertices: usize,
    /// Vertex groups are cyclic of order `2..=max_order`.
    pub max_order: usize,
    pub max_radius: usize,
    /// Size of each vertex function's values.
    pub max_dim: usize,
    /// Cap on the product of leg sizes.
    pub max_total_dim: usize,
    /// Larger balls are subsampled to this many elements.
    pub max_sample: usize,
    pub tol: f64,
}

impl Default for PdSuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            graph: None,
            groups: None,
            max_vertices: 4,
            max_order: 3,
            max_radius: 2,
            max_dim: 2,
            max_total_dim: 4,
            max_sample: 40,
            tol: 1e-8,
        }
    }
}

const BALL_CAP: usize = 20_000;

/// One trial: random graph, cyclic vertex groups, coloring-block pd family,
/// and the block Gram over a ball.
pub fn pd_trial<R: Rng + ?Sized>(
    cfg: &PdSuiteConfig,
    rng: &mut R,
) -> Result<(PsdVerdict, serde_json::Value), GroupError> {
    let g = match &cfg.graph {
        Some(g) => g.clone(),
        None => {
            let n = rng.gen_range(1..=cfg.max_vertices.max(1));
            let mut g = SimplicialGraph::edgeless(n).map_err(|e| GroupError::Invalid(e.to_string()))?;
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j).map_err(|e| GroupError::Invalid(e.to_string()))?;
                    }
                }
            }
            g
        }
    };
    let n = g.n_vertices();
    let groups = match &cfg.groups {
        Some(gs) if gs.len() == n => gs.clone(),
        Some(gs) => return Err(GroupError::Invalid(format!("{} groups for {n} vertices", gs.len()))),
        None => (0..n)
            .map(|_| FiniteGroup::cyclic(rng.gen_range(2..=cfg.max_order.max(2))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let n_colors = g.greedy_coloring().into_iter().max().map_or(0, |c| c + 1);
    let mut legs = Vec::with_capacity(n_colors);
    let mut total = 1;
    for _ in 0..n_colors {
        let d = rng.gen_range(1..=cfg.max_dim.max(1));
        let d = if total * d > cfg.max_total_dim { 1 } else { d };
        total *= d;
        legs.push(d);
    }
    let product = GraphProductGroup::new(g.clone(), groups)?;
    let family = random_pd_family(product, &legs, rng)?;
    let radius = rng.gen_range(1..=cfg.max_radius.max(1));
    let mut sample: Vec<GpGroupElement> = family.product.ball(radius, BALL_CAP)?.into_iter().collect();
    if sample.len() > cfg.max_sample {
        let rest: Vec<GpGroupElement> = sample.split_off(1);
        let picked = rand::seq::index::sample(rng, rest.len(), cfg.max_sample - 1);
        sample.extend(picked.into_iter().map(|i| rest[i].clone()));
    }
    let verdict = family.check_gp_pd(&sample, cfg.tol)?;
    let artifact = serde_json::json!({
        "graph": g,
        "groups": family.product.groups.iter().map(|x| x.name().to_string()).collect::<Vec<_>>(),
        "legs": legs,
        "radius": radius,
        "sample": sample,
        "verdict": verdict,
    });
    Ok((verdict, artifact))
}

pub fn run_pd_suite(cfg: &PdSuiteConfig) -> crate::report::SuiteReport {
    use crate::report::{run_trials, violation, Outcome, SuiteReport};
    let results = run_trials(cfg.seed, cfg.trials, |_, rng| pd_trial(cfg, rng));
    let mut report = SuiteReport::new("pd", cfg.seed);
    let mut max_sample = 0usize;
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: serde_json::json!({ "trial": i, "error": e.to_string() }) },
            Ok((v, a)) => {
                max_sample = max_sample.max(a["sample"].as_array().map_or(0, Vec::len));
                if v.pass {
                    Outcome::Pass { residual: violation(v.relative_slack()) }
                } else {
                    Outcome::Fail { residual: violation(v.relative_slack()), artifact: a }
                }
            }
        });
    }
    report.metric("max_sample", max_sample as f64);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn z2_product(g: SimplicialGraph) -> GraphProductGroup {
        let n = g.n_vertices();
        GraphProductGroup::new(g, vec![FiniteGroup::cyclic(2).unwrap(); n]).unwrap()
    }

    #[test]
    fn group_constructors() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inv(1), 2);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        // S3 is not abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert!(FiniteGroup::from_spec("cyclic:0").is_err());
        assert!(FiniteGroup::from_spec("dihedral:4").is_err());
        assert_eq!(FiniteGroup::from_spec(" sym:3 ").unwrap(), s3);
    }

    #[test]
    fn table_validation() {
        // not associative: a latin square that is not a group
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("bad", bad).is_err());
    }

    #[test]
    fn inverse_cancels() {
        let gp = z2_product(SimplicialGraph::path(3).unwrap());
        let a = gp.from_letters(&[(0, 1), (2, 1), (1, 1)]).unwrap();
        assert_eq!(gp.mul(&a, &gp.inverse(&a)), GpGroupElement::identity());
    }

    #[test]
    fn commuting_letters_cancel() {
        let gp = z2_product(SimplicialGraph::complete(2).unwrap());
        let x = gp.from_letters(&[(0, 1), (1, 1), (0, 1)]).unwrap();
        assert_eq!(x.letters(), &[(1, 1)]);
        let free = z2_product(SimplicialGraph::edgeless(2).unwrap());
        assert_eq!(free.from_letters(&[(0, 1), (1, 1)]).unwrap().len(), 2);
    }

    #[test]
    fn ball_examples() {
        let free = z2_product(SimplicialGraph::edgeless(2).unwrap());
        assert_eq!(free.ball(0, 100).unwrap().len(), 1);
        // {e, a, b, ab, ba}
        assert_eq!(free.ball(2, 100).unwrap().len(), 5);
        let k2 = z2_product(SimplicialGraph::complete(2).unwrap());
        // {e, a, b, ab}
        assert_eq!(k2.ball(2, 100).unwrap().len(), 4);
        assert_eq!(free.ball(6, 5), Err(GroupError::SizeCap { cap: 5 }));
    }

    #[test]
    fn pd_eval_examples() {
        let gp = z2_product(SimplicialGraph::complete(2).unwrap());
        let mut rng = seeded(3);
        let fam = random_pd_family(gp, &[2, 2], &mut rng).unwrap();
        assert_eq!(fam.eval(&GpGroupElement::identity()), CMatrix::identity(4));
        let a = fam.product.letter(0, 1).unwrap();
        assert!(fam.eval(&a).dist(&fam.functions[0].values[1]) < 1e-15);
        let ab = &fam.functions[0].values[1] * &fam.functions[1].values[1];
        let ba = &fam.functions[1].values[1] * &fam.functions[0].values[1];
        assert!(ab.dist(&ba) < 1e-12);
    }

    #[test]
    fn scalar_z2_ball_gram() {
        let gp = z2_product(SimplicialGraph::edgeless(2).unwrap());
        let fam = PdFamily::new(gp, vec![scalar_z2(0.7), scalar_z2(-0.4)]).unwrap();
        let ball: Vec<_> = fam.product.ball(1, 100).unwrap().into_iter().collect();
        assert!(fam.check_gp_pd(&ball, 1e-8).unwrap().pass);
        // |r| > 1 is not positive-definite
        let gp = z2_product(SimplicialGraph::edgeless(2).unwrap());
        assert!(PdFamily::new(gp, vec![scalar_z2(1.5), scalar_z2(0.1)]).is_err());
    }

    #[test]
    fn random_pd_is_pd() {
        let mut rng = seeded(9);
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let f = random_pd(&z3, 2, &mut rng);
        assert!(f.check(&z3, 1e-9).unwrap().pass);
        let s3 = FiniteGroup::symmetric3();
        let f = random_pd(&s3, 2, &mut rng);
        assert!(f.check(&s3, 1e-9).unwrap().pass);
    }
}
