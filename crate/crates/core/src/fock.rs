//! Truncated graph product Hilbert space, left representations and the
//! vacuum state.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::graphwords::{self, SimplicialGraph, Vertex, WordError};
use crate::mathcore::{self, CMatrix, MathError, C64, ONE, ZERO};
use crate::report::{run_trials, Outcome, SuiteReport};
use crate::rng::TrialRng;
use crate::staralg::{random_density, AElem, GraphProductAlgebra, StarError, VertexAlgebra};

pub const DEFAULT_CUTOFF: usize = 4;
pub const DEFAULT_DIM_CAP: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("Fock dimension {dim} exceeds the budget {cap}")]
    BudgetExceeded { dim: usize, cap: usize },
    #[error("word of length {len} is beyond the cutoff {cutoff}")]
    BeyondCutoff { len: usize, cutoff: usize },
    #[error("letter at vertex {vertex} is not centered (state {value:.3e})")]
    NotCentered { vertex: Vertex, value: f64 },
    #[error("operator at vertex {vertex} has size {got}, expected {expected}")]
    DimensionMismatch { vertex: Vertex, got: usize, expected: usize },
    #[error("GNS construction needs a finite faithful representation")]
    Unsupported,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// A Hilbert space with distinguished unit vector: the first basis vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSpace {
    pub dim: usize,
}

impl VertexSpace {
    pub fn xi(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        v[0] = ONE;
        v
    }

    /// Dimension of the orthogonal complement of `ξ`.
    pub fn centered_dim(&self) -> usize {
        self.dim - 1
    }
}

/// GNS triple of an algebra with its state, in an orthonormal basis whose
/// first vector is the class of the unit.
#[derive(Clone, Debug)]
pub struct Gns {
    pub space: VertexSpace,
    algebra: VertexAlgebra,
    /// Coefficient vector to coordinates of its class.
    coords: CMatrix,
    /// Right inverse of `coords` on its range.
    lift: CMatrix,
}

const GNS_CUTOFF: f64 = 1e-12;

/// Completes `first` (unit length) to an orthonormal basis of `C^r`.
fn complete_basis(first: Vec<C64>) -> CMatrix {
    let r = first.len();
    let mut qs = vec![first];
    for e in 0..r {
        if qs.len() == r {
            break;
        }
        let mut v = vec![ZERO; r];
        v[e] = ONE;
        for _ in 0..2 {
            for q in &qs {
                let ip: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= ip * qi;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            qs.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    CMatrix::from_fn(r, r, |i, j| qs[j][i])
}

/// `⟨a, b⟩ = φ(b*a)`, null vectors quotiented, `π(a)` acting by left
/// multiplication.
pub fn gns(algebra: &VertexAlgebra) -> Result<Gns, FockError> {
    algebra.represent(&algebra.unit()).ok_or(FockError::Unsupported)?;
    let n = algebra.dim();
    let basis: Vec<AElem> = (0..n).map(|i| algebra.basis(i)).collect();
    let mut form = CMatrix::zeros(n, n);
    for k in 0..n {
        let bk = algebra.adjoint(&basis[k]);
        for l in 0..n {
            form[(k, l)] = algebra.state(&algebra.mul(&bk, &basis[l])?);
        }
    }
    let eig = mathcore::herm_eig(&form.hermitian_part())?;
    let top = eig.max().max(0.0);
    let kept: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > GNS_CUTOFF * top.max(1.0)).collect();
    let r = kept.len();
    let q = &eig.eigenvectors;
    let factor = CMatrix::from_fn(r, n, |i, j| q[(j, kept[i])].conj() * eig.eigenvalues[kept[i]].sqrt());
    let inv = CMatrix::from_fn(n, r, |i, j| q[(i, kept[j])] / eig.eigenvalues[kept[j]].sqrt());
    let xi = factor.mat_vec(&algebra.unit().0);
    let b = complete_basis(xi);
    Ok(Gns {
        space: VertexSpace { dim: r },
        algebra: algebra.clone(),
        coords: &b.adjoint() * &factor,
        lift: &inv * &b,
    })
}

impl Gns {
    /// `π(a)` in the orthonormal basis.
    pub fn pi(&self, a: &AElem) -> Result<CMatrix, FockError> {
        let n = self.algebra.dim();
        let mut left = CMatrix::zeros(n, n);
        for l in 0..n {
            let col = self.algebra.mul(a, &self.algebra.basis(l))?;
            for (k, z) in col.0.iter().enumerate() {
                left[(k, l)] = *z;
            }
        }
        Ok(&(&self.coords * &left) * &self.lift)
    }

    /// Coordinates of the class of `a`.
    pub fn class_of(&self, a: &AElem) -> Vec<C64> {
        self.coords.mat_vec(&a.0)
    }
}

/// Basis vector of the truncated space: a minimal word and, per letter, an
/// index `1..dim` into the complement of `ξ` at that vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockLabel {
    pub word: Vec<Vertex>,
    pub idx: Vec<usize>,
}

/// `CΩ ⊕ ⨁_{|w| ≤ L} H_w` in a product basis indexed by minimal words.
#[derive(Clone, Debug)]
pub struct TruncatedFock {
    graph: SimplicialGraph,
    spaces: Vec<VertexSpace>,
    cutoff: usize,
    basis: Vec<FockLabel>,
    index: HashMap<FockLabel, usize>,
}

/// Result of [`TruncatedFock::lambda`]; `partial` when some image left the
/// truncated space and was dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaOp {
    pub matrix: CMatrix,
    pub partial: bool,
}

fn minimal_words(g: &SimplicialGraph, max_len: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    let mut level: BTreeSet<Vec<Vertex>> = BTreeSet::from([Vec::new()]);
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for w in &level {
            for v in 0..g.n_vertices() {
                let mut c = w.clone();
                c.push(v);
                if graphwords::concat_is_reduced(g, w, &[v]) {
                    next.insert(graphwords::normal_form(g, &c).into_vec());
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

impl TruncatedFock {
    pub fn new(graph: &SimplicialGraph, spaces: Vec<VertexSpace>, cutoff: usize, cap: usize) -> Result<Self, FockError> {
        if spaces.len() != graph.n_vertices() {
            return Err(FockError::Word(WordError::InvalidGraph(format!("{} vertex spaces for {} vertices", spaces.len(), graph.n_vertices()))));
        }
        let mut basis = Vec::new();
        for w in minimal_words(graph, cutoff) {
            let sizes: Vec<usize> = w.iter().map(|&v| spaces[v].centered_dim()).collect();
            let count: usize = sizes.iter().product();
            if basis.len() + count > cap {
                return Err(FockError::BudgetExceeded { dim: basis.len() + count, cap });
            }
            for flat in 0..count {
                let mut rem = flat;
                let mut idx = vec![0; w.len()];
                for k in (0..w.len()).rev() {
                    idx[k] = 1 + rem % sizes[k];
                    rem /= sizes[k];
                }
                basis.push(FockLabel { word: w.clone(), idx });
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Ok(Self { graph: graph.clone(), spaces, cutoff, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn basis(&self) -> &[FockLabel] {
        &self.basis
    }

    pub fn vacuum(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim()];
        v[0] = ONE;
        v
    }

    /// Indices of basis vectors on words of length at most `max_len`.
    pub fn indices_up_to(&self, max_len: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].word.len() <= max_len).collect()
    }

    fn canonical(&self, word: Vec<Vertex>, idx: Vec<usize>) -> FockLabel {
        let perm = graphwords::normal_form_permutation(&self.graph, &word);
        FockLabel { word: perm.iter().map(|&p| word[p]).collect(), idx: perm.iter().map(|&p| idx[p]).collect() }
    }

    /// `U_l(v0)*` on a basis vector: the `H_{v0}` index (0 for `ξ`) and the rest.
    fn split(&self, v0: Vertex, j: usize) -> (usize, FockLabel) {
        let b = &self.basis[j];
        let hit = graphwords::left_movable(&self.graph, &b.word).into_iter().find(|&p| b.word[p] == v0);
        match hit {
            None => (0, b.clone()),
            Some(p) => {
                let (mut w, mut idx) = (b.word.clone(), b.idx.clone());
                w.remove(p);
                let k = idx.remove(p);
                (k, self.canonical(w, idx))
            }
        }
    }

    /// `U_l(v0)` on `e_k ⊗ rest`; `None` past the cutoff.
    fn join(&self, v0: Vertex, k: usize, rest: &FockLabel) -> Option<usize> {
        if k == 0 {
            return self.index.get(rest).copied();
        }
        if rest.word.len() + 1 > self.cutoff {
            return None;
        }
        let mut w = vec![v0];
        w.extend_from_slice(&rest.word);
        let mut idx = vec![k];
        idx.extend_from_slice(&rest.idx);
        self.index.get(&self.canonical(w, idx)).copied()
    }

    fn check_op(&self, v0: Vertex, x: &CMatrix) -> Result<(), FockError> {
        self.graph.check_vertex(v0)?;
        let d = self.spaces[v0].dim;
        if x.rows() != d || x.cols() != d {
            return Err(FockError::DimensionMismatch { vertex: v0, got: x.rows(), expected: d });
        }
        Ok(())
    }

    /// `λ_{v0}(x)` applied to a vector; the flag reports dropped overflow.
    pub fn apply_lambda(&self, v0: Vertex, x: &CMatrix, vec: &[C64]) -> Result<(Vec<C64>, bool), FockError> {
        self.check_op(v0, x)?;
        let mut out = vec![ZERO; self.dim()];
        let mut overflow = false;
        for (j, &z) in vec.iter().enumerate() {
            if z == ZERO {
                continue;
            }
            let (k, rest) = self.split(v0, j);
            for i in 0..x.rows() {
                let c = x[(i, k)] * z;
                if c == ZERO {
                    continue;
                }
                match self.join(v0, i, &rest) {
                    Some(t) => out[t] += c,
                    None => overflow = true,
                }
            }
        }
        Ok((out, overflow))
    }

    /// `λ_{v0}(x) = U_l(v0)(x⊗1)U_l(v0)*` on the truncated space.
    pub fn lambda(&self, v0: Vertex, x: &CMatrix) -> Result<LambdaOp, FockError> {
        self.check_op(v0, x)?;
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        let mut partial = false;
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e[j] = ONE;
            let (col, o) = self.apply_lambda(v0, x, &e)?;
            e[j] = ZERO;
            partial |= o;
            for (i, z) in col.into_iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(LambdaOp { matrix: m, partial })
    }

    /// `⟨λ_{w1}(x1)⋯λ_{wm}(xm)Ω, Ω⟩`, exact for `m ≤ L`.
    pub fn moment(&self, letters: &[(Vertex, CMatrix)]) -> Result<C64, FockError> {
        if letters.len() > self.cutoff {
            return Err(FockError::BeyondCutoff { len: letters.len(), cutoff: self.cutoff });
        }
        let mut v = self.vacuum();
        for (w, x) in letters.iter().rev() {
            v = self.apply_lambda(*w, x, &v)?.0;
        }
        Ok(v[0])
    }
}

/// Restriction of `m` to the columns in `cols`, all rows kept.
pub fn restrict_columns(m: &CMatrix, cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(m.rows(), cols.len(), |i, j| m[(i, cols[j])])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceVerdict {
    pub value: C64,
    pub pass: bool,
}

/// Vacuum expectation of a product of centered letters must vanish.
pub fn check_independence(
    f: &TruncatedFock,
    letters: &[(Vertex, CMatrix)],
    budget: usize,
    tol: f64,
) -> Result<IndependenceVerdict, FockError> {
    if f.dim() > budget {
        return Err(FockError::BudgetExceeded { dim: f.dim(), cap: budget });
    }
    for (v, x) in letters {
        f.check_op(*v, x)?;
        let phi = x[(0, 0)];
        if phi.norm() > tol * (1.0 + mathcore::op_norm(x)) {
            return Err(FockError::NotCentered { vertex: *v, value: phi.norm() });
        }
    }
    let value = f.moment(letters)?;
    Ok(IndependenceVerdict { value, pass: value.norm() <= tol })
}

/// The reduced graph product: GNS at every vertex plus the truncated space.
#[derive(Clone, Debug)]
pub struct FockModel {
    pub product: GraphProductAlgebra,
    pub gns: Vec<Gns>,
    pub fock: TruncatedFock,
}

impl FockModel {
    pub fn new(product: GraphProductAlgebra, cutoff: usize, cap: usize) -> Result<Self, FockError> {
        let gns: Vec<Gns> = product.algebras.iter().map(gns).collect::<Result<_, _>>()?;
        let spaces = gns.iter().map(|g| g.space.clone()).collect();
        let fock = TruncatedFock::new(&product.graph, spaces, cutoff, cap)?;
        Ok(Self { product, gns, fock })
    }

    pub fn lambda(&self, v: Vertex, a: &AElem) -> Result<LambdaOp, FockError> {
        self.fock.lambda(v, &self.gns[v].pi(a)?)
    }

    pub fn moment(&self, letters: &[(Vertex, AElem)]) -> Result<C64, FockError> {
        let ops: Vec<(Vertex, CMatrix)> =
            letters.iter().map(|(v, a)| Ok((*v, self.gns[*v].pi(a)?))).collect::<Result<_, FockError>>()?;
        self.fock.moment(&ops)
    }

    /// The same moment from the formal graph product.
    pub fn formal_moment(&self, letters: &[(Vertex, AElem)]) -> Result<C64, FockError> {
        Ok(self.product.vacuum_state(&self.product.word(letters)?))
    }
}

/// Parameters of the Fock suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockConfig {
    pub seed: u64,
    pub max_vertices: usize,
    /// Largest matrix size per vertex.
    pub max_d: usize,
    pub max_word_len: usize,
    pub tol: f64,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { seed: 0, max_vertices: 4, max_d: 2, max_word_len: 3, tol: 1e-10 }
    }
}

fn random_model(g: &SimplicialGraph, cfg: &FockConfig, cutoff: usize, rng: &mut TrialRng) -> Result<FockModel, FockError> {
    let algebras = (0..g.n_vertices())
        .map(|_| {
            let d = rng.gen_range(1..=cfg.max_d.max(1));
            VertexAlgebra::matrix(random_density(d, rng))
        })
        .collect::<Result<Vec<_>, _>>()?;
    FockModel::new(GraphProductAlgebra::new(g.clone(), algebras)?, cutoff, DEFAULT_DIM_CAP)
}

fn unit_letter(alg: &VertexAlgebra, rng: &mut TrialRng) -> AElem {
    let a = alg.random_element(rng);
    let n = alg.norm(&a);
    if n > 0.0 {
        a.scale(C64::new(1.0 / n, 0.0))
    } else {
        alg.unit()
    }
}

fn all_sequences(n: usize, max_len: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w: &Vec<Vertex>| {
                (0..n).map(move |v| {
                    let mut c = w.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Graph list for the exhaustive suites: every graph on `1..=max_n` vertices.
pub fn all_small_graphs(max_n: usize) -> Vec<SimplicialGraph> {
    (1..=max_n).flat_map(SimplicialGraph::all_on).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MomentTrial {
    pub words: usize,
    pub moment_residual: f64,
    pub commutation_residual: f64,
    pub homomorphism_residual: f64,
    pub adjoint_residual: f64,
}

/// Every vertex sequence of length `≤ max_word_len` with random unit-norm
/// letters, against the formal vacuum state; plus edge commutation and
/// the homomorphism property of `λ` on the safe subspace.
pub fn moment_trial(g: &SimplicialGraph, cfg: &FockConfig, rng: &mut TrialRng) -> Result<MomentTrial, FockError> {
    let cutoff = cfg.max_word_len.max(2);
    let model = random_model(g, cfg, cutoff, rng)?;
    let n = g.n_vertices();
    let mut t = MomentTrial::default();
    for seq in all_sequences(n, cfg.max_word_len) {
        let letters: Vec<(Vertex, AElem)> = seq.iter().map(|&v| (v, unit_letter(&model.product.algebras[v], rng))).collect();
        let r = (model.moment(&letters)? - model.formal_moment(&letters)?).norm();
        t.moment_residual = t.moment_residual.max(r);
        t.words += 1;
    }
    let f = &model.fock;
    let safe2 = f.indices_up_to(cutoff - 2);
    let safe1 = f.indices_up_to(cutoff - 1);
    let sub = |m: &CMatrix| CMatrix::from_fn(safe1.len(), safe1.len(), |i, j| m[(safe1[i], safe1[j])]);
    for v in 0..n {
        let alg = &model.product.algebras[v];
        let (a, b) = (unit_letter(alg, rng), unit_letter(alg, rng));
        let la = model.lambda(v, &a)?.matrix;
        let lb = model.lambda(v, &b)?.matrix;
        let lab = model.lambda(v, &alg.mul(&a, &b)?)?.matrix;
        let hom = restrict_columns(&(&lab - &(&la * &lb)), &safe2);
        t.homomorphism_residual = t.homomorphism_residual.max(hom.max_abs());
        let ladj = model.lambda(v, &alg.adjoint(&a))?.matrix;
        t.adjoint_residual = t.adjoint_residual.max(sub(&ladj).dist(&sub(&la).adjoint()));
    }
    for (v, w) in g.edges() {
        let x = model.lambda(v, &unit_letter(&model.product.algebras[v], rng))?.matrix;
        let y = model.lambda(w, &unit_letter(&model.product.algebras[w], rng))?.matrix;
        let c = restrict_columns(&x.commutator(&y), &safe2);
        t.commutation_residual = t.commutation_residual.max(c.max_abs());
    }
    Ok(t)
}

/// Exhaustive moment consistency over all graphs up to `max_vertices`.
pub fn run_moments_suite(cfg: &FockConfig) -> SuiteReport {
    let graphs = all_small_graphs(cfg.max_vertices);
    let results = run_trials(cfg.seed, graphs.len(), |i, rng| moment_trial(&graphs[i], cfg, rng));
    let mut report = SuiteReport::new("moments", cfg.seed);
    let mut worst = MomentTrial::default();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Err(e) => report.push(Outcome::Fail {
                residual: f64::MAX,
                artifact: json!({ "trial": i, "graph": graphs[i], "error": e.to_string() }),
            }),
            Ok(t) => {
                worst.words += t.words;
                worst.moment_residual = worst.moment_residual.max(t.moment_residual);
                worst.commutation_residual = worst.commutation_residual.max(t.commutation_residual);
                worst.homomorphism_residual = worst.homomorphism_residual.max(t.homomorphism_residual);
                worst.adjoint_residual = worst.adjoint_residual.max(t.adjoint_residual);
                let residual = t
                    .moment_residual
                    .max(t.commutation_residual)
                    .max(t.homomorphism_residual)
                    .max(t.adjoint_residual);
                report.push(if residual <= cfg.tol {
                    Outcome::Pass { residual }
                } else {
                    Outcome::Fail { residual, artifact: json!({ "trial": i, "graph": graphs[i], "diagnostics": t }) }
                });
            }
        }
    }
    report.metric("words", worst.words as f64);
    report.metric("moment_max_residual", worst.moment_residual);
    report.metric("commutation_max_residual", worst.commutation_residual);
    report.metric("homomorphism_max_residual", worst.homomorphism_residual);
    report.metric("adjoint_max_residual", worst.adjoint_residual);
    report
}

/// Random reduced words with centered letters have vanishing vacuum moment.
pub fn run_independence_suite(cfg: &FockConfig, trials: usize) -> SuiteReport {
    let results = run_trials(cfg.seed, trials, |_, rng| -> Result<(IndependenceVerdict, Vec<Vertex>), FockError> {
        let n = rng.gen_range(1..=cfg.max_vertices.max(1));
        let mut g = SimplicialGraph::edgeless(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(i, j)?;
                }
            }
        }
        let cutoff = cfg.max_word_len.max(1);
        let model = random_model(&g, &FockConfig { max_d: cfg.max_d.max(2), ..cfg.clone() }, cutoff, rng)?;
        let usable: Vec<Vertex> = (0..n).filter(|&v| model.gns[v].space.dim > 1).collect();
        let len = rng.gen_range(1..=cutoff);
        let word = if usable.is_empty() {
            Vec::new()
        } else {
            crate::verify::random_reduced_word(&g, &usable, len, rng)
        };
        let letters = word
            .iter()
            .map(|&v| {
                let a = model.product.algebras[v].random_centered(rng);
                Ok((v, model.gns[v].pi(&a)?))
            })
            .collect::<Result<Vec<_>, FockError>>()?;
        let verdict = check_independence(&model.fock, &letters, DEFAULT_DIM_CAP, cfg.tol)?;
        Ok((if word.is_empty() { IndependenceVerdict { value: ZERO, pass: true } } else { verdict }, word))
    });
    let mut report = SuiteReport::new("independence", cfg.seed);
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: json!({ "trial": i, "error": e.to_string() }) },
            Ok((v, _)) if v.pass => Outcome::Pass { residual: v.value.norm() },
            Ok((v, w)) => Outcome::Fail { residual: v.value.norm(), artifact: json!({ "trial": i, "word": w, "value": v.value }) },
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn gns_dimensions() {
        assert_eq!(gns(&VertexAlgebra::matrix_tracial(2)).unwrap().space.dim, 4);
        assert_eq!(gns(&VertexAlgebra::matrix_tracial(1)).unwrap().space.dim, 1);
        let pure = CMatrix::diag_real(&[1.0, 0.0]);
        assert_eq!(gns(&VertexAlgebra::matrix(pure).unwrap()).unwrap().space.dim, 2);
    }

    #[test]
    fn gns_reproduces_state() {
        let mut rng = seeded(1);
        let alg = VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap();
        let g = gns(&alg).unwrap();
        for _ in 0..5 {
            let a = alg.random_element(&mut rng);
            let p = g.pi(&a).unwrap();
            assert!((p[(0, 0)] - alg.state(&a)).norm() < 1e-10);
        }
        let a = alg.random_element(&mut rng);
        let b = alg.random_element(&mut rng);
        let lhs = g.pi(&alg.mul(&a, &b).unwrap()).unwrap();
        assert!(lhs.dist(&(&g.pi(&a).unwrap() * &g.pi(&b).unwrap())) < 1e-10);
    }

    #[test]
    fn dimension_formula() {
        let g = SimplicialGraph::path(3).unwrap();
        let spaces = vec![VertexSpace { dim: 3 }; 3];
        let f = TruncatedFock::new(&g, spaces, 3, DEFAULT_DIM_CAP).unwrap();
        let expected: usize = minimal_words(&g, 3).iter().map(|w| 2usize.pow(w.len() as u32)).sum();
        assert_eq!(f.dim(), expected);
    }

    #[test]
    fn budget_is_enforced() {
        let g = SimplicialGraph::edgeless(3).unwrap();
        let e = TruncatedFock::new(&g, vec![VertexSpace { dim: 5 }; 3], 4, 100).unwrap_err();
        assert!(matches!(e, FockError::BudgetExceeded { .. }));
    }

    #[test]
    fn single_vertex_lambda_is_x() {
        let mut rng = seeded(2);
        let alg = VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap();
        let p = GraphProductAlgebra::new(SimplicialGraph::edgeless(1).unwrap(), vec![alg.clone()]).unwrap();
        let m = FockModel::new(p, 2, DEFAULT_DIM_CAP).unwrap();
        let a = alg.random_element(&mut rng);
        let l = m.lambda(0, &a).unwrap();
        assert!(!l.partial);
        assert!(l.matrix.dist(&m.gns[0].pi(&a).unwrap()) < 1e-12);
    }

    #[test]
    fn k2_letters_commute_on_vacuum() {
        let mut rng = seeded(3);
        let algs = vec![VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap(); 2];
        let p = GraphProductAlgebra::new(SimplicialGraph::complete(2).unwrap(), algs).unwrap();
        let m = FockModel::new(p, 3, DEFAULT_DIM_CAP).unwrap();
        let x = m.gns[0].pi(&m.product.algebras[0].random_element(&mut rng)).unwrap();
        let y = m.gns[1].pi(&m.product.algebras[1].random_element(&mut rng)).unwrap();
        let om = m.fock.vacuum();
        let xy = m.fock.apply_lambda(0, &x, &m.fock.apply_lambda(1, &y, &om).unwrap().0).unwrap().0;
        let yx = m.fock.apply_lambda(1, &y, &m.fock.apply_lambda(0, &x, &om).unwrap().0).unwrap().0;
        let d: f64 = xy.iter().zip(&yx).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-12);
    }

    #[test]
    fn overflow_is_flagged() {
        let g = SimplicialGraph::edgeless(2).unwrap();
        let f = TruncatedFock::new(&g, vec![VertexSpace { dim: 2 }; 2], 1, DEFAULT_DIM_CAP).unwrap();
        let x = CMatrix::from_fn(2, 2, |_, _| ONE);
        assert!(f.lambda(0, &x).unwrap().partial);
    }

    #[test]
    fn free_alternating_word_is_independent() {
        let mut rng = seeded(4);
        let algs = vec![VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap(); 2];
        let p = GraphProductAlgebra::new(SimplicialGraph::edgeless(2).unwrap(), algs).unwrap();
        let m = FockModel::new(p, 3, DEFAULT_DIM_CAP).unwrap();
        let letters: Vec<(Vertex, CMatrix)> = [0, 1, 0]
            .iter()
            .map(|&v| (v, m.gns[v].pi(&m.product.algebras[v].random_centered(&mut rng)).unwrap()))
            .collect();
        assert!(check_independence(&m.fock, &letters, DEFAULT_DIM_CAP, 1e-10).unwrap().pass);
    }

    #[test]
    fn uncentered_letter_is_rejected() {
        let g = SimplicialGraph::edgeless(1).unwrap();
        let f = TruncatedFock::new(&g, vec![VertexSpace { dim: 2 }], 2, DEFAULT_DIM_CAP).unwrap();
        let e = check_independence(&f, &[(0, CMatrix::identity(2))], DEFAULT_DIM_CAP, 1e-10).unwrap_err();
        assert!(matches!(e, FockError::NotCentered { .. }));
    }

    #[test]
    fn mixed_moment_matches_state() {
        let mut rng = seeded(5);
        let alg = VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap();
        let p = GraphProductAlgebra::new(SimplicialGraph::path(3).unwrap(), vec![alg.clone(); 3]).unwrap();
        let m = FockModel::new(p, 3, DEFAULT_DIM_CAP).unwrap();
        let a = alg.random_element(&mut rng);
        let letters = vec![(1, alg.adjoint(&a)), (1, a.clone())];
        let phi = alg.state(&alg.mul(&alg.adjoint(&a), &a).unwrap());
        assert!((m.moment(&letters).unwrap() - phi).norm() < 1e-10);
        assert!((m.formal_moment(&letters).unwrap() - phi).norm() < 1e-10);
    }
}
