//! Unitary dilations of contractions, the Sz.-Nagy vertex maps on banded
//! Laurent polynomials, and finite checks of the dilation theorems.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::fock::{FockError, TruncatedFock, VertexSpace};
use crate::graphwords::{self, SimplicialGraph, Vertex, WordError};
use crate::mathcore::{self, CMatrix, MathError, C64};
use crate::report::{run_trials, violation, Outcome, SuiteReport};
use crate::rng::TrialRng;
use crate::staralg::{AElem, StarError, ThetaSpec, ThetaSpecDoc, VertexAlgebra, VertexMap, SPEC_SCHEMA_VERSION};
use crate::verify::{self, op_closure, GramSummary, OpWord, Tolerances, VerifyError, WordFamily};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DilateError {
    #[error("not a contraction (norm {norm:.6})")]
    NotContraction { norm: f64 },
    #[error("degree {degree} exceeds the band {band}")]
    BandExceeded { degree: i64, band: i64 },
    #[error("vertices {0} and {1} do not doubly commute (residual {2:.3e})")]
    NotDoublyCommuting(Vertex, Vertex, f64),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Math(#[from] MathError),
}

const CONTRACTION_SLACK: f64 = 1e-12;
/// Eigenvalues of `I − T*T` below this are rounding noise of isometric directions.
const DEFECT_FLOOR: f64 = 1e-14;

/// A square matrix of operator norm at most one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CMatrix", into = "CMatrix")]
pub struct Contraction(CMatrix);

impl TryFrom<CMatrix> for Contraction {
    type Error = DilateError;

    fn try_from(m: CMatrix) -> Result<Self, DilateError> {
        Self::new(m)
    }
}

impl From<Contraction> for CMatrix {
    fn from(c: Contraction) -> Self {
        c.0
    }
}

impl Contraction {
    pub fn new(m: CMatrix) -> Result<Self, DilateError> {
        if !m.is_square() {
            return Err(DilateError::Invalid(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let norm = mathcore::op_norm(&m);
        if norm > 1.0 + CONTRACTION_SLACK {
            return Err(DilateError::NotContraction { norm });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `T^m` for `m ≥ 0`, `(T*)^{-m}` otherwise.
    pub fn power(&self, m: i64) -> CMatrix {
        let base = if m >= 0 { self.0.clone() } else { self.0.adjoint() };
        (0..m.unsigned_abs()).fold(CMatrix::identity(self.dim()), |acc, _| &acc * &base)
    }

    /// Random contraction with norm uniform in `[lo, hi]`.
    pub fn random<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let g = mathcore::random_gaussian(n, n, rng);
        let norm = mathcore::op_norm(&g).max(1e-300);
        let target = rng.gen_range(lo..=hi);
        Self(g.scale_real(target / norm))
    }
}

fn defect(t: &CMatrix) -> Result<CMatrix, DilateError> {
    let n = t.rows();
    let m = &CMatrix::identity(n) - &(&t.adjoint() * t);
    let eig = mathcore::herm_eig(&m.hermitian_part())?;
    if eig.min() < -2.0 * CONTRACTION_SLACK {
        return Err(DilateError::NotContraction { norm: (1.0 - eig.min()).sqrt() });
    }
    Ok(eig.apply_fn(|l| if l < DEFECT_FLOOR { 0.0 } else { l.sqrt() }))
}

/// `[[T, D_{T*}], [D_T, -T*]]`.
pub fn halmos(t: &Contraction) -> Result<CMatrix, DilateError> {
    let n = t.dim();
    let tm = t.matrix();
    let mut u = CMatrix::zeros(2 * n, 2 * n);
    u.set_block(0, 0, tm);
    u.set_block(0, n, &defect(&tm.adjoint())?);
    u.set_block(n, 0, &defect(tm)?);
    u.set_block(n, n, &tm.adjoint().scale_real(-1.0));
    Ok(u)
}

/// Unitary on `(N+1)` copies of `H` whose compressions reproduce `T^k` for
/// `0 ≤ k ≤ N`; `H` is the first block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NDilation {
    pub u: CMatrix,
    pub dim: usize,
    pub degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilationResiduals {
    pub unitarity: f64,
    pub compression: f64,
}

impl NDilation {
    /// `‖U*U − I‖`, `‖UU* − I‖` and `max_k ‖P U^k|_H − T^k‖`.
    pub fn residuals(&self, t: &Contraction) -> DilationResiduals {
        let id = CMatrix::identity(self.u.rows());
        let unitarity = (&self.u.adjoint() * &self.u).dist(&id).max((&self.u * &self.u.adjoint()).dist(&id));
        let n = self.dim;
        let mut power = id.clone();
        let mut compression = 0.0f64;
        for k in 0..=self.degree {
            compression = compression.max(power.block(0, 0, n, n).dist(&t.power(k as i64)));
            power = &power * &self.u;
        }
        DilationResiduals { unitarity, compression }
    }
}

/// Egerváry's block companion dilation of degree `N ≥ 1`.
pub fn egervary(t: &Contraction, degree: usize) -> Result<NDilation, DilateError> {
    if degree == 0 {
        return Err(DilateError::Invalid("degree must be at least 1".into()));
    }
    let n = t.dim();
    let tm = t.matrix();
    let blocks = degree + 1;
    let mut u = CMatrix::zeros(blocks * n, blocks * n);
    u.set_block(0, 0, tm);
    u.set_block(n, 0, &defect(tm)?);
    u.set_block(0, degree * n, &defect(&tm.adjoint())?);
    u.set_block(n, degree * n, &tm.adjoint().scale_real(-1.0));
    for k in 1..degree {
        u.set_block((k + 1) * n, k * n, &CMatrix::identity(n));
    }
    Ok(NDilation { u, dim: n, degree })
}

/// `θ(x^m) = T^m`, `θ(x^{-m}) = (T*)^m` on Laurent polynomials of degree
/// at most `band`.
pub fn szn_theta(t: &Contraction, band: i64) -> Result<(VertexAlgebra, VertexMap), DilateError> {
    let alg = VertexAlgebra::laurent(band)?;
    let images = (-band..=band).map(|m| t.power(m)).collect();
    Ok((alg, VertexMap::Images { images }))
}

/// The basis element `x^m` of a Laurent algebra.
pub fn monomial(alg: &VertexAlgebra, m: i64) -> Result<AElem, DilateError> {
    let band = (alg.dim() as i64 - 1) / 2;
    if m.abs() > band {
        return Err(DilateError::BandExceeded { degree: m, band });
    }
    Ok(alg.basis((m + band) as usize))
}

/// Largest `‖[T_v, T_w]‖`, `‖[T_v*, T_w]‖` over the edges must vanish.
pub fn check_double_commutation(graph: &SimplicialGraph, ts: &[Contraction], tol: f64) -> Result<f64, DilateError> {
    let mut worst = 0.0f64;
    for (v, w) in graph.edges() {
        let (a, b) = (ts[v].matrix(), ts[w].matrix());
        let r = a.commutator(b).max_abs().max(a.adjoint().commutator(b).max_abs());
        if r > tol {
            return Err(DilateError::NotDoublyCommuting(v, w, r));
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `Θ = ⋆θ_v` over banded Laurent algebras, all maps into the same `B(H)`.
/// Gram entries multiply pairs of letters, so families should keep exponents
/// within half the band.
pub fn dilation_spec(graph: &SimplicialGraph, ts: &[Contraction], band: i64) -> Result<ThetaSpec, DilateError> {
    let n = graph.n_vertices();
    if ts.len() != n {
        return Err(DilateError::Invalid(format!("{} contractions for {n} vertices", ts.len())));
    }
    let dim = ts.first().map_or(1, Contraction::dim);
    if ts.iter().any(|t| t.dim() != dim) {
        return Err(DilateError::Invalid("contractions must act on the same space".into()));
    }
    check_double_commutation(graph, ts, 1e-10)?;
    let (algebras, maps) = ts.iter().map(|t| szn_theta(t, band)).collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
    let doc = ThetaSpecDoc {
        schema_version: SPEC_SCHEMA_VERSION,
        graph: graph.clone(),
        algebras,
        coloring: vec![0; n],
        block_dims: vec![dim],
        maps,
    };
    Ok(ThetaSpec::new(doc)?)
}

/// A reduced word in the graph product of copies of `Z`: `(vertex, exponent)`
/// letters with nonzero exponents, in normal form.
pub fn monomial_normal_form(g: &SimplicialGraph, letters: &[(Vertex, i64)]) -> Vec<(Vertex, i64)> {
    let mut out: Vec<(Vertex, i64)> = Vec::new();
    for &(v, m) in letters {
        if m == 0 {
            continue;
        }
        let mut hit = None;
        for j in (0..out.len()).rev() {
            if out[j].0 == v {
                hit = Some(j);
                break;
            }
            if !g.adjacent(out[j].0, v) {
                break;
            }
        }
        match hit {
            Some(j) => {
                out[j].1 += m;
                if out[j].1 == 0 {
                    out.remove(j);
                }
            }
            None => out.push((v, m)),
        }
    }
    let word: Vec<Vertex> = out.iter().map(|l| l.0).collect();
    graphwords::normal_form_permutation(g, &word).into_iter().map(|p| out[p]).collect()
}

/// Complete family generated by monomial words; the letters `x_v` for the
/// given vertices are always included.
pub fn monomial_family(
    spec: &ThetaSpec,
    seeds: &[Vec<(Vertex, i64)>],
    generators: &[Vertex],
    cap: usize,
) -> Result<WordFamily, DilateError> {
    let p = spec.product();
    let g = &p.graph;
    let mut ids: BTreeMap<(Vertex, i64), usize> = BTreeMap::new();
    let mut letters: Vec<(Vertex, AElem)> = Vec::new();
    let mut id_of = |v: Vertex, m: i64| -> Result<usize, DilateError> {
        if let Some(&i) = ids.get(&(v, m)) {
            return Ok(i);
        }
        letters.push((v, monomial(&p.algebras[v], m)?));
        ids.insert((v, m), letters.len() - 1);
        Ok(letters.len() - 1)
    };
    let mut ops = Vec::new();
    for &v in generators {
        ops.push(OpWord { word: vec![v], ids: vec![id_of(v, 1)?] });
    }
    for s in seeds {
        let nf = monomial_normal_form(g, s);
        if nf.is_empty() {
            continue;
        }
        let ids = nf.iter().map(|&(v, m)| id_of(v, m)).collect::<Result<Vec<_>, _>>()?;
        ops.push(OpWord { word: nf.iter().map(|l| l.0).collect(), ids });
    }
    let words = op_closure(g, &ops, cap)
        .ok_or_else(|| DilateError::HypothesisNotMet(format!("family exceeds {cap} words")))?;
    Ok(WordFamily::from_op_words(p, &letters, &words)?)
}

/// `Σ c_i X_{w_i}` in non-commuting indeterminates indexed by vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<(C64, Vec<Vertex>)>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.terms.iter().flat_map(|t| t.1.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Evaluation at matrices of equal size.
    pub fn eval(&self, ops: &[CMatrix], dim: usize) -> CMatrix {
        let mut out = CMatrix::zeros(dim, dim);
        for (c, w) in &self.terms {
            let m = w.iter().fold(CMatrix::identity(dim), |acc, &v| &acc * &ops[v]);
            out = &out + &m.scale(*c);
        }
        out
    }

    /// Random polynomial with `terms` monomials of degree at most `degree`.
    pub fn random<R: Rng + ?Sized>(vertices: &[Vertex], terms: usize, degree: usize, rng: &mut R) -> Self {
        let terms = (0..terms)
            .map(|_| {
                let len = rng.gen_range(0..=degree);
                let w = (0..len).map(|_| vertices[rng.gen_range(0..vertices.len())]).collect();
                (C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), w)
            })
            .collect();
        Self { terms }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VnReport {
    pub norm_p_t: f64,
    pub norm_p_l: f64,
    /// `‖V₁* p(L) V₁ − p(T)‖`.
    pub compression_residual: f64,
    pub well_defined_residual: f64,
    pub gram: GramSummary,
    pub family_size: usize,
    pub pass: bool,
}

/// `‖p(T)‖ = ‖V₁* p(L) V₁‖ ≤ ‖p(L)‖` on the concatenation space of the
/// monomials of `p`.
pub fn vn_surrogate(
    graph: &SimplicialGraph,
    ts: &[Contraction],
    poly: &Polynomial,
    cap: usize,
    tol: &Tolerances,
) -> Result<VnReport, DilateError> {
    let n = graph.n_vertices();
    if let Some(&v) = poly.vertices().iter().find(|&&v| v >= n) {
        return Err(DilateError::Invalid(format!("polynomial uses vertex {v} outside the graph")));
    }
    let mut seeds = Vec::new();
    let mut max_exp = 1i64;
    for (_, w) in &poly.terms {
        for start in 0..w.len() {
            let s: Vec<(Vertex, i64)> = w[start..].iter().map(|&v| (v, 1)).collect();
            let nf = monomial_normal_form(graph, &s);
            max_exp = max_exp.max(nf.iter().map(|l| l.1).max().unwrap_or(0));
            seeds.push(nf);
        }
    }
    let spec = dilation_spec(graph, ts, 2 * max_exp)?;
    let vs = poly.vertices();
    let fam = monomial_family(&spec, &seeds, &vs, cap)?;
    let report = verify::gram(&spec, &fam, tol)?;
    if !report.verdict.pass {
        return Err(DilateError::HypothesisNotMet(format!("Gram not PSD ({:.3e})", report.verdict.min_eig)));
    }
    let cs = verify::build_concat_space(&spec, &fam, &report, tol)?;
    let p = spec.product();
    let gen_of = |v: Vertex| -> Result<usize, DilateError> {
        let e = p.letter(v, &monomial(&p.algebras[v], 1)?)?;
        fam.find(&e).ok_or_else(|| DilateError::HypothesisNotMet(format!("x_{v} missing from the family")))
    };
    let gens: BTreeMap<Vertex, usize> = vs.iter().map(|&v| Ok((v, gen_of(v)?))).collect::<Result<_, DilateError>>()?;
    let r = cs.rank;
    let mut ops = vec![CMatrix::zeros(r, r); n];
    for (&v, &g) in &gens {
        ops[v] = cs.shift(g).ok_or(VerifyError::MissingGenerator(g))?.l.clone();
    }
    let p_l = poly.eval(&ops, r);
    let d = spec.target_dim();
    let t_ops: Vec<CMatrix> = ts.iter().map(|t| t.matrix().clone()).collect();
    let p_t = poly.eval(&t_ops, d);
    let compressed = &(&cs.v1.adjoint() * &p_l) * &cs.v1;
    let compression_residual = compressed.dist(&p_t);
    let norm_p_t = mathcore::op_norm(&p_t);
    let norm_p_l = mathcore::op_norm(&p_l);
    let scale = 1.0 + poly.terms.iter().map(|t| t.0.norm()).sum::<f64>();
    let well = cs.max_well_defined_residual();
    Ok(VnReport {
        norm_p_t,
        norm_p_l,
        compression_residual,
        well_defined_residual: well,
        gram: report.summary(),
        family_size: fam.len(),
        pass: norm_p_t <= norm_p_l * (1.0 + tol.lx_bound) + tol.lx_bound
            && compression_residual <= tol.compression * scale * (1.0 + cs.gram_norm),
    })
}

/// Contractions doubly commuting across edges: the target is a tensor
/// product over the greedy coloring and each vertex acts on its color's leg.
pub fn random_doubly_commuting<R: Rng + ?Sized>(
    graph: &SimplicialGraph,
    leg_dim: usize,
    max_dim: usize,
    rng: &mut R,
) -> Vec<Contraction> {
    let colors = graph.greedy_coloring();
    let n_colors = colors.iter().max().map_or(0, |c| c + 1);
    let mut legs = Vec::with_capacity(n_colors);
    let mut total = 1;
    for _ in 0..n_colors {
        let d = if total * leg_dim > max_dim { 1 } else { leg_dim };
        total *= d;
        legs.push(d);
    }
    colors
        .iter()
        .map(|&c| {
            let local = Contraction::random(legs[c], 0.2, 0.95, rng);
            Contraction(crate::groups::embed_leg(local.matrix(), &legs, c))
        })
        .collect()
}

/// Random complete monomial family: a few random reduced monomial words with
/// exponents in `±1..=band`, closed under truncation.
pub fn random_monomial_family<R: Rng + ?Sized>(
    spec: &ThetaSpec,
    band: i64,
    max_len: usize,
    cap: usize,
    rng: &mut R,
) -> Result<WordFamily, DilateError> {
    let g = spec.graph();
    let n = g.n_vertices();
    for _ in 0..50 {
        let seeds: Vec<Vec<(Vertex, i64)>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let raw: Vec<(Vertex, i64)> = (0..rng.gen_range(1..=max_len))
                    .map(|_| {
                        let m = rng.gen_range(1..=band);
                        (rng.gen_range(0..n), if rng.gen_bool(0.5) { m } else { -m })
                    })
                    .collect();
                let mut w = monomial_normal_form(g, &raw);
                w.retain(|l| l.1.abs() <= band);
                monomial_normal_form(g, &w)
            })
            .collect();
        match monomial_family(spec, &seeds, &[], cap) {
            Ok(f) => return Ok(f),
            Err(DilateError::HypothesisNotMet(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(DilateError::HypothesisNotMet("no family within the cap".into()))
}

/// Graph-independent contractions `T_v = λ_v(t_v)` on a truncated graph
/// product space, with `φ` the vacuum state.
#[derive(Clone, Debug)]
pub struct IndependentContractions {
    pub fock: TruncatedFock,
    pub local: Vec<Contraction>,
    pub ts: Vec<CMatrix>,
}

impl IndependentContractions {
    pub fn random<R: Rng + ?Sized>(graph: &SimplicialGraph, d: usize, cutoff: usize, rng: &mut R) -> Result<Self, DilateError> {
        let n = graph.n_vertices();
        let fock = TruncatedFock::new(graph, vec![VertexSpace { dim: d }; n], cutoff, crate::fock::DEFAULT_DIM_CAP)?;
        let local: Vec<Contraction> = (0..n).map(|_| Contraction::random(d, 0.2, 0.95, rng)).collect();
        let ts = local
            .iter()
            .enumerate()
            .map(|(v, t)| Ok(fock.lambda(v, t.matrix())?.matrix))
            .collect::<Result<Vec<_>, DilateError>>()?;
        Ok(Self { fock, local, ts })
    }
}

/// A letter `Σ_m c_m x^m` at one vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentLetter {
    pub vertex: Vertex,
    pub coeffs: Vec<(i64, C64)>,
}

impl LaurentLetter {
    fn apply(&self, t: &Contraction) -> CMatrix {
        let mut out = CMatrix::zeros(t.dim(), t.dim());
        for (m, c) in &self.coeffs {
            out = &out + &t.power(*m).scale(*c);
        }
        out
    }

    fn max_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.0.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilationIndependenceVerdict {
    /// `φ(θ_{v1}(b_1)⋯θ_{vm}(b_m))`.
    pub moment: C64,
    /// Largest `‖P b_j(U_j)|_H − θ(b_j)‖` over the letters, with `U_j` an
    /// Egerváry dilation of the vertex contraction.
    pub letter_compression: f64,
    pub pass: bool,
}

/// Compressed moment of a reduced word of centered letters in the dilation.
pub fn check_gp_independence_of_dilation(
    sys: &IndependentContractions,
    letters: &[LaurentLetter],
    tol: f64,
) -> Result<DilationIndependenceVerdict, DilateError> {
    let g = sys.fock.graph();
    let word: Vec<Vertex> = letters.iter().map(|l| l.vertex).collect();
    if !graphwords::is_reduced(g, &word)? {
        return Err(DilateError::HypothesisNotMet("word is not reduced".into()));
    }
    if word.len() > sys.fock.cutoff() {
        return Err(DilateError::Fock(FockError::BeyondCutoff { len: word.len(), cutoff: sys.fock.cutoff() }));
    }
    let mut letter_compression = 0.0f64;
    let mut local_ops = Vec::with_capacity(letters.len());
    for l in letters {
        let t = &sys.local[l.vertex];
        let s = l.apply(t);
        if s[(0, 0)].norm() > tol * (1.0 + mathcore::op_norm(&s)) {
            return Err(DilateError::HypothesisNotMet(format!("letter at vertex {} is not centered", l.vertex)));
        }
        let dil = egervary(t, l.max_degree().max(1))?;
        let u = Contraction(dil.u.clone());
        let n = t.dim();
        let mut compressed = CMatrix::zeros(n, n);
        for (m, c) in &l.coeffs {
            compressed = &compressed + &u.power(*m).block(0, 0, n, n).scale(*c);
        }
        letter_compression = letter_compression.max(compressed.dist(&s));
        local_ops.push((l.vertex, s));
    }
    let mut v = sys.fock.vacuum();
    for (w, s) in local_ops.iter().rev() {
        v = sys.fock.apply_lambda(*w, s, &v)?.0;
    }
    let moment = v[0];
    Ok(DilationIndependenceVerdict {
        moment,
        letter_compression,
        pass: moment.norm() <= tol && letter_compression <= tol,
    })
}

/// Random centered Laurent letter: random coefficients on `-deg..=deg`, then
/// the vacuum expectation of its image removed from the constant term.
pub fn random_centered_letter<R: Rng + ?Sized>(
    sys: &IndependentContractions,
    v: Vertex,
    deg: i64,
    rng: &mut R,
) -> LaurentLetter {
    let mut coeffs: Vec<(i64, C64)> = (-deg..=deg)
        .filter(|&m| m != 0)
        .map(|m| (m, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    let l = LaurentLetter { vertex: v, coeffs: coeffs.clone() };
    let phi = l.apply(&sys.local[v])[(0, 0)];
    coeffs.push((0, -phi));
    LaurentLetter { vertex: v, coeffs }
}

/// Parameters of the dilation suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilateConfig {
    pub seed: u64,
    pub trials: usize,
    /// Fixed graph for the graph-based suites; random otherwise.
    pub graph: Option<SimplicialGraph>,
    pub max_dim: usize,
    pub max_degree: usize,
    pub max_vertices: usize,
    pub band: i64,
    pub max_family: usize,
    pub tol: f64,
}

impl Default for DilateConfig {
    fn default() -> Self {
        Self { seed: 0, trials: 500, graph: None, max_dim: 4, max_degree: 6, max_vertices: 4, band: 3, max_family: 25, tol: 1e-9 }
    }
}

fn trial_graph(cfg: &DilateConfig, rng: &mut TrialRng, max_n: usize) -> SimplicialGraph {
    match &cfg.graph {
        Some(g) => g.clone(),
        None => crate::verify::suite::random_graph(rng, 1, max_n),
    }
}

/// Halmos and Egerváry dilations of random contractions.
pub fn run_egervary_suite(cfg: &DilateConfig) -> SuiteReport {
    let results = run_trials(cfg.seed, cfg.trials, |_, rng| -> Result<(Contraction, usize, DilationResiduals, DilationResiduals), DilateError> {
        let n = rng.gen_range(1..=cfg.max_dim.max(1));
        let t = if rng.gen_bool(0.1) {
            Contraction::random(n, 1.0, 1.0, rng)
        } else {
            Contraction::random(n, 0.0, 1.0, rng)
        };
        let degree = rng.gen_range(1..=cfg.max_degree.max(1));
        let e = egervary(&t, degree)?.residuals(&t);
        let h = NDilation { u: halmos(&t)?, dim: n, degree: 1 }.residuals(&t);
        Ok((t, degree, e, h))
    });
    let mut report = SuiteReport::new("egervary", cfg.seed);
    let (mut unit, mut comp) = (0.0f64, 0.0f64);
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: json!({ "trial": i, "error": e.to_string() }) },
            Ok((t, degree, e, h)) => {
                let res = e.unitarity.max(e.compression).max(h.unitarity).max(h.compression);
                unit = unit.max(e.unitarity).max(h.unitarity);
                comp = comp.max(e.compression).max(h.compression);
                if res <= cfg.tol {
                    Outcome::Pass { residual: res }
                } else {
                    Outcome::Fail { residual: res, artifact: json!({ "trial": i, "t": t, "degree": degree, "egervary": e, "halmos": h }) }
                }
            }
        });
    }
    report.metric("unitarity_max_residual", unit);
    report.metric("compression_max_residual", comp);
    report
}

/// Gram positivity of the Sz.-Nagy graph product over random monomial sets.
pub fn run_dilation_gram_suite(cfg: &DilateConfig) -> SuiteReport {
    let tol = Tolerances::default();
    let results = run_trials(cfg.seed, cfg.trials, |_, rng| -> Result<(GramSummary, serde_json::Value), DilateError> {
        let g = trial_graph(cfg, rng, cfg.max_vertices);
        let ts = random_doubly_commuting(&g, 2, 8, rng);
        let band = rng.gen_range(1..=cfg.band.max(1));
        let spec = dilation_spec(&g, &ts, 2 * band)?;
        let fam = random_monomial_family(&spec, band, 3, cfg.max_family, rng)?;
        let s = verify::gram(&spec, &fam, &tol)?.summary();
        Ok((s, json!({ "spec": spec, "family": fam })))
    });
    let mut report = SuiteReport::new("dilation_gram", cfg.seed);
    let mut max_family = 0usize;
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: json!({ "trial": i, "error": e.to_string() }) },
            Ok((s, a)) => {
                max_family = max_family.max(s.n_words);
                if s.pass {
                    Outcome::Pass { residual: violation(s.relative_slack) }
                } else {
                    Outcome::Fail { residual: violation(s.relative_slack), artifact: a }
                }
            }
        });
    }
    report.metric("max_family_size", max_family as f64);
    report
}

/// Von Neumann surrogate on random polynomials.
pub fn run_vn_suite(cfg: &DilateConfig) -> SuiteReport {
    let tol = Tolerances::default();
    let results = run_trials(cfg.seed, cfg.trials, |_, rng| -> Result<(VnReport, serde_json::Value), DilateError> {
        let g = trial_graph(cfg, rng, cfg.max_vertices.min(3));
        let ts = random_doubly_commuting(&g, 2, 4, rng);
        let verts: Vec<Vertex> = (0..g.n_vertices()).collect();
        let poly = Polynomial::random(&verts, rng.gen_range(1..=4), 3, rng);
        let r = vn_surrogate(&g, &ts, &poly, 60, &tol)?;
        Ok((r, json!({ "graph": g, "contractions": ts, "polynomial": poly })))
    });
    let mut report = SuiteReport::new("vn", cfg.seed);
    let (mut ratio, mut comp) = (0.0f64, 0.0f64);
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: json!({ "trial": i, "error": e.to_string() }) },
            Ok((v, mut a)) => {
                if v.norm_p_l > 0.0 {
                    ratio = ratio.max(v.norm_p_t / v.norm_p_l);
                }
                comp = comp.max(v.compression_residual);
                let excess = (v.norm_p_t - v.norm_p_l).max(0.0);
                if v.pass {
                    Outcome::Pass { residual: excess }
                } else {
                    a["report"] = json!(v);
                    Outcome::Fail { residual: excess.max(v.compression_residual), artifact: a }
                }
            }
        });
    }
    report.metric("max_norm_ratio", ratio);
    report.metric("compression_max_residual", comp);
    report
}

/// Compressed moments of reduced words in the dilation of graph-independent
/// contractions.
pub fn run_gp_independence_suite(cfg: &DilateConfig) -> SuiteReport {
    let results = run_trials(cfg.seed, cfg.trials, |_, rng| -> Result<(DilationIndependenceVerdict, serde_json::Value), DilateError> {
        let g = trial_graph(cfg, rng, cfg.max_vertices.min(3));
        let sys = IndependentContractions::random(&g, 2, 3, rng)?;
        let verts: Vec<Vertex> = (0..g.n_vertices()).collect();
        let word = crate::verify::random_reduced_word(&g, &verts, rng.gen_range(1..=3), rng);
        let letters: Vec<LaurentLetter> =
            word.iter().map(|&v| random_centered_letter(&sys, v, rng.gen_range(1..=cfg.band.max(1)), rng)).collect();
        let v = check_gp_independence_of_dilation(&sys, &letters, cfg.tol)?;
        Ok((v, json!({ "graph": g, "letters": letters, "local": sys.local })))
    });
    let mut report = SuiteReport::new("gp_independence", cfg.seed);
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: json!({ "trial": i, "error": e.to_string() }) },
            Ok((v, a)) => {
                let res = v.moment.norm().max(v.letter_compression);
                if v.pass {
                    Outcome::Pass { residual: res }
                } else {
                    Outcome::Fail { residual: res, artifact: a }
                }
            }
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathcore::ONE;
    use crate::rng::seeded;

    fn scalar(t: f64) -> Contraction {
        Contraction::new(CMatrix::scalar(1, C64::new(t, 0.0))).unwrap()
    }

    #[test]
    fn halmos_examples() {
        let u = halmos(&scalar(0.0)).unwrap();
        assert!(u.dist(&CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])) < 1e-12);
        let u = halmos(&scalar(1.0)).unwrap();
        assert!(u.dist(&CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])) < 1e-12);
        let t = scalar(0.5);
        let r = NDilation { u: halmos(&t).unwrap(), dim: 1, degree: 1 }.residuals(&t);
        assert!(r.unitarity < 1e-12 && r.compression < 1e-12);
    }

    #[test]
    fn egervary_scalar_powers() {
        let t = scalar(0.5);
        let d = egervary(&t, 4).unwrap();
        let u = Contraction(d.u.clone());
        for k in 0..=4 {
            assert!((u.power(k)[(0, 0)].re - 0.5f64.powi(k as i32)).abs() < 1e-12);
        }
    }

    #[test]
    fn egervary_degree_one_is_halmos() {
        let mut rng = seeded(1);
        let t = Contraction::random(2, 0.3, 0.9, &mut rng);
        assert!(egervary(&t, 1).unwrap().u.dist(&halmos(&t).unwrap()) < 1e-14);
    }

    #[test]
    fn rejects_non_contraction() {
        let e = Contraction::new(CMatrix::scalar(2, C64::new(1.5, 0.0))).unwrap_err();
        assert!(matches!(e, DilateError::NotContraction { .. }));
    }

    #[test]
    fn szn_theta_values() {
        let t = scalar(0.5);
        let (alg, map) = szn_theta(&t, 2).unwrap();
        let VertexMap::Images { images } = map else { panic!() };
        assert!((images[2][(0, 0)] - ONE).norm() < 1e-15);
        assert!((images[4][(0, 0)].re - 0.25).abs() < 1e-15);
        assert_eq!(alg.dim(), 5);
        let mut rng = seeded(2);
        let t = Contraction::random(2, 0.3, 0.9, &mut rng);
        let (_, map) = szn_theta(&t, 1).unwrap();
        let VertexMap::Images { images } = map else { panic!() };
        assert!(images[0].dist(&t.matrix().adjoint()) < 1e-15);
        assert!(matches!(monomial(&VertexAlgebra::laurent(1).unwrap(), 2), Err(DilateError::BandExceeded { .. })));
    }

    #[test]
    fn non_doubly_commuting_rejected() {
        let mut rng = seeded(3);
        let g = SimplicialGraph::complete(2).unwrap();
        let ts = vec![Contraction::random(2, 0.3, 0.9, &mut rng), Contraction::random(2, 0.3, 0.9, &mut rng)];
        assert!(matches!(dilation_spec(&g, &ts, 1), Err(DilateError::NotDoublyCommuting(..))));
    }

    #[test]
    fn monomial_normal_forms() {
        let k2 = SimplicialGraph::complete(2).unwrap();
        assert_eq!(monomial_normal_form(&k2, &[(0, 1), (1, 1), (0, 1)]), vec![(0, 2), (1, 1)]);
        let free = SimplicialGraph::edgeless(2).unwrap();
        assert_eq!(monomial_normal_form(&free, &[(0, 1), (1, 1), (0, 1)]), vec![(0, 1), (1, 1), (0, 1)]);
        assert_eq!(monomial_normal_form(&free, &[(0, 1), (0, -1)]), vec![]);
    }

    #[test]
    fn single_letter_vn() {
        let mut rng = seeded(4);
        let g = SimplicialGraph::edgeless(1).unwrap();
        let ts = vec![Contraction::random(2, 0.3, 0.9, &mut rng)];
        let p = Polynomial { terms: vec![(ONE, vec![0])] };
        let r = vn_surrogate(&g, &ts, &p, 30, &Tolerances::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.norm_p_t - mathcore::op_norm(ts[0].matrix())).abs() < 1e-12);
    }

    #[test]
    fn k2_product_vn() {
        let mut rng = seeded(5);
        let g = SimplicialGraph::complete(2).unwrap();
        let ts = random_doubly_commuting(&g, 2, 4, &mut rng);
        let p = Polynomial { terms: vec![(ONE, vec![0, 1])] };
        let r = vn_surrogate(&g, &ts, &p, 30, &Tolerances::default()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn centered_dilation_moment_vanishes() {
        let mut rng = seeded(6);
        let g = SimplicialGraph::path(3).unwrap();
        let sys = IndependentContractions::random(&g, 2, 3, &mut rng).unwrap();
        let letters: Vec<LaurentLetter> = [0, 2, 1].iter().map(|&v| random_centered_letter(&sys, v, 2, &mut rng)).collect();
        let v = check_gp_independence_of_dilation(&sys, &letters, 1e-9).unwrap();
        assert!(v.pass, "{v:?}");
    }
}
