use rand::Rng;
use serde::{Deserialize, Serialize};

use super::algebra::{AElem, AlgebraKind, VertexAlgebra};
use super::element::{GpElement, GraphProductAlgebra};
use super::StarError;
use crate::graphwords::SimplicialGraph;
use crate::mathcore::{self, CMatrix, C64, ZERO};

pub const SPEC_SCHEMA_VERSION: u32 = 1;

/// How a vertex map `θ_v: A_v -> M_k` is given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VertexMap {
    /// `θ(a) = W* (π(a) ⊗ I_m) W` with `π` the algebra's own representation.
    Stinespring { isometry: CMatrix, multiplicity: usize },
    /// Images of the algebra basis, in basis order.
    Images { images: Vec<CMatrix> },
}

/// Serialized form of a [`ThetaSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpecDoc {
    pub schema_version: u32,
    pub graph: SimplicialGraph,
    pub algebras: Vec<VertexAlgebra>,
    pub coloring: Vec<usize>,
    pub block_dims: Vec<usize>,
    pub maps: Vec<VertexMap>,
}

/// Unital completely positive vertex maps into a shared target
/// `B = ⊗_c M_{block_dims[c]}`, vertex `v` acting on the leg `coloring[v]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThetaSpecDoc", into = "ThetaSpecDoc")]
pub struct ThetaSpec {
    doc: ThetaSpecDoc,
    product: GraphProductAlgebra,
    local: Vec<Vec<CMatrix>>,
    global: Vec<Vec<CMatrix>>,
}

impl TryFrom<ThetaSpecDoc> for ThetaSpec {
    type Error = StarError;

    fn try_from(doc: ThetaSpecDoc) -> Result<Self, StarError> {
        Self::new(doc)
    }
}

impl From<ThetaSpec> for ThetaSpecDoc {
    fn from(s: ThetaSpec) -> Self {
        s.doc
    }
}

fn invalid(msg: impl Into<String>) -> StarError {
    StarError::SpecInvalid(msg.into())
}

/// Basis images of a vertex map in its own block.
pub fn local_images(alg: &VertexAlgebra, map: &VertexMap, k: usize) -> Result<Vec<CMatrix>, StarError> {
    let images = match map {
        VertexMap::Images { images } => images.clone(),
        VertexMap::Stinespring { isometry, multiplicity } => {
            let probe = alg
                .represent(&alg.unit())
                .ok_or_else(|| invalid("Stinespring maps need a finite-dimensional representation"))?;
            let big = probe.rows() * multiplicity;
            if isometry.rows() != big || isometry.cols() != k {
                return Err(invalid(format!(
                    "isometry must be {big}x{k}, got {}x{}",
                    isometry.rows(),
                    isometry.cols()
                )));
            }
            let wa = isometry.adjoint();
            let id = CMatrix::identity(*multiplicity);
            (0..alg.dim())
                .map(|i| {
                    let rep = alg.represent(&alg.basis(i)).expect("checked above").kron(&id);
                    &(&wa * &rep) * isometry
                })
                .collect()
        }
    };
    if images.len() != alg.dim() || images.iter().any(|m| m.rows() != k || m.cols() != k) {
        return Err(invalid(format!("need {} images of shape {k}x{k}", alg.dim())));
    }
    Ok(images)
}

/// Image of an algebra element under basis images.
pub fn apply_images(images: &[CMatrix], a: &AElem) -> CMatrix {
    let n = images[0].rows();
    let mut data = vec![ZERO; n * n];
    for (m, z) in images.iter().zip(&a.0) {
        if *z == ZERO {
            continue;
        }
        for (d, x) in data.iter_mut().zip(m.data()) {
            *d += z * x;
        }
    }
    CMatrix::new(n, n, data).expect("square")
}

/// Complete positivity witness for a map given by basis images: Choi matrix
/// for `M_d`, `[θ(u_{g⁻¹h})]` for group algebras, and the Toeplitz block
/// matrix `[θ(x^{j-i})]` for the Laurent band.
pub fn cp_witness(alg: &VertexAlgebra, images: &[CMatrix]) -> CMatrix {
    let k = images[0].rows();
    match alg.kind() {
        AlgebraKind::Matrix { d, .. } => {
            let mut out = CMatrix::zeros(d * k, d * k);
            for i in 0..*d {
                for j in 0..*d {
                    out.set_block(i * k, j * k, &images[i * d + j]);
                }
            }
            out
        }
        AlgebraKind::Group { group } => {
            let n = group.order();
            let mut out = CMatrix::zeros(n * k, n * k);
            for g in 0..n {
                for h in 0..n {
                    out.set_block(g * k, h * k, &images[group.mul(group.inv(g), h)]);
                }
            }
            out
        }
        AlgebraKind::Laurent { band } => {
            let n = *band as usize + 1;
            let mut out = CMatrix::zeros(n * k, n * k);
            for i in 0..n {
                for j in 0..n {
                    let deg = j as i64 - i as i64;
                    out.set_block(i * k, j * k, &images[(deg + band) as usize]);
                }
            }
            out
        }
    }
}

/// Checks unitality and complete positivity of basis images.
pub fn check_ucp(alg: &VertexAlgebra, images: &[CMatrix], tol: f64) -> Result<(), StarError> {
    let k = images[0].rows();
    let unit = apply_images(images, &alg.unit());
    if unit.dist(&CMatrix::identity(k)) > 1e-10 {
        return Err(invalid(format!("map is not unital (defect {:.3e})", unit.dist(&CMatrix::identity(k)))));
    }
    let w = cp_witness(alg, images);
    if w.hermitian_defect() > 1e-9 * (1.0 + w.frobenius_norm()) {
        return Err(invalid("map does not preserve adjoints"));
    }
    let v = mathcore::is_psd(&w.hermitian_part(), tol)?;
    if !v.pass {
        return Err(invalid(format!("map is not completely positive (min eigenvalue {:.3e})", v.min_eig)));
    }
    Ok(())
}

impl ThetaSpec {
    pub fn new(doc: ThetaSpecDoc) -> Result<Self, StarError> {
        if doc.schema_version != SPEC_SCHEMA_VERSION {
            return Err(invalid(format!("unsupported schema version {}", doc.schema_version)));
        }
        let n = doc.graph.n_vertices();
        if doc.algebras.len() != n || doc.coloring.len() != n || doc.maps.len() != n {
            return Err(invalid("algebras, coloring and maps need one entry per vertex"));
        }
        if doc.coloring.iter().any(|&c| c >= doc.block_dims.len()) || doc.block_dims.contains(&0) {
            return Err(invalid("coloring refers to a missing or empty block"));
        }
        let total: usize = doc.block_dims.iter().product();
        if total > 4096 {
            return Err(invalid(format!("target dimension {total} too large")));
        }
        let mut local = Vec::with_capacity(n);
        for v in 0..n {
            let k = doc.block_dims[doc.coloring[v]];
            let imgs = local_images(&doc.algebras[v], &doc.maps[v], k)?;
            check_ucp(&doc.algebras[v], &imgs, 1e-9)
                .map_err(|e| invalid(format!("vertex {v}: {e}")))?;
            local.push(imgs);
        }
        let global: Vec<Vec<CMatrix>> = local
            .iter()
            .enumerate()
            .map(|(v, imgs)| {
                imgs.iter().map(|m| crate::groups::embed_leg(m, &doc.block_dims, doc.coloring[v])).collect()
            })
            .collect();
        for (i, j) in doc.graph.edges() {
            for a in &global[i] {
                for b in &global[j] {
                    let c = a.commutator(b).max_abs();
                    if c > 1e-10 * (1.0 + a.max_abs() * b.max_abs()) {
                        return Err(invalid(format!(
                            "ranges at adjacent vertices {i} and {j} do not commute ({c:.3e})"
                        )));
                    }
                }
            }
        }
        let product = GraphProductAlgebra::new(doc.graph.clone(), doc.algebras.clone())?;
        Ok(Self { doc, product, local, global })
    }

    pub fn doc(&self) -> &ThetaSpecDoc {
        &self.doc
    }

    pub fn product(&self) -> &GraphProductAlgebra {
        &self.product
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.doc.graph
    }

    pub fn target_dim(&self) -> usize {
        self.doc.block_dims.iter().product()
    }

    /// `θ_v(a)` inside `B`.
    pub fn theta_letter(&self, v: usize, a: &AElem) -> CMatrix {
        apply_images(&self.global[v], a)
    }

    /// `θ_v(a)` in the vertex's own block.
    pub fn theta_local(&self, v: usize, a: &AElem) -> CMatrix {
        apply_images(&self.local[v], a)
    }

    /// `Θ(e) = unit·I + Σ coeff · θ(a_1)⋯θ(a_n)`.
    pub fn eval(&self, e: &GpElement) -> Result<CMatrix, StarError> {
        self.product.check(e)?;
        let d = self.target_dim();
        let mut out = CMatrix::scalar(d, e.unit);
        for t in &e.terms {
            let mut acc: Option<CMatrix> = None;
            for (v, a) in t.word.iter().zip(&t.letters) {
                let m = self.theta_letter(*v, a);
                acc = Some(match acc {
                    None => m,
                    Some(p) => &p * &m,
                });
            }
            let m = acc.unwrap_or_else(|| CMatrix::identity(d));
            out = &out + &m.scale(t.coeff);
        }
        Ok(out)
    }
}

/// `Θ` evaluation as a free function.
pub fn theta_eval(spec: &ThetaSpec, e: &GpElement) -> Result<CMatrix, StarError> {
    spec.eval(e)
}

/// Parameters for [`random_theta`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaConfig {
    /// Matrix size `d_v` at each vertex (cycled if shorter than the graph).
    pub vertex_dims: Vec<usize>,
    /// Block size per color.
    pub block_dim: usize,
    /// Colors beyond this total target dimension get one-dimensional blocks.
    pub max_target_dim: usize,
    /// Minimum Stinespring multiplicity.
    pub multiplicity: usize,
}

impl Default for ThetaConfig {
    fn default() -> Self {
        Self { vertex_dims: vec![2], block_dim: 2, max_target_dim: 8, multiplicity: 2 }
    }
}

/// Random density matrix of full rank.
pub fn random_density<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = mathcore::random_gaussian(d, d, rng);
    let m = &g.gram() + &CMatrix::identity(d).scale_real(0.05);
    m.scale_real(1.0 / m.trace().re)
}

/// Random valid spec with matrix algebras `M_{d_v}`, random faithful states
/// and Stinespring maps placed by the greedy coloring.
pub fn random_theta<R: Rng + ?Sized>(
    graph: &SimplicialGraph,
    cfg: &ThetaConfig,
    rng: &mut R,
) -> Result<ThetaSpec, StarError> {
    if cfg.vertex_dims.is_empty() || cfg.vertex_dims.iter().any(|&d| d == 0 || d > 3) {
        return Err(invalid("vertex dimensions must lie in 1..=3"));
    }
    if cfg.block_dim == 0 || cfg.block_dim > 4 {
        return Err(invalid("block dimension must lie in 1..=4"));
    }
    let coloring = graph.greedy_coloring();
    let n_colors = coloring.iter().max().map_or(1, |c| c + 1);
    let mut block_dims = Vec::with_capacity(n_colors);
    let mut total = 1usize;
    for _ in 0..n_colors {
        let k = if total * cfg.block_dim <= cfg.max_target_dim.max(1) { cfg.block_dim } else { 1 };
        total *= k;
        block_dims.push(k);
    }
    let mut algebras = Vec::new();
    let mut maps = Vec::new();
    for v in 0..graph.n_vertices() {
        let d = cfg.vertex_dims[v % cfg.vertex_dims.len()];
        let k = block_dims[coloring[v]];
        let m = cfg.multiplicity.max(k.div_ceil(d)).max(1);
        algebras.push(VertexAlgebra::matrix(random_density(d, rng))?);
        maps.push(VertexMap::Stinespring {
            isometry: mathcore::random_isometry(k, d * m, rng)?,
            multiplicity: m,
        });
    }
    ThetaSpec::new(ThetaSpecDoc {
        schema_version: SPEC_SCHEMA_VERSION,
        graph: graph.clone(),
        algebras,
        coloring,
        block_dims,
        maps,
    })
}

/// State-compatible vertex maps `θ_v: (A_v, φ_v) -> (B_v, ψ_v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChodaSetup {
    pub source: GraphProductAlgebra,
    pub target: GraphProductAlgebra,
    pub images: Vec<Vec<CMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChodaVerdict {
    pub source_value: C64,
    pub target_value: C64,
    pub residual: f64,
    pub pass: bool,
}

impl ChodaSetup {
    /// Validates shapes, the ucp property and `ψ_v∘θ_v = φ_v` on every basis
    /// element.
    pub fn new(
        source: GraphProductAlgebra,
        target: GraphProductAlgebra,
        images: Vec<Vec<CMatrix>>,
    ) -> Result<Self, StarError> {
        if source.graph != target.graph || images.len() != source.algebras.len() {
            return Err(StarError::AlgebraMismatch("source and target graphs differ".into()));
        }
        for (v, imgs) in images.iter().enumerate() {
            let (a, b) = (&source.algebras[v], &target.algebras[v]);
            let k = match b.kind() {
                AlgebraKind::Matrix { d, .. } => *d,
                _ => return Err(StarError::AlgebraMismatch("targets must be matrix algebras".into())),
            };
            if imgs.len() != a.dim() || imgs.iter().any(|m| m.rows() != k || m.cols() != k) {
                return Err(StarError::AlgebraMismatch(format!("vertex {v}: image shapes")));
            }
            check_ucp(a, imgs, 1e-9)?;
            for i in 0..a.dim() {
                let lhs = b.state(&AElem::from_matrix(&imgs[i]));
                let rhs = a.state(&a.basis(i));
                let r = (lhs - rhs).norm();
                if r > 1e-10 {
                    return Err(StarError::IncompatibleStates { vertex: v, residual: r });
                }
            }
        }
        Ok(Self { source, target, images })
    }

    /// Maps `e` letterwise, recomputes the product in the target graph
    /// product, and compares vacuum states.
    pub fn check(&self, e: &GpElement, tol: f64) -> Result<ChodaVerdict, StarError> {
        self.source.check(e)?;
        let mut mapped = GpElement::scalar(e.unit);
        for t in &e.terms {
            let letters: Vec<_> = t
                .word
                .iter()
                .zip(&t.letters)
                .map(|(v, a)| (*v, AElem::from_matrix(&apply_images(&self.images[*v], a))))
                .collect();
            let w = self.target.word(&letters)?;
            mapped = self.target.add(&mapped, &self.target.scale(&w, t.coeff));
        }
        let source_value = self.source.vacuum_state(e);
        let target_value = self.target.vacuum_state(&mapped);
        let residual = (source_value - target_value).norm();
        Ok(ChodaVerdict { source_value, target_value, residual, pass: residual <= tol })
    }
}

/// `choda_check` as a free function.
pub fn choda_check(setup: &ChodaSetup, e: &GpElement, tol: f64) -> Result<ChodaVerdict, StarError> {
    setup.check(e, tol)
}

/// Partial trace over the second factor of `C^d ⊗ C^m`.
fn partial_trace_second(m: &CMatrix, d: usize, mult: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| (0..mult).map(|mu| m[(i * mult + mu, j * mult + mu)]).sum())
}

/// Random compatible setup: `ψ_v` random on `M_k`, `θ_v(a) = W*(a ⊗ I)W`, and
/// `φ_v := ψ_v∘θ_v`, i.e. the density `Tr_2(W σ W*)`.
pub fn random_choda_setup<R: Rng + ?Sized>(
    graph: &SimplicialGraph,
    d: usize,
    k: usize,
    rng: &mut R,
) -> Result<ChodaSetup, StarError> {
    let mult = k.div_ceil(d).max(2);
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut images = Vec::new();
    for _ in 0..graph.n_vertices() {
        let w = mathcore::random_isometry(k, d * mult, rng)?;
        let sigma = random_density(k, rng);
        let rho = partial_trace_second(&(&(&w * &sigma) * &w.adjoint()), d, mult);
        let alg = VertexAlgebra::matrix(rho)?;
        let map = VertexMap::Stinespring { isometry: w, multiplicity: mult };
        images.push(local_images(&alg, &map, k)?);
        src.push(alg);
        tgt.push(VertexAlgebra::matrix(sigma)?);
    }
    ChodaSetup::new(
        GraphProductAlgebra::new(graph.clone(), src)?,
        GraphProductAlgebra::new(graph.clone(), tgt)?,
        images,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn eval_unit_and_letter() {
        let g = SimplicialGraph::path(3).unwrap();
        let mut rng = seeded(1);
        let spec = random_theta(&g, &ThetaConfig::default(), &mut rng).unwrap();
        let id = spec.eval(&GpElement::one()).unwrap();
        assert_eq!(id, CMatrix::identity(spec.target_dim()));
        let a = spec.product().algebras[1].random_centered(&mut rng);
        let e = spec.product().reduced_word(&[1], std::slice::from_ref(&a)).unwrap();
        assert!(spec.eval(&e).unwrap().dist(&spec.theta_letter(1, &a)) < 1e-14);
    }

    #[test]
    fn coloring_examples() {
        let mut rng = seeded(2);
        let k2 = random_theta(&SimplicialGraph::complete(2).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        assert_eq!(k2.doc().block_dims.len(), 2);
        let p3 = random_theta(&SimplicialGraph::path(3).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        assert_eq!(p3.doc().coloring, vec![0, 1, 0]);
        let free = random_theta(&SimplicialGraph::edgeless(3).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        assert_eq!(free.doc().block_dims.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut rng = seeded(3);
        let spec = random_theta(&SimplicialGraph::path(2).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: ThetaSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn rejects_noncommuting_edge() {
        let mut rng = seeded(4);
        let spec = random_theta(&SimplicialGraph::edgeless(2).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        let mut doc = spec.doc().clone();
        doc.graph = SimplicialGraph::complete(2).unwrap();
        assert!(matches!(ThetaSpec::new(doc), Err(StarError::SpecInvalid(_))));
    }

    #[test]
    fn rejects_non_cp_map() {
        // transpose on M_2 is positive but not completely positive
        let alg = VertexAlgebra::matrix_tracial(2);
        let images: Vec<CMatrix> = (0..4)
            .map(|idx| {
                let (i, j) = (idx / 2, idx % 2);
                CMatrix::from_fn(2, 2, |r, c| if r == j && c == i { C64::new(1.0, 0.0) } else { ZERO })
            })
            .collect();
        assert!(check_ucp(&alg, &images, 1e-9).is_err());
    }

    #[test]
    fn choda_examples() {
        let mut rng = seeded(5);
        let g = SimplicialGraph::path(3).unwrap();
        let setup = random_choda_setup(&g, 2, 3, &mut rng).unwrap();
        let v = setup.check(&GpElement::one(), 1e-9).unwrap();
        assert!(v.pass && (v.source_value - C64::new(1.0, 0.0)).norm() < 1e-15);
        let a = setup.source.algebras[0].random_centered(&mut rng);
        let b = setup.source.algebras[2].random_centered(&mut rng);
        let e = setup.source.reduced_word(&[0, 2], &[a, b]).unwrap();
        let v = setup.check(&e, 1e-9).unwrap();
        assert!(v.pass && v.source_value == ZERO);
    }
}
