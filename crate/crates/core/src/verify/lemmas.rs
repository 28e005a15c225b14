use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::concat::{gram_of, psd_slack, rel_residual};
use super::family::{random_reduced_word, WordFamily};
use super::{Tolerances, VerifyError};
use crate::graphwords::{self, ReducedWord, SimplicialGraph, Vertex};
use crate::mathcore::CMatrix;
use crate::staralg::{AElem, GpElement, GraphProductAlgebra, ThetaSpec};

/// A reduced word with one letter per vertex occurrence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct Piece {
    pub word: Vec<Vertex>,
    pub letters: Vec<AElem>,
}

impl Piece {
    pub fn random<R: Rng + ?Sized>(product: &GraphProductAlgebra, word: &[Vertex], rng: &mut R) -> Self {
        Self {
            word: word.to_vec(),
            letters: word.iter().map(|&v| product.algebras[v].random_centered(rng)).collect(),
        }
    }

    pub fn element(&self, product: &GraphProductAlgebra) -> Result<GpElement, VerifyError> {
        if self.word.is_empty() {
            return Ok(GpElement::one());
        }
        Ok(product.reduced_word(&self.word, &self.letters)?)
    }
}

/// `x = y·c·a·b` with `a` centered at `v0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StdPieces {
    pub y: Piece,
    pub c: Piece,
    pub a: AElem,
    pub b: Piece,
}

impl StdPieces {
    pub fn vertex_word(&self, v0: Vertex) -> Vec<Vertex> {
        let mut w = self.y.word.clone();
        w.extend_from_slice(&self.c.word);
        w.push(v0);
        w.extend_from_slice(&self.b.word);
        w
    }

    fn ab(&self, product: &GraphProductAlgebra, v0: Vertex) -> Result<GpElement, VerifyError> {
        let a = product.reduced_word(&[v0], std::slice::from_ref(&self.a))?;
        Ok(product.mul(&a, &self.b.element(product)?)?)
    }

    fn yc(&self, product: &GraphProductAlgebra) -> Result<GpElement, VerifyError> {
        Ok(product.mul(&self.y.element(product)?, &self.c.element(product)?)?)
    }

    fn x(&self, product: &GraphProductAlgebra, v0: Vertex) -> Result<GpElement, VerifyError> {
        Ok(product.mul(&self.yc(product)?, &self.ab(product, v0)?)?)
    }

    /// Verifies the pieces form `x` in standard form; returns `nc({x}^⪯)`.
    fn check_standard(&self, product: &GraphProductAlgebra, v0: Vertex) -> Result<i64, VerifyError> {
        let g = &product.graph;
        let s = product.algebras[v0].state(&self.a);
        if s.norm() > 1e-12 * (1.0 + self.a.coeff_norm()) {
            return Err(not_met("letter a is not centered"));
        }
        let w = self.vertex_word(v0);
        let rw = ReducedWord::new(g, w).map_err(|_| not_met("y c (v0) b is not reduced"))?;
        let sf = graphwords::standard_form(g, &rw, v0)?;
        let same = |p: &Piece, q: &ReducedWord| graphwords::normal_form(g, &p.word).letters() == q.letters();
        if !(same(&self.y, &sf.y) && same(&self.c, &sf.c) && same(&self.b, &sf.b)) {
            return Err(not_met("pieces are not the standard form"));
        }
        Ok(sf.nc)
    }
}

fn not_met(msg: &str) -> VerifyError {
    VerifyError::HypothesisNotMet(msg.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualityVerdict {
    /// Relative residuals of each asserted equality.
    pub residuals: Vec<f64>,
    pub pass: bool,
    pub nc_branch: bool,
}

impl EqualityVerdict {
    pub fn worst(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityVerdict {
    pub min_eig: f64,
    pub relative_slack: f64,
    /// Relative residuals of side equalities, if any.
    pub residuals: Vec<f64>,
    pub pass: bool,
    pub nc_branch: bool,
}

fn nc_of_down(g: &SimplicialGraph, w: &[Vertex], v0: Vertex) -> i64 {
    let rw = graphwords::normal_form(g, w);
    graphwords::nc_length_of_set(g, &graphwords::down_set(g, &rw), v0)
}

fn adj(product: &GraphProductAlgebra, e: &GpElement) -> GpElement {
    product.adjoint(e)
}

/// `[Θ(b_i*c_i*c_j b_j)] ≥ [Θ(b_i*)Θ(c_i*c_j)Θ(b_j)]` for pairs `(b_i, c_i)`
/// of family members with `c_i·b_i` a member.
pub fn check_schwarz(
    spec: &ThetaSpec,
    fam: &WordFamily,
    pairs: &[(usize, usize)],
    tol: &Tolerances,
) -> Result<InequalityVerdict, VerifyError> {
    let p = spec.product();
    let g = &p.graph;
    let mut cb = Vec::with_capacity(pairs.len());
    let mut nc_branch = false;
    for &(b, c) in pairs {
        if b >= fam.len() || c >= fam.len() {
            return Err(VerifyError::PairNotInX(format!("index out of range in ({b}, {c})")));
        }
        let prod = p.mul(&fam.elements[c], &fam.elements[b])?;
        let z = fam.find(&prod).ok_or_else(|| VerifyError::PairNotInX(format!("{} · {}", fam.labels[c], fam.labels[b])))?;
        let w = &fam.words()[z];
        nc_branch |= (0..g.n_vertices()).any(|v| nc_of_down(g, w, v) >= 1);
        cb.push(z);
    }
    let lhs = gram_of(spec, &cb.iter().map(|&z| fam.elements[z].clone()).collect::<Vec<_>>(), tol)?.gram;
    let d = spec.target_dim();
    let n = pairs.len();
    let theta_b: Vec<CMatrix> = pairs.iter().map(|&(b, _)| spec.eval(&fam.elements[b])).collect::<Result<_, _>>()?;
    let mut rhs = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            let cc = spec.eval(&p.mul(&adj(p, &fam.elements[pairs[i].1]), &fam.elements[pairs[j].1])?)?;
            rhs.set_block(i * d, j * d, &(&(&theta_b[i].adjoint() * &cc) * &theta_b[j]));
        }
    }
    let (min_eig, relative_slack) = psd_slack(&(&lhs - &rhs))?;
    Ok(InequalityVerdict {
        min_eig,
        relative_slack,
        residuals: Vec::new(),
        pass: relative_slack >= -tol.psd,
        nc_branch,
    })
}

/// Instance for the cross-term factorization against a shorter word.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct X1Instance {
    pub v0: Vertex,
    pub x: StdPieces,
    pub x_prime: Piece,
}

/// `Θ(b*a*c*y*x') = Θ(b*a*)Θ(c*y*x')`.
pub fn check_lemma_x1(spec: &ThetaSpec, inst: &X1Instance, tol: &Tolerances) -> Result<EqualityVerdict, VerifyError> {
    let p = spec.product();
    let g = &p.graph;
    let nc = inst.x.check_standard(p, inst.v0)?;
    if !graphwords::is_reduced(g, &inst.x_prime.word)? {
        return Err(not_met("x' is not reduced"));
    }
    if nc_of_down(g, &inst.x_prime.word, inst.v0) >= nc {
        return Err(not_met("nc-length of x' is not smaller"));
    }
    let xp = inst.x_prime.element(p)?;
    let x = inst.x.x(p, inst.v0)?;
    let lhs = spec.eval(&p.mul(&adj(p, &x), &xp)?)?;
    let ab = spec.eval(&adj(p, &inst.x.ab(p, inst.v0)?))?;
    let rest = spec.eval(&p.mul(&adj(p, &inst.x.yc(p)?), &xp)?)?;
    let r = rel_residual(&lhs, &(&ab * &rest));
    Ok(EqualityVerdict { residuals: vec![r], pass: r <= tol.equality, nc_branch: nc >= 1 })
}

/// Instance for the cross terms of two words with different `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Y1Instance {
    pub v0: Vertex,
    pub x: StdPieces,
    pub x_prime: StdPieces,
}

/// `Θ(b*a*c*y*y'c'a'b') = Θ(b*a*)Θ(c*y*y'c'a'b')`, and separately
/// `= Θ(b*a*)Θ(c*y*y'c')Θ(a'b')`.
pub fn check_lemma_y1(spec: &ThetaSpec, inst: &Y1Instance, tol: &Tolerances) -> Result<EqualityVerdict, VerifyError> {
    let p = spec.product();
    let g = &p.graph;
    let n1 = inst.x.check_standard(p, inst.v0)?;
    let n2 = inst.x_prime.check_standard(p, inst.v0)?;
    if n1 != n2 || n1 <= 0 {
        return Err(not_met("nc-lengths must agree and be positive"));
    }
    if graphwords::normal_form(g, &inst.x.y.word) == graphwords::normal_form(g, &inst.x_prime.y.word) {
        return Err(not_met("y and y' coincide"));
    }
    let x = inst.x.x(p, inst.v0)?;
    let xp = inst.x_prime.x(p, inst.v0)?;
    let lhs = spec.eval(&p.mul(&adj(p, &x), &xp)?)?;
    let ab = spec.eval(&adj(p, &inst.x.ab(p, inst.v0)?))?;
    let yc_adj = adj(p, &inst.x.yc(p)?);
    let first = &ab * &spec.eval(&p.mul(&yc_adj, &xp)?)?;
    let middle = spec.eval(&p.mul(&yc_adj, &inst.x_prime.yc(p)?)?)?;
    let second = &(&ab * &middle) * &spec.eval(&inst.x_prime.ab(p, inst.v0)?)?;
    let residuals = vec![rel_residual(&lhs, &first), rel_residual(&lhs, &second)];
    let pass = residuals.iter().all(|&r| r <= tol.equality);
    Ok(EqualityVerdict { residuals, pass, nc_branch: n1 >= 1 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TechInstance {
    pub v0: Vertex,
    pub y: Piece,
    /// Arbitrary, not necessarily centered.
    pub a: AElem,
}

/// `Θ(y*a*ay) ≥ Θ(y*)Θ(a*a)Θ(y)` and `Θ(a*a) = θ_{v0}(a*a)`.
pub fn check_techlem(spec: &ThetaSpec, inst: &TechInstance, tol: &Tolerances) -> Result<InequalityVerdict, VerifyError> {
    let p = spec.product();
    let g = &p.graph;
    let mut w = vec![inst.v0];
    w.extend_from_slice(&inst.y.word);
    if !graphwords::is_reduced(g, &w)? {
        return Err(not_met("(v0)·y is not reduced"));
    }
    let alg = &p.algebras[inst.v0];
    alg.check(&inst.a)?;
    let y = inst.y.element(p)?;
    let a = p.letter(inst.v0, &inst.a)?;
    let ay = p.mul(&a, &y)?;
    let lhs = spec.eval(&p.mul(&adj(p, &ay), &ay)?)?;
    let ty = spec.eval(&y)?;
    let a_star_a = p.mul(&adj(p, &a), &a)?;
    let taa = spec.eval(&a_star_a)?;
    let direct = spec.theta_letter(inst.v0, &alg.mul(&alg.adjoint(&inst.a), &inst.a)?);
    let rhs = &(&ty.adjoint() * &taa) * &ty;
    let rhs_direct = &(&ty.adjoint() * &direct) * &ty;
    let residuals = vec![rel_residual(&rhs, &rhs_direct)];
    let (min_eig, relative_slack) = psd_slack(&(&lhs - &rhs))?;
    let nc_branch = inst.y.word.iter().any(|&u| !g.adjacent(u, inst.v0));
    Ok(InequalityVerdict {
        min_eig,
        relative_slack,
        pass: relative_slack >= -tol.psd && residuals[0] <= tol.equality,
        residuals,
        nc_branch,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Y1SquareInstance {
    pub v0: Vertex,
    pub items: Vec<StdPieces>,
}

/// `[Θ(x_i*x_j)] ≥ [Θ(b_i*a_i*)Θ(c_i*y_i*y_jc_j)Θ(a_jb_j)]` when all `y_i`
/// share one word.
pub fn check_y1_square(
    spec: &ThetaSpec,
    inst: &Y1SquareInstance,
    tol: &Tolerances,
) -> Result<InequalityVerdict, VerifyError> {
    let p = spec.product();
    let g = &p.graph;
    if inst.items.is_empty() {
        return Err(not_met("no words"));
    }
    let mut nc = -1;
    for it in &inst.items {
        nc = nc.max(it.check_standard(p, inst.v0)?);
    }
    let y0 = graphwords::normal_form(g, &inst.items[0].y.word);
    if inst.items.iter().any(|it| graphwords::normal_form(g, &it.y.word) != y0) {
        return Err(not_met("y-words differ"));
    }
    let xs: Vec<GpElement> = inst.items.iter().map(|it| it.x(p, inst.v0)).collect::<Result<_, _>>()?;
    let lhs = gram_of(spec, &xs, tol)?.gram;
    let ycs: Vec<GpElement> = inst.items.iter().map(|it| it.yc(p)).collect::<Result<_, _>>()?;
    let abs: Vec<CMatrix> =
        inst.items.iter().map(|it| spec.eval(&it.ab(p, inst.v0)?).map_err(VerifyError::from)).collect::<Result<_, _>>()?;
    let d = spec.target_dim();
    let n = xs.len();
    let mut rhs = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            let mid = spec.eval(&p.mul(&adj(p, &ycs[i]), &ycs[j])?)?;
            rhs.set_block(i * d, j * d, &(&(&abs[i].adjoint() * &mid) * &abs[j]));
        }
    }
    let (min_eig, relative_slack) = psd_slack(&(&lhs - &rhs))?;
    Ok(InequalityVerdict {
        min_eig,
        relative_slack,
        residuals: Vec::new(),
        pass: relative_slack >= -tol.psd,
        nc_branch: nc >= 1,
    })
}

const ATTEMPTS: usize = 400;

fn usable(p: &GraphProductAlgebra) -> Vec<Vertex> {
    (0..p.graph.n_vertices()).filter(|&v| !p.algebras[v].kernel_basis().is_empty()).collect()
}

/// Splits a random reduced word containing `v0` into its standard form with
/// fresh random letters.
fn random_std<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    v0: Vertex,
    word: &[Vertex],
    rng: &mut R,
) -> Option<(StdPieces, i64)> {
    let g = &p.graph;
    let rw = ReducedWord::new(g, word.to_vec()).ok()?;
    let sf = graphwords::standard_form(g, &rw, v0).ok()?;
    let pieces = StdPieces {
        y: Piece::random(p, &sf.y, rng),
        c: Piece::random(p, &sf.c, rng),
        a: p.algebras[v0].random_centered(rng),
        b: Piece::random(p, &sf.b, rng),
    };
    Some((pieces, sf.nc))
}

/// Random reduced word containing `v0`, optionally starting with `lead`.
fn word_with<R: Rng + ?Sized>(
    g: &SimplicialGraph,
    verts: &[Vertex],
    v0: Vertex,
    lead: Option<Vertex>,
    max_len: usize,
    rng: &mut R,
) -> Vec<Vertex> {
    let mut raw: Vec<Vertex> = lead.into_iter().collect();
    raw.extend(random_reduced_word(g, verts, max_len.saturating_sub(1).max(1), rng));
    let pos = rng.gen_range(0..=raw.len());
    raw.insert(pos, v0);
    graphwords::reduce(g, &raw).into_vec()
}

pub fn random_x1_instance<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    max_len: usize,
    rng: &mut R,
) -> Result<X1Instance, VerifyError> {
    let g = &p.graph;
    let verts = usable(p);
    if verts.is_empty() {
        return Err(not_met("no vertex with a nontrivial centered part"));
    }
    for _ in 0..ATTEMPTS {
        let v0 = *verts.choose(rng).expect("nonempty");
        let w = word_with(g, &verts, v0, None, max_len, rng);
        if !w.contains(&v0) {
            continue;
        }
        let Some((x, nc)) = random_std(p, v0, &w, rng) else { continue };
        let lead = graphwords::left_movable(g, &w).choose(rng).map(|&i| w[i]);
        for _ in 0..20 {
            let mut raw: Vec<Vertex> = if rng.gen_bool(0.8) { lead.into_iter().collect() } else { Vec::new() };
            let tail_len = rng.gen_range(0..max_len);
            if tail_len > 0 {
                raw.extend(random_reduced_word(g, &verts, tail_len, rng));
            }
            let xp = graphwords::reduce(g, &raw).into_vec();
            if nc_of_down(g, &xp, v0) < nc {
                return Ok(X1Instance { v0, x, x_prime: Piece::random(p, &xp, rng) });
            }
        }
    }
    Err(not_met("no X1 instance found"))
}

pub fn random_y1_instance<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    max_len: usize,
    rng: &mut R,
) -> Result<Y1Instance, VerifyError> {
    let g = &p.graph;
    let verts = usable(p);
    if verts.is_empty() {
        return Err(not_met("no vertex with a nontrivial centered part"));
    }
    for _ in 0..ATTEMPTS {
        let v0 = *verts.choose(rng).expect("nonempty");
        let w = word_with(g, &verts, v0, None, max_len, rng);
        let Some((x, nc)) = random_std(p, v0, &w, rng) else { continue };
        if nc <= 0 {
            continue;
        }
        let lead = graphwords::left_movable(g, &w).choose(rng).map(|&i| w[i]);
        for _ in 0..30 {
            let w2 = word_with(g, &verts, v0, lead.filter(|_| rng.gen_bool(0.7)), max_len, rng);
            let Some((x2, nc2)) = random_std(p, v0, &w2, rng) else { continue };
            if nc2 == nc && graphwords::normal_form(g, &x.y.word) != graphwords::normal_form(g, &x2.y.word) {
                return Ok(Y1Instance { v0, x, x_prime: x2 });
            }
        }
    }
    Err(not_met("no Y1 instance found"))
}

pub fn random_tech_instance<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    max_len: usize,
    rng: &mut R,
) -> Result<TechInstance, VerifyError> {
    let g = &p.graph;
    let verts = usable(p);
    if verts.is_empty() {
        return Err(not_met("no vertex with a nontrivial centered part"));
    }
    for _ in 0..ATTEMPTS {
        let v0 = *verts.choose(rng).expect("nonempty");
        let len = rng.gen_range(0..=max_len.min(4));
        let y = if len == 0 { Vec::new() } else { random_reduced_word(g, &verts, len, rng) };
        let mut w = vec![v0];
        w.extend_from_slice(&y);
        if graphwords::is_reduced_unchecked(g, &w) {
            return Ok(TechInstance { v0, y: Piece::random(p, &y, rng), a: p.algebras[v0].random_element(rng) });
        }
    }
    Err(not_met("no techlem instance found"))
}

pub fn random_y1_square_instance<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    max_len: usize,
    max_items: usize,
    rng: &mut R,
) -> Result<Y1SquareInstance, VerifyError> {
    let g = &p.graph;
    let verts = usable(p);
    if verts.is_empty() {
        return Err(not_met("no vertex with a nontrivial centered part"));
    }
    for _ in 0..ATTEMPTS {
        let v0 = *verts.choose(rng).expect("nonempty");
        let w = word_with(g, &verts, v0, None, max_len, rng);
        let Some((first, _)) = random_std(p, v0, &w, rng) else { continue };
        let y0 = graphwords::normal_form(g, &first.y.word);
        let want = rng.gen_range(1..=max_items.max(1));
        let mut items = vec![first];
        for _ in 0..40 {
            if items.len() >= want {
                break;
            }
            // same y, fresh tail
            let mut raw = y0.letters().to_vec();
            let tail = word_with(g, &verts, v0, None, max_len.saturating_sub(raw.len()).max(1), rng);
            raw.extend(tail);
            let cand = graphwords::reduce(g, &raw).into_vec();
            if !cand.contains(&v0) {
                continue;
            }
            if let Some((it, _)) = random_std(p, v0, &cand, rng) {
                if graphwords::normal_form(g, &it.y.word) == y0 {
                    items.push(it);
                }
            }
        }
        return Ok(Y1SquareInstance { v0, items });
    }
    Err(not_met("no Y1-square instance found"))
}

/// Random Schwarz pairs from a family: all `(b, c)` with `c·b` a member,
/// then a random selection of up to `max_pairs`.
pub fn random_schwarz_pairs<R: Rng + ?Sized>(
    p: &GraphProductAlgebra,
    fam: &WordFamily,
    max_pairs: usize,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>, VerifyError> {
    let mut valid = Vec::new();
    for b in 0..fam.len() {
        for c in 0..fam.len() {
            if fam.find(&p.mul(&fam.elements[c], &fam.elements[b])?).is_some() {
                valid.push((b, c));
            }
        }
    }
    // prefer pairs where both factors are nontrivial
    let nontrivial: Vec<_> = valid.iter().copied().filter(|&(b, c)| b != 0 && c != 0).collect();
    let pool = if !nontrivial.is_empty() && rng.gen_bool(0.8) { nontrivial } else { valid };
    let n = rng.gen_range(1..=max_pairs.max(1)).min(pool.len());
    Ok(pool.choose_multiple(rng, n).copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::staralg::{random_theta, ThetaConfig};

    fn spec(g: SimplicialGraph, seed: u64) -> ThetaSpec {
        random_theta(&g, &ThetaConfig::default(), &mut seeded(seed)).unwrap()
    }

    #[test]
    fn x1_trivial_and_free_instance() {
        let s = spec(SimplicialGraph::edgeless(2).unwrap(), 1);
        let p = s.product();
        let mut rng = seeded(2);
        let tol = Tolerances::default();
        // x = (0 1 0) w.r.t. v0 = 0: y = (0 1), c = (), b = ()
        let x = StdPieces {
            y: Piece::random(p, &[0, 1], &mut rng),
            c: Piece::default(),
            a: p.algebras[0].random_centered(&mut rng),
            b: Piece::default(),
        };
        let unit = X1Instance { v0: 0, x: x.clone(), x_prime: Piece::default() };
        assert!(check_lemma_x1(&s, &unit, &tol).unwrap().pass);
        let inst = X1Instance { v0: 0, x, x_prime: Piece::random(p, &[0], &mut rng) };
        let v = check_lemma_x1(&s, &inst, &tol).unwrap();
        assert!(v.pass && v.nc_branch, "{v:?}");
    }

    #[test]
    fn hypothesis_violations_are_reported() {
        let s = spec(SimplicialGraph::edgeless(2).unwrap(), 3);
        let p = s.product();
        let mut rng = seeded(4);
        let x = StdPieces {
            y: Piece::default(),
            c: Piece::default(),
            a: p.algebras[0].random_centered(&mut rng),
            b: Piece::default(),
        };
        // x' = (0) has the same nc-length 0 as x = (0)
        let inst = X1Instance { v0: 0, x, x_prime: Piece::random(p, &[0], &mut rng) };
        assert!(matches!(check_lemma_x1(&s, &inst, &Tolerances::default()), Err(VerifyError::HypothesisNotMet(_))));
    }

    #[test]
    fn techlem_unit_y_is_tight() {
        let s = spec(SimplicialGraph::path(2).unwrap(), 5);
        let p = s.product();
        let mut rng = seeded(6);
        let inst = TechInstance { v0: 0, y: Piece::default(), a: p.algebras[0].random_element(&mut rng) };
        let v = check_techlem(&s, &inst, &Tolerances::default()).unwrap();
        assert!(v.pass && v.min_eig.abs() < 1e-10, "{v:?}");
    }

    #[test]
    fn generators_find_instances() {
        let s = spec(SimplicialGraph::path(4).unwrap(), 7);
        let p = s.product();
        let mut rng = seeded(8);
        let tol = Tolerances::default();
        for _ in 0..10 {
            let i = random_x1_instance(p, 5, &mut rng).unwrap();
            assert!(check_lemma_x1(&s, &i, &tol).unwrap().pass);
            let i = random_y1_instance(p, 5, &mut rng).unwrap();
            assert!(check_lemma_y1(&s, &i, &tol).unwrap().pass);
            let i = random_tech_instance(p, 4, &mut rng).unwrap();
            assert!(check_techlem(&s, &i, &tol).unwrap().pass);
            let i = random_y1_square_instance(p, 5, 3, &mut rng).unwrap();
            assert!(check_y1_square(&s, &i, &tol).unwrap().pass);
        }
    }
}
