use serde::{Deserialize, Serialize};

use super::concat::gram;
use super::family::WordFamily;
use super::{Tolerances, VerifyError};
use crate::graphwords::Vertex;
use crate::mathcore::{self, CMatrix, C64};
use crate::staralg::{cp_witness, AElem, AlgebraKind, ThetaSpec};

/// Largest deviation of `Θ(a_1⋯a_n)` from `θ(a_σ1)⋯θ(a_σn)` over all
/// orders `σ`, for a word on distinct vertices of a complete graph.
pub fn complete_graph_order_residual(
    spec: &ThetaSpec,
    letters: &[(Vertex, AElem)],
) -> Result<f64, VerifyError> {
    if !spec.graph().is_complete() {
        return Err(VerifyError::HypothesisNotMet("graph is not complete".into()));
    }
    let p = spec.product();
    let word: Vec<Vertex> = letters.iter().map(|l| l.0).collect();
    let ls: Vec<AElem> = letters.iter().map(|l| l.1.clone()).collect();
    let theta = spec.eval(&p.reduced_word(&word, &ls)?)?;
    let mats: Vec<CMatrix> = letters.iter().map(|(v, a)| spec.theta_letter(*v, a)).collect();
    let mut worst = 0.0f64;
    let mut perm: Vec<usize> = (0..mats.len()).collect();
    loop {
        let prod = perm.iter().fold(CMatrix::identity(spec.target_dim()), |acc, &i| &acc * &mats[i]);
        worst = worst.max(mathcore::op_norm(&(&prod - &theta)));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(worst)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Free-product evaluation of `Θ` on a product of plain matrix letters:
/// merge neighbours at the same vertex, then split off the state of the
/// first uncentered letter, recursively.
struct FreeEvaluator<'a> {
    spec: &'a ThetaSpec,
    states: Vec<CMatrix>,
}

impl<'a> FreeEvaluator<'a> {
    fn new(spec: &'a ThetaSpec) -> Result<Self, VerifyError> {
        let states = spec
            .doc()
            .algebras
            .iter()
            .map(|a| match a.kind() {
                AlgebraKind::Matrix { state, .. } => Ok(state.clone()),
                _ => Err(VerifyError::HypothesisNotMet("free-product builder needs matrix algebras".into())),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { spec, states })
    }

    fn eval(&self, mut letters: Vec<(Vertex, CMatrix)>) -> CMatrix {
        let mut i = 0;
        while i + 1 < letters.len() {
            if letters[i].0 == letters[i + 1].0 {
                let (_, b) = letters.remove(i + 1);
                letters[i].1 = &letters[i].1 * &b;
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        let dim = self.spec.target_dim();
        for k in 0..letters.len() {
            let (v, ref m) = letters[k];
            let phi: C64 = (&self.states[v] * m).trace();
            if phi.norm() > 1e-13 * (1.0 + m.frobenius_norm()) {
                let mut centered = letters.clone();
                centered[k].1 = m - &CMatrix::identity(m.rows()).scale(phi);
                let mut dropped = letters.clone();
                dropped.remove(k);
                return &self.eval(centered) + &self.eval(dropped).scale(phi);
            }
        }
        letters.iter().fold(CMatrix::identity(dim), |acc, (v, m)| {
            &acc * &self.spec.theta_letter(*v, &AElem::from_matrix(m))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeCrossCheck {
    pub gram_residual: f64,
    pub graph_product_pass: bool,
    pub free_builder_pass: bool,
    pub agree: bool,
}

/// Gram over the family from the free-product builder alone.
pub fn free_product_gram(spec: &ThetaSpec, fam: &WordFamily) -> Result<CMatrix, VerifyError> {
    if !spec.graph().is_edgeless() {
        return Err(VerifyError::HypothesisNotMet("graph is not edgeless".into()));
    }
    let ev = FreeEvaluator::new(spec)?;
    let raw: Vec<Vec<(Vertex, CMatrix)>> = fam
        .elements
        .iter()
        .map(|e| {
            e.terms
                .first()
                .map(|t| t.word.iter().zip(&t.letters).map(|(v, a)| (*v, a.to_matrix())).collect())
                .unwrap_or_default()
        })
        .collect();
    let d = spec.target_dim();
    let n = raw.len();
    let mut out = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        let left: Vec<(Vertex, CMatrix)> = raw[i].iter().rev().map(|(v, m)| (*v, m.adjoint())).collect();
        for j in 0..n {
            let mut w = left.clone();
            w.extend(raw[j].iter().cloned());
            out.set_block(i * d, j * d, &ev.eval(w));
        }
    }
    Ok(out)
}

/// Compares the graph product Gram with the free-product builder.
pub fn free_cross_check(spec: &ThetaSpec, fam: &WordFamily, tol: &Tolerances) -> Result<FreeCrossCheck, VerifyError> {
    let report = gram(spec, fam, tol)?;
    let free = free_product_gram(spec, fam)?;
    let fv = mathcore::is_psd(&free.hermitian_part(), tol.psd)?;
    let gram_residual = report.gram.dist(&free) / (1.0 + report.verdict.max_eig.abs());
    Ok(FreeCrossCheck {
        gram_residual,
        graph_product_pass: report.verdict.pass,
        free_builder_pass: fv.pass,
        agree: report.verdict.pass == fv.pass && gram_residual <= tol.degeneration,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleVertexCheck {
    pub gram_pass: bool,
    pub choi_pass: bool,
    pub agree: bool,
}

/// On one vertex the Gram verdict must agree with the Choi verdict.
pub fn single_vertex_check(spec: &ThetaSpec, fam: &WordFamily, tol: &Tolerances) -> Result<SingleVertexCheck, VerifyError> {
    if spec.graph().n_vertices() != 1 {
        return Err(VerifyError::HypothesisNotMet("graph must have one vertex".into()));
    }
    let report = gram(spec, fam, tol)?;
    let alg = &spec.doc().algebras[0];
    let k = spec.target_dim();
    let images: Vec<CMatrix> = (0..alg.dim()).map(|i| spec.theta_local(0, &alg.basis(i))).collect();
    debug_assert!(images.iter().all(|m| m.rows() == k));
    let choi = mathcore::is_psd(&cp_witness(alg, &images).hermitian_part(), tol.psd)?;
    Ok(SingleVertexCheck {
        gram_pass: report.verdict.pass,
        choi_pass: choi.pass,
        agree: report.verdict.pass == choi.pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphwords::SimplicialGraph;
    use crate::rng::seeded;
    use crate::staralg::{random_theta, ThetaConfig};
    use crate::verify::family::{random_family, FamilyConfig};

    #[test]
    fn permutations_enumerate() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn k2_order_swap() {
        let mut rng = seeded(1);
        let spec = random_theta(&SimplicialGraph::complete(2).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        let p = spec.product();
        let letters = vec![(0, p.algebras[0].random_centered(&mut rng)), (1, p.algebras[1].random_centered(&mut rng))];
        assert!(complete_graph_order_residual(&spec, &letters).unwrap() < 1e-10);
    }

    #[test]
    fn edgeless_cross_check() {
        let mut rng = seeded(2);
        let spec = random_theta(&SimplicialGraph::edgeless(2).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        let fam = random_family(spec.product(), &FamilyConfig::default(), &mut rng).unwrap();
        let c = free_cross_check(&spec, &fam, &Tolerances::default()).unwrap();
        assert!(c.agree, "{c:?}");
    }

    #[test]
    fn k1_gram_and_choi_agree() {
        let mut rng = seeded(3);
        let spec = random_theta(&SimplicialGraph::edgeless(1).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
        let fam = random_family(spec.product(), &FamilyConfig::default(), &mut rng).unwrap();
        let c = single_vertex_check(&spec, &fam, &Tolerances::default()).unwrap();
        assert!(c.agree && c.gram_pass);
    }
}
