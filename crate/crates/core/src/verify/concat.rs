use serde::{Deserialize, Serialize};

use super::family::WordFamily;
use super::{Tolerances, VerifyError};
use crate::mathcore::{self, CMatrix, HermEig, PsdVerdict};
use crate::staralg::{GpElement, GraphProductAlgebra, ThetaSpec};

/// The block Gram `[Θ(x*y)]` with eigen-diagnostics.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub gram: CMatrix,
    pub block: usize,
    pub n_words: usize,
    pub eig: HermEig,
    pub verdict: PsdVerdict,
    pub hermitian_defect: f64,
    /// Number of eigenvalues above the relative rank cutoff.
    pub rank: usize,
}

/// Serializable digest of a [`GramReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramSummary {
    pub n_words: usize,
    pub size: usize,
    pub min_eig: f64,
    pub max_eig: f64,
    pub relative_slack: f64,
    pub rank: usize,
    pub hermitian_defect: f64,
    pub pass: bool,
}

impl GramReport {
    pub fn summary(&self) -> GramSummary {
        GramSummary {
            n_words: self.n_words,
            size: self.gram.rows(),
            min_eig: self.verdict.min_eig,
            max_eig: self.verdict.max_eig,
            relative_slack: self.verdict.relative_slack(),
            rank: self.rank,
            hermitian_defect: self.hermitian_defect,
            pass: self.verdict.pass,
        }
    }

    /// Block `(i, j)`, i.e. `Θ(x_i* x_j)`.
    pub fn block_at(&self, i: usize, j: usize) -> CMatrix {
        self.gram.block(i * self.block, j * self.block, self.block, self.block)
    }
}

/// Gram of arbitrary elements under `Θ`.
pub fn gram_of(spec: &ThetaSpec, elements: &[GpElement], tol: &Tolerances) -> Result<GramReport, VerifyError> {
    let product = spec.product();
    let d = spec.target_dim();
    let n = elements.len();
    let adjoints: Vec<GpElement> = elements.iter().map(|e| product.adjoint(e)).collect();
    let mut gram = CMatrix::zeros(n * d, n * d);
    for i in 0..n {
        for j in i..n {
            let b = spec.eval(&product.mul(&adjoints[i], &elements[j])?)?;
            if i != j {
                gram.set_block(j * d, i * d, &b.adjoint());
            }
            gram.set_block(i * d, j * d, &b);
        }
    }
    let hermitian_defect = gram.hermitian_defect();
    let eig = mathcore::herm_eig(&gram.hermitian_part())?;
    let verdict = mathcore::psd_verdict(eig.min(), eig.max(), tol.psd);
    let cut = tol.rank_cut * eig.max().max(0.0);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > cut).count();
    Ok(GramReport { gram, block: d, n_words: n, eig, verdict, hermitian_defect, rank })
}

/// `gram(spec, fam)`: blocks `Θ(x*y)` over the family.
pub fn gram(spec: &ThetaSpec, fam: &WordFamily, tol: &Tolerances) -> Result<GramReport, VerifyError> {
    fam.validate(spec.product())?;
    gram_of(spec, &fam.elements, tol)
}

/// Left-concatenation by one single-letter member.
#[derive(Clone, Debug)]
pub struct Shift {
    pub generator: usize,
    /// `targets[y] = Some(z)` when `x·y` is the member `z`.
    pub targets: Vec<Option<usize>>,
    pub l: CMatrix,
    pub well_defined_residual: f64,
}

/// The quotient space of the Gram form with `V₁` and the operators `L_x`.
#[derive(Clone, Debug)]
pub struct ConcatSpace {
    pub r: CMatrix,
    pub r_pinv: CMatrix,
    pub v1: CMatrix,
    pub rank: usize,
    pub block: usize,
    pub gram_norm: f64,
    pub factor_residual: f64,
    pub isometry_residual: f64,
    pub shifts: Vec<Shift>,
}

/// Structural map `x·y = z` over the family.
pub fn concat_targets(
    product: &GraphProductAlgebra,
    fam: &WordFamily,
    generator: usize,
) -> Result<Vec<Option<usize>>, VerifyError> {
    let x = &fam.elements[generator];
    fam.elements.iter().map(|y| Ok(fam.find(&product.mul(x, y)?))).collect()
}

impl ConcatSpace {
    /// Factors the Gram on its numerically nonzero spectrum and builds
    /// `L_x = R P_x R⁺` for every generator.
    pub fn build(
        product: &GraphProductAlgebra,
        fam: &WordFamily,
        report: &GramReport,
        generators: &[usize],
        tol: &Tolerances,
    ) -> Result<Self, VerifyError> {
        if !report.verdict.pass {
            return Err(VerifyError::GramNotPsd { min_eig: report.verdict.min_eig });
        }
        let n = report.gram.rows();
        let d = report.block;
        let lmax = report.eig.max().max(0.0);
        let kept: Vec<usize> =
            (0..n).filter(|&k| report.eig.eigenvalues[k] > tol.rank_cut * lmax).collect();
        let q = &report.eig.eigenvectors;
        let r = CMatrix::from_fn(kept.len(), n, |k, j| {
            q[(j, kept[k])].conj() * report.eig.eigenvalues[kept[k]].sqrt()
        });
        let r_pinv = CMatrix::from_fn(n, kept.len(), |j, k| q[(j, kept[k])] / report.eig.eigenvalues[kept[k]].sqrt());
        let factor_residual = (&r.adjoint() * &r).dist(&report.gram);
        let v1 = r.block(0, 0, kept.len(), d);
        let isometry_residual = (&v1.adjoint() * &v1).dist(&CMatrix::identity(d));
        let mut shifts = Vec::new();
        for &gidx in generators {
            let targets = concat_targets(product, fam, gidx)?;
            // (R P_x)[:, y] = R[:, xy]
            let mut rp = CMatrix::zeros(kept.len(), n);
            for (y, t) in targets.iter().enumerate() {
                if let Some(z) = t {
                    rp.set_block(0, y * d, &r.block(0, z * d, kept.len(), d));
                }
            }
            let l = &rp * &r_pinv;
            let well_defined_residual = mathcore::op_norm(&(&(&l * &r) - &rp));
            shifts.push(Shift { generator: gidx, targets, l, well_defined_residual });
        }
        Ok(Self {
            r,
            r_pinv,
            v1,
            rank: kept.len(),
            block: d,
            gram_norm: lmax,
            factor_residual,
            isometry_residual,
            shifts,
        })
    }

    pub fn shift(&self, generator: usize) -> Option<&Shift> {
        self.shifts.iter().find(|s| s.generator == generator)
    }

    /// `L_{g_1} ⋯ L_{g_m} V₁`.
    pub fn chain_v1(&self, gens: &[usize]) -> Result<CMatrix, VerifyError> {
        let mut acc = self.v1.clone();
        for g in gens.iter().rev() {
            let s = self.shift(*g).ok_or(VerifyError::MissingGenerator(*g))?;
            acc = &s.l * &acc;
        }
        Ok(acc)
    }

    pub fn max_well_defined_residual(&self) -> f64 {
        self.shifts.iter().map(|s| s.well_defined_residual).fold(0.0, f64::max)
    }
}

/// `build_concat_space(spec, fam)` using every single-letter member.
pub fn build_concat_space(
    spec: &ThetaSpec,
    fam: &WordFamily,
    report: &GramReport,
    tol: &Tolerances,
) -> Result<ConcatSpace, VerifyError> {
    ConcatSpace::build(spec.product(), fam, report, &fam.generators(), tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LxVerdict {
    pub generator: usize,
    pub norm_l: f64,
    pub norm_x: f64,
    pub well_defined_residual: f64,
    pub pass: bool,
}

impl LxVerdict {
    /// `‖L_x‖ / ‖x‖ - 1`, positive when the bound is violated.
    pub fn excess(&self) -> f64 {
        if self.norm_x > 0.0 {
            self.norm_l / self.norm_x - 1.0
        } else if self.norm_l > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

/// `‖L_x‖ ≤ ‖x‖(1 + tol)` together with well-definedness of `L_x`.
pub fn check_lx_bound(cs: &ConcatSpace, shift: &Shift, norm_x: f64, tol: &Tolerances) -> LxVerdict {
    let norm_l = mathcore::op_norm(&shift.l);
    let well = shift.well_defined_residual <= tol.well_defined * (1.0 + cs.gram_norm);
    LxVerdict {
        generator: shift.generator,
        norm_l,
        norm_x,
        well_defined_residual: shift.well_defined_residual,
        pass: well && norm_l <= norm_x * (1.0 + tol.lx_bound),
    }
}

/// Norm of the letter of a single-letter member.
pub fn letter_norm(product: &GraphProductAlgebra, e: &GpElement) -> f64 {
    let t = &e.terms[0];
    product.algebras[t.word[0]].norm(&t.letters[0]) * t.coeff.norm()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressionVerdict {
    pub pairs: usize,
    pub max_residual: f64,
    pub worst_pair: Option<(usize, usize)>,
    pub pass: bool,
}

/// Writes each member as a chain of generators following its letters.
pub fn generator_chains(fam: &WordFamily) -> Result<Vec<Vec<usize>>, VerifyError> {
    let gens = fam.generators();
    fam.elements
        .iter()
        .map(|e| {
            let Some(t) = e.terms.first() else { return Ok(Vec::new()) };
            t.word
                .iter()
                .zip(&t.letters)
                .map(|(v, a)| {
                    gens.iter()
                        .copied()
                        .find(|&g| {
                            let gt = &fam.elements[g].terms[0];
                            gt.word[0] == *v && gt.letters[0] == *a
                        })
                        .ok_or_else(|| VerifyError::InvalidFamily("a letter has no single-letter member".into()))
                })
                .collect()
        })
        .collect()
}

/// `‖V₁*L_x*L_yV₁ − Θ(x*y)‖ ≤ tol(1+‖G‖)` over all pairs.
pub fn check_compression(
    cs: &ConcatSpace,
    report: &GramReport,
    chains: &[Vec<usize>],
    tol: &Tolerances,
) -> Result<CompressionVerdict, VerifyError> {
    let images: Vec<CMatrix> = chains.iter().map(|c| cs.chain_v1(c)).collect::<Result<_, _>>()?;
    let mut max_residual = 0.0;
    let mut worst_pair = None;
    for i in 0..images.len() {
        for j in 0..images.len() {
            let lhs = &images[i].adjoint() * &images[j];
            let res = mathcore::op_norm(&(&lhs - &report.block_at(i, j)));
            if res > max_residual {
                max_residual = res;
                worst_pair = Some((i, j));
            }
        }
    }
    let n = images.len();
    Ok(CompressionVerdict {
        pairs: n * n,
        max_residual,
        worst_pair,
        pass: max_residual <= tol.compression * (1.0 + cs.gram_norm),
    })
}

/// Smallest eigenvalue of a block difference relative to its scale.
pub fn psd_slack(m: &CMatrix) -> Result<(f64, f64), VerifyError> {
    let e = mathcore::herm_eig(&m.hermitian_part())?;
    let scale = 1.0 + e.max().abs().max(e.min().abs());
    Ok((e.min(), e.min() / scale))
}


pub(crate) fn rel_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    let scale = 1.0 + mathcore::op_norm(a).max(mathcore::op_norm(b));
    mathcore::op_norm(&(a - b)) / scale
}

