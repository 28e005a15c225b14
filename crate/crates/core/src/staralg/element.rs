use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{AElem, VertexAlgebra};
use super::StarError;
use crate::graphwords::{self, SimplicialGraph, Vertex};
use crate::mathcore::{C64, ONE, ZERO};

/// `coeff · a_1 ⊗ .. ⊗ a_n` placed on a reduced normal-form word.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub word: Vec<Vertex>,
    pub letters: Vec<AElem>,
    pub coeff: C64,
}

/// Finite sum `unit·1 + Σ terms` in the algebraic graph product.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct GpElement {
    pub unit: C64,
    pub terms: Vec<Term>,
}

impl GpElement {
    pub fn one() -> Self {
        Self::scalar(ONE)
    }

    pub fn scalar(z: C64) -> Self {
        Self { unit: z, terms: Vec::new() }
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|t| t.word.len()).max().unwrap_or(0)
    }
}

/// Expansion over the fixed kernel bases: `(word, basis indices) -> coeff`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Canonical {
    pub unit: C64,
    pub coeffs: BTreeMap<(Vec<Vertex>, Vec<usize>), C64>,
}

impl Canonical {
    /// Euclidean distance of coefficient vectors.
    pub fn dist(&self, other: &Self) -> f64 {
        let mut acc = (self.unit - other.unit).norm_sqr();
        for (k, v) in &self.coeffs {
            acc += (v - other.coeffs.get(k).copied().unwrap_or(ZERO)).norm_sqr();
        }
        for (k, v) in &other.coeffs {
            if !self.coeffs.contains_key(k) {
                acc += v.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.dist(&Canonical::default())
    }
}

/// A graph with a vertex algebra at every vertex: the setting for formal
/// graph product arithmetic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphProductAlgebra {
    pub graph: SimplicialGraph,
    pub algebras: Vec<VertexAlgebra>,
}

impl GraphProductAlgebra {
    pub fn new(graph: SimplicialGraph, algebras: Vec<VertexAlgebra>) -> Result<Self, StarError> {
        if algebras.len() != graph.n_vertices() {
            return Err(StarError::AlgebraMismatch(format!(
                "{} algebras for {} vertices",
                algebras.len(),
                graph.n_vertices()
            )));
        }
        Ok(Self { graph, algebras })
    }

    /// Validates vertices, letter dimensions and reducedness of every term.
    pub fn check(&self, e: &GpElement) -> Result<(), StarError> {
        for t in &e.terms {
            if t.word.len() != t.letters.len() {
                return Err(StarError::AlgebraMismatch("word and letter counts differ".into()));
            }
            self.graph.check_word(&t.word).map_err(|e| StarError::AlgebraMismatch(e.to_string()))?;
            for (v, a) in t.word.iter().zip(&t.letters) {
                self.algebras[*v].check(a)?;
            }
            if !graphwords::is_reduced_unchecked(&self.graph, &t.word) {
                return Err(StarError::AlgebraMismatch(format!(
                    "term word {} is not reduced",
                    graphwords::format_word(&t.word)
                )));
            }
        }
        Ok(())
    }

    /// `ι_v(a)`, split as `å + φ(a)·1`.
    pub fn letter(&self, v: Vertex, a: &AElem) -> Result<GpElement, StarError> {
        self.graph.check_vertex(v).map_err(|e| StarError::AlgebraMismatch(e.to_string()))?;
        self.algebras[v].check(a)?;
        let (c, s) = self.algebras[v].center(a);
        let mut out = GpElement::scalar(s);
        if !c.is_zero() {
            out.terms.push(Term { word: vec![v], letters: vec![c], coeff: ONE });
        }
        Ok(out)
    }

    /// Single-term element on a reduced word with centered letters, given in
    /// any order equivalent to the normal form.
    pub fn reduced_word(&self, word: &[Vertex], letters: &[AElem]) -> Result<GpElement, StarError> {
        let e = GpElement {
            unit: ZERO,
            terms: vec![Term { word: word.to_vec(), letters: letters.to_vec(), coeff: ONE }],
        };
        self.check(&e)?;
        for (v, a) in word.iter().zip(letters) {
            let s = self.algebras[*v].state(a);
            if s.norm() > 1e-12 * (1.0 + a.coeff_norm()) {
                return Err(StarError::NotCentered { vertex: *v, value: s.norm() });
            }
        }
        Ok(self.normalize(e))
    }

    /// Product of arbitrary (not necessarily centered) letters.
    pub fn word(&self, letters: &[(Vertex, AElem)]) -> Result<GpElement, StarError> {
        let mut acc = GpElement::one();
        for (v, a) in letters {
            acc = self.mul(&acc, &self.letter(*v, a)?)?;
        }
        Ok(acc)
    }

    fn normalize(&self, mut e: GpElement) -> GpElement {
        for t in &mut e.terms {
            let perm = graphwords::normal_form_permutation(&self.graph, &t.word);
            t.word = perm.iter().map(|&p| t.word[p]).collect();
            t.letters = perm.iter().map(|&p| t.letters[p].clone()).collect();
        }
        e
    }

    pub fn add(&self, a: &GpElement, b: &GpElement) -> GpElement {
        let mut terms = a.terms.clone();
        terms.extend(b.terms.iter().cloned());
        GpElement { unit: a.unit + b.unit, terms }
    }

    pub fn scale(&self, a: &GpElement, z: C64) -> GpElement {
        GpElement {
            unit: a.unit * z,
            terms: a.terms.iter().map(|t| Term { coeff: t.coeff * z, ..t.clone() }).collect(),
        }
    }

    pub fn sub(&self, a: &GpElement, b: &GpElement) -> GpElement {
        self.add(a, &self.scale(b, C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, x: &GpElement, y: &GpElement) -> Result<GpElement, StarError> {
        self.check(x)?;
        self.check(y)?;
        let mut out = GpElement::scalar(x.unit * y.unit);
        for t in &y.terms {
            if x.unit != ZERO {
                out.terms.push(Term { coeff: t.coeff * x.unit, ..t.clone() });
            }
        }
        for t in &x.terms {
            if y.unit != ZERO {
                out.terms.push(Term { coeff: t.coeff * y.unit, ..t.clone() });
            }
        }
        for s in &x.terms {
            for t in &y.terms {
                self.mul_terms(s, t, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Repeatedly merges a vertex that is right-movable in the left word and
    /// left-movable in the right word: `å b̊ = (ab)˚ + φ(ab)·1`.
    fn mul_terms(&self, s: &Term, t: &Term, out: &mut GpElement) -> Result<(), StarError> {
        let g = &self.graph;
        let mut stack = vec![(s.word.clone(), s.letters.clone(), t.word.clone(), t.letters.clone(), s.coeff * t.coeff)];
        while let Some((mut xw, mut xl, mut yw, mut yl, coeff)) = stack.pop() {
            let rm = graphwords::right_movable(g, &xw);
            let lm = graphwords::left_movable(g, &yw);
            let hit = rm.iter().find_map(|&i| lm.iter().find(|&&j| yw[j] == xw[i]).map(|&j| (i, j)));
            let Some((i, j)) = hit else {
                xw.extend_from_slice(&yw);
                xl.extend(yl);
                if xw.is_empty() {
                    out.unit += coeff;
                } else {
                    let perm = graphwords::normal_form_permutation(g, &xw);
                    out.terms.push(Term {
                        word: perm.iter().map(|&p| xw[p]).collect(),
                        letters: perm.iter().map(|&p| xl[p].clone()).collect(),
                        coeff,
                    });
                }
                continue;
            };
            let v = xw.remove(i);
            let a = xl.remove(i);
            yw.remove(j);
            let b = yl.remove(j);
            let alg = &self.algebras[v];
            let (c, sc) = alg.center(&alg.mul(&a, &b)?);
            if sc != ZERO {
                stack.push((xw.clone(), xl.clone(), yw.clone(), yl.clone(), coeff * sc));
            }
            if !c.is_zero() {
                xw.push(v);
                xl.push(c);
                stack.push((xw, xl, yw, yl, coeff));
            }
        }
        Ok(())
    }

    pub fn adjoint(&self, e: &GpElement) -> GpElement {
        let terms = e
            .terms
            .iter()
            .map(|t| Term {
                word: t.word.iter().rev().copied().collect(),
                letters: t.word.iter().zip(&t.letters).rev().map(|(v, a)| self.algebras[*v].adjoint(a)).collect(),
                coeff: t.coeff.conj(),
            })
            .collect();
        self.normalize(GpElement { unit: e.unit.conj(), terms })
    }

    /// The graph product state: the unit coefficient, since every term is a
    /// reduced word of centered letters.
    pub fn vacuum_state(&self, e: &GpElement) -> C64 {
        e.unit
    }

    /// Expands letters over the kernel bases and merges equal keys.
    pub fn canonical(&self, e: &GpElement) -> Canonical {
        let mut out = Canonical { unit: e.unit, coeffs: BTreeMap::new() };
        for t in &e.terms {
            let coords: Vec<Vec<C64>> =
                t.word.iter().zip(&t.letters).map(|(v, a)| self.algebras[*v].kernel_coords(a)).collect();
            let mut idx = vec![0usize; coords.len()];
            'multi: loop {
                let mut c = t.coeff;
                for (k, &i) in idx.iter().enumerate() {
                    c *= coords[k][i];
                }
                if c != ZERO {
                    *out.coeffs.entry((t.word.clone(), idx.clone())).or_insert(ZERO) += c;
                }
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < coords[k].len() {
                        continue 'multi;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        let scale = out.coeffs.values().map(|z| z.norm()).fold(out.unit.norm(), f64::max);
        out.coeffs.retain(|_, z| z.norm() > 1e-14 * scale);
        out
    }

    /// Rebuilds an element from its canonical expansion.
    pub fn from_canonical(&self, c: &Canonical) -> GpElement {
        let terms = c
            .coeffs
            .iter()
            .map(|((word, idx), z)| Term {
                word: word.clone(),
                letters: word.iter().zip(idx).map(|(v, &i)| self.algebras[*v].kernel_basis()[i].clone()).collect(),
                coeff: *z,
            })
            .collect();
        GpElement { unit: c.unit, terms }
    }

    pub fn dist(&self, a: &GpElement, b: &GpElement) -> f64 {
        self.canonical(a).dist(&self.canonical(b))
    }
}
