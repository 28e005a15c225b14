use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::graphwords::{self, SimplicialGraph, Vertex};
use crate::staralg::{AElem, GpElement, GraphProductAlgebra, Term};
use crate::mathcore::{ONE, ZERO};

/// A reduced word whose letters are identified by id (distinct ids are
/// distinct algebra elements).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OpWord {
    pub word: Vec<Vertex>,
    pub ids: Vec<usize>,
}

impl OpWord {
    pub fn unit() -> Self {
        Self { word: Vec::new(), ids: Vec::new() }
    }

    fn normalized(g: &SimplicialGraph, word: Vec<Vertex>, ids: Vec<usize>) -> Self {
        let perm = graphwords::normal_form_permutation(g, &word);
        Self { word: perm.iter().map(|&p| word[p]).collect(), ids: perm.iter().map(|&p| ids[p]).collect() }
    }

    fn without(&self, g: &SimplicialGraph, p: usize) -> Self {
        let mut word = self.word.clone();
        let mut ids = self.ids.clone();
        word.remove(p);
        ids.remove(p);
        Self::normalized(g, word, ids)
    }

    /// Deletions of a left- or right-movable letter.
    pub fn truncations(&self, g: &SimplicialGraph) -> BTreeSet<OpWord> {
        let mut pos: BTreeSet<usize> = graphwords::left_movable(g, &self.word).into_iter().collect();
        pos.extend(graphwords::right_movable(g, &self.word));
        pos.into_iter().map(|p| self.without(g, p)).collect()
    }
}

/// Truncation closure at the operator level. `None` once it exceeds `cap`.
pub fn op_closure(g: &SimplicialGraph, seeds: &[OpWord], cap: usize) -> Option<Vec<OpWord>> {
    let mut seen: BTreeSet<OpWord> = BTreeSet::new();
    seen.insert(OpWord::unit());
    let mut stack: Vec<OpWord> = seeds.iter().map(|s| OpWord::normalized(g, s.word.clone(), s.ids.clone())).collect();
    while let Some(w) = stack.pop() {
        if seen.insert(w.clone()) {
            if seen.len() > cap {
                return None;
            }
            stack.extend(w.truncations(g));
        }
    }
    let mut out: Vec<OpWord> = seen.into_iter().collect();
    out.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.cmp(b)));
    Some(out)
}

/// A complete set of reduced operator words. The first element is the unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordFamily {
    pub elements: Vec<GpElement>,
    pub labels: Vec<String>,
}

/// Parameters for [`random_family`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub max_seeds: usize,
    pub max_len: usize,
    pub max_words: usize,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        Self { max_seeds: 3, max_len: 5, max_words: 30 }
    }
}

/// If `e` is a single reduced term with coefficient one, its word and letters.
fn as_single(e: &GpElement) -> Option<(&[Vertex], &[AElem])> {
    if e.unit == ZERO && e.terms.len() == 1 && e.terms[0].coeff == ONE {
        Some((&e.terms[0].word, &e.terms[0].letters))
    } else {
        None
    }
}

impl WordFamily {
    pub fn unit_only() -> Self {
        Self { elements: vec![GpElement::one()], labels: vec!["()".into()] }
    }

    pub fn from_op_words(
        product: &GraphProductAlgebra,
        letters: &[(Vertex, AElem)],
        words: &[OpWord],
    ) -> Result<Self, VerifyError> {
        let mut elements = Vec::with_capacity(words.len());
        let mut labels = Vec::with_capacity(words.len());
        for w in words {
            if w.word.is_empty() {
                elements.push(GpElement::one());
                labels.push("()".into());
                continue;
            }
            for (&v, &id) in w.word.iter().zip(&w.ids) {
                if letters.get(id).map(|l| l.0) != Some(v) {
                    return Err(VerifyError::InvalidFamily(format!("letter id {id} is not at vertex {v}")));
                }
            }
            let ls: Vec<AElem> = w.ids.iter().map(|&id| letters[id].1.clone()).collect();
            elements.push(product.reduced_word(&w.word, &ls)?);
            let parts: Vec<String> = w.word.iter().zip(&w.ids).map(|(v, id)| format!("{v}:{id}")).collect();
            labels.push(format!("({})", parts.join(" ")));
        }
        let fam = Self { elements, labels };
        fam.validate(product)?;
        Ok(fam)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Vertex word of each element.
    pub fn words(&self) -> Vec<Vec<Vertex>> {
        self.elements.iter().map(|e| e.terms.first().map(|t| t.word.clone()).unwrap_or_default()).collect()
    }

    /// Indices of the single-letter elements.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| as_single(&self.elements[i]).is_some_and(|(w, _)| w.len() == 1)).collect()
    }

    /// Index of the member equal to `e` (exact letters, coefficient one).
    pub fn find(&self, e: &GpElement) -> Option<usize> {
        if e.terms.is_empty() {
            return (e.unit == ONE).then_some(0);
        }
        let (w, ls) = as_single(e)?;
        self.elements.iter().position(|x| as_single(x).is_some_and(|(xw, xl)| xw == w && xl == ls))
    }

    /// Checks the unit comes first, members are single reduced terms, and the
    /// set is closed under truncation.
    pub fn validate(&self, product: &GraphProductAlgebra) -> Result<(), VerifyError> {
        if self.elements.first() != Some(&GpElement::one()) {
            return Err(VerifyError::InvalidFamily("first element must be the unit".into()));
        }
        if self.labels.len() != self.elements.len() {
            return Err(VerifyError::InvalidFamily("one label per element required".into()));
        }
        let g = &product.graph;
        for e in &self.elements[1..] {
            product.check(e)?;
            let (w, ls) = as_single(e)
                .ok_or_else(|| VerifyError::InvalidFamily("members must be single reduced words".into()))?;
            let mut pos: BTreeSet<usize> = graphwords::left_movable(g, w).into_iter().collect();
            pos.extend(graphwords::right_movable(g, w));
            for p in pos {
                let mut tw = w.to_vec();
                let mut tl = ls.to_vec();
                tw.remove(p);
                tl.remove(p);
                let perm = graphwords::normal_form_permutation(g, &tw);
                let t = GpElement {
                    unit: if tw.is_empty() { ONE } else { ZERO },
                    terms: if tw.is_empty() {
                        Vec::new()
                    } else {
                        vec![Term {
                            word: perm.iter().map(|&i| tw[i]).collect(),
                            letters: perm.iter().map(|&i| tl[i].clone()).collect(),
                            coeff: ONE,
                        }]
                    },
                };
                if self.find(&t).is_none() {
                    return Err(VerifyError::InvalidFamily(format!(
                        "not complete: a truncation of {} is missing",
                        graphwords::format_word(w)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Random reduced word of length at most `max_len` over vertices with a
/// nontrivial centered part.
pub fn random_reduced_word<R: Rng + ?Sized>(
    g: &SimplicialGraph,
    usable: &[Vertex],
    max_len: usize,
    rng: &mut R,
) -> Vec<Vertex> {
    if usable.is_empty() || max_len == 0 {
        return Vec::new();
    }
    loop {
        let len = rng.gen_range(1..=max_len);
        let raw: Vec<Vertex> = (0..len).map(|_| usable[rng.gen_range(0..usable.len())]).collect();
        let w = graphwords::reduce(g, &raw).into_vec();
        if !w.is_empty() {
            return w;
        }
    }
}

/// Closure of up to `max_seeds` random reduced words with fresh random
/// centered letters, retried with shorter seeds until it has at most
/// `max_words` members.
pub fn random_family<R: Rng + ?Sized>(
    product: &GraphProductAlgebra,
    cfg: &FamilyConfig,
    rng: &mut R,
) -> Result<WordFamily, VerifyError> {
    let g = &product.graph;
    let usable: Vec<Vertex> =
        (0..g.n_vertices()).filter(|&v| !product.algebras[v].kernel_basis().is_empty()).collect();
    let mut max_len = cfg.max_len;
    loop {
        let n_seeds = rng.gen_range(1..=cfg.max_seeds.max(1));
        let mut letters: Vec<(Vertex, AElem)> = Vec::new();
        let mut seeds = Vec::new();
        for _ in 0..n_seeds {
            let word = random_reduced_word(g, &usable, max_len, rng);
            let ids: Vec<usize> = word
                .iter()
                .map(|&v| {
                    letters.push((v, product.algebras[v].random_centered(rng)));
                    letters.len() - 1
                })
                .collect();
            seeds.push(OpWord { word, ids });
        }
        if let Some(words) = op_closure(g, &seeds, cfg.max_words) {
            return WordFamily::from_op_words(product, &letters, &words);
        }
        if rng.gen_bool(0.5) && max_len > 1 {
            max_len -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::staralg::VertexAlgebra;

    #[test]
    fn closure_of_free_word() {
        let g = SimplicialGraph::edgeless(2).unwrap();
        let seed = OpWord { word: vec![0, 1, 0], ids: vec![0, 1, 2] };
        let x = op_closure(&g, &[seed], 100).unwrap();
        // (), (0), (1), (0'), (0 1), (1 0'), (0 1 0')
        assert_eq!(x.len(), 7);
        assert_eq!(x[0], OpWord::unit());
    }

    #[test]
    fn random_family_is_complete_and_capped() {
        let g = SimplicialGraph::path(4).unwrap();
        let product = GraphProductAlgebra::new(g, vec![VertexAlgebra::matrix_tracial(2); 4]).unwrap();
        let mut rng = seeded(11);
        for _ in 0..20 {
            let fam = random_family(&product, &FamilyConfig::default(), &mut rng).unwrap();
            assert!(fam.len() <= 30);
            fam.validate(&product).unwrap();
            for i in fam.generators() {
                assert_eq!(fam.words()[i].len(), 1);
            }
        }
    }

    #[test]
    fn incomplete_family_rejected() {
        let g = SimplicialGraph::edgeless(2).unwrap();
        let product = GraphProductAlgebra::new(g, vec![VertexAlgebra::matrix_tracial(2); 2]).unwrap();
        let mut rng = seeded(1);
        let a = product.algebras[0].random_centered(&mut rng);
        let b = product.algebras[1].random_centered(&mut rng);
        let fam = WordFamily {
            elements: vec![GpElement::one(), product.reduced_word(&[0, 1], &[a, b]).unwrap()],
            labels: vec!["()".into(), "(0 1)".into()],
        };
        assert!(fam.validate(&product).is_err());
    }
}
