//! Gram matrices over complete sets, the concatenation Stinespring space,
//! and check suites for positivity, Schwarz-type inequalities and the
//! cross-term factorizations.

mod concat;
mod degenerate;
mod family;
mod lemmas;
pub mod suite;

pub use concat::{
    build_concat_space, check_compression, check_lx_bound, concat_targets, generator_chains, gram, gram_of,
    letter_norm, psd_slack, CompressionVerdict, ConcatSpace, GramReport, GramSummary, LxVerdict, Shift,
};
pub use degenerate::{
    complete_graph_order_residual, free_cross_check, free_product_gram, single_vertex_check, FreeCrossCheck,
    SingleVertexCheck,
};
pub use family::{op_closure, random_family, random_reduced_word, FamilyConfig, OpWord, WordFamily};
pub use lemmas::{
    check_lemma_x1, check_lemma_y1, check_schwarz, check_techlem, check_y1_square, random_schwarz_pairs,
    random_tech_instance, random_x1_instance, random_y1_instance, random_y1_square_instance, EqualityVerdict,
    InequalityVerdict, Piece, StdPieces, TechInstance, X1Instance, Y1Instance, Y1SquareInstance,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphwords::WordError;
use crate::mathcore::MathError;
use crate::staralg::StarError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("Gram matrix is not PSD (min eigenvalue {min_eig:.3e})")]
    GramNotPsd { min_eig: f64 },
    #[error("pair not in the family: {0}")]
    PairNotInX(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("no concatenation operator for member {0}")]
    MissingGenerator(usize),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// All numerical tolerances in one place.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative PSD tolerance: `λ_min ≥ −psd·(1+λ_max)`.
    pub psd: f64,
    /// Eigenvalues below `rank_cut·λ_max` span the null space.
    pub rank_cut: f64,
    pub well_defined: f64,
    pub lx_bound: f64,
    pub compression: f64,
    pub equality: f64,
    pub degeneration: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            psd: 1e-8,
            rank_cut: 1e-10,
            well_defined: 1e-8,
            lx_bound: 1e-7,
            compression: 1e-8,
            equality: 1e-9,
            degeneration: 1e-10,
        }
    }
}
