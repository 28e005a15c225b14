//! Vertex algebras with states, the algebraic graph product with its
//! vacuum state, and graph products `Θ` of unital completely positive maps.

mod algebra;
mod element;
mod theta;

pub use algebra::{AElem, AlgebraKind, VertexAlgebra};
pub use element::{Canonical, GpElement, GraphProductAlgebra, Term};
pub use theta::{
    apply_images, check_ucp, choda_check, cp_witness, local_images, random_choda_setup, random_density,
    random_theta, theta_eval, ChodaSetup, ChodaVerdict, ThetaConfig, ThetaSpec, ThetaSpecDoc, VertexMap,
    SPEC_SCHEMA_VERSION,
};

use thiserror::Error;

use crate::mathcore::MathError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StarError {
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid spec: {0}")]
    SpecInvalid(String),
    #[error("Laurent product of degree {degree} leaves the band ±{band}")]
    OutOfBand { degree: i64, band: i64 },
    #[error("letter at vertex {vertex} is not centered (|φ(a)| = {value:.3e})")]
    NotCentered { vertex: usize, value: f64 },
    #[error("states incompatible at vertex {vertex} (residual {residual:.3e})")]
    IncompatibleStates { vertex: usize, residual: f64 },
    #[error(transparent)]
    Math(#[from] MathError),
}
