//! Cohomology and homology of finite categories with bimodule coefficients.
//!
//! All coefficient groups are finite `Z/4`-modules written as `⊕ Z/o_i`
//! with each `o_i ∈ {2, 4}`; an element is a vector of residues, the
//! `i`-th reduced modulo `o_i`. Linear maps between such groups are `Z/4`
//! matrices whose rows are reduced modulo the target orders.

mod bimodule;
mod category;
mod complex;
mod duality;
mod endomorphisms;
mod homology;
mod toda_h3;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use bimodule::{coefficient_map, hom, hom_tensor, Bimodule, BimoduleMorphism};
pub use category::{
    build_toda_category, diagram_functor, truncated_proj_category, truncated_proj_category_with_limit, FinCategory,
    Functor, Morphism, ProjTruncation, MORPHISM_LIMIT,
};
pub use complex::{
    bw_differential, composable_sequences, pullback_cochain, pushforward_cochain, pw_differential, random_chain,
    random_cochain, Chain, Cochain, SeqSpace, Variance, SEQUENCE_LIMIT,
};
pub use duality::{dualize_chain_complex, trace_duality, DegreeComparison, Dualization, TraceDuality};
pub use endomorphisms::{identity_endomorphisms, FAMILY_LIMIT};
pub use homology::{
    cohomology, homology, induced_map, normalized_cohomology, Cohomology, Homology, NormalizedCohomology,
};
pub use toda_h3::{h3_toda_quotient, zeta_bracket_of_cocycle, zeta_toda_bracket, TodaQuotient};

/// The ring every coefficient group is a module over.
pub const MODULUS: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("SIZE_LIMIT: {what} has {count} elements, limit {limit}")]
    SizeLimit { what: String, count: usize, limit: usize },
    #[error("COEFFS_NOT_REDUCED: coefficients do not vanish on the zero object")]
    CoeffsNotReduced,
    #[error("NOT_NATURAL: fails at morphism {morphism} and object {object}")]
    NotNatural { morphism: usize, object: usize },
    #[error("category axiom fails: {0}")]
    Axiom(String),
    #[error("not a functor: {0}")]
    NotFunctor(String),
    #[error("bimodule axiom fails: {0}")]
    NotBimodule(String),
    #[error("unsupported modulus {0}")]
    UnsupportedModulus(u32),
    #[error("coefficient orders {0:?} are not a module over the base ring")]
    BadCoefficients(Vec<u32>),
    #[error("the category has no zero object")]
    NoZeroObject,
    #[error("bad diagram: {0}")]
    BadDiagram(String),
    #[error("normalized and full cohomology are not isomorphic in degree {0}")]
    ComparisonFails(usize),
    #[error("degree {0} out of range")]
    Degree(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `x mod o_i` coordinatewise.
pub(crate) fn reduce_by(v: &mut [u32], orders: &[u32]) {
    for (x, &o) in v.iter_mut().zip(orders) {
        *x %= o;
    }
}
