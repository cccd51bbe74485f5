//! Exact linear algebra over the integers: Smith normal form, kernels,
//! images, quotients and subquotient presentations.
//!
//! Everything downstream (cohomology groups, spectral sequence pages, the
//! page differentials) reduces to the operations in this module. All values
//! are immutable after construction and all operations are pure.

mod group;
mod matrix;
pub mod presented;
mod snf;
pub mod sparse;
mod subquotient;

pub use group::FGAbGroup;
pub use matrix::IntMatrix;
pub use snf::{kernel, smith_normal_form, solve, solve_matrix, solve_with, SmithDecomposition};
pub use sparse::{sparse_invariant_factors, sparse_rank, SparseIntMatrix};
pub use subquotient::{
    cokernel, induced_hom, membership, preimage_of_span, subquotient_group, Subquotient,
    SubquotientPresentation,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbGroupError {
    /// The denominator of a subquotient is not contained in the numerator.
    #[error("denominator is not contained in the numerator lattice")]
    DenominatorNotContained,
    /// A map does not descend to the subquotients (it fails to preserve a
    /// numerator or denominator), which for page differentials signals a
    /// non-filtration-preserving map.
    #[error("map does not descend to the subquotient")]
    NotWellDefined,
}
