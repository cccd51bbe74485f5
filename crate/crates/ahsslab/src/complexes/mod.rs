//! Simplicial complexes, chain/cochain complexes with coefficients,
//! barycentric subdivision, orientations and dual block decompositions.

pub mod chain;
pub mod dual;
pub mod generators;
pub mod orientation;
pub mod simplicial;
pub mod simplify;
pub mod subdivision;

pub use chain::{
    analyze_boundaries, boundary_of, coboundary_of, cohomology, cohomology_basis, homology_basis,
    pair_scalar, BoundaryAnalysis, CellHomologyBasis, ChainComplexData, Cochain,
};
pub use dual::{dual_block_decomposition, DualComplex, DualityError};
pub use orientation::{fundamental_cycle, FundamentalClass};
pub use simplicial::{ComplexError, SimplicialComplex, Subcomplex};
pub use simplify::simplify;
pub use subdivision::{barycentric_subdivision, Subdivision};

use crate::abgroup::FGAbGroup;

/// Restrict a cochain to the cells of a subcomplex (coordinate projection).
pub fn restrict_to_subcomplex(c: &Cochain, sub: &Subcomplex) -> Cochain {
    let d = c.degree;
    let w = c.coeff.num_generators();
    let n = sub.complex.n_cells(d);
    let mut out = Cochain::zero(n, d, c.coeff.clone());
    for i in 0..n {
        let parent = sub.parent_index[d][i];
        out.values[i * w..(i + 1) * w].clone_from_slice(c.value(parent));
    }
    out
}

/// Restrict a cochain to a skeleton: degrees above `p` become empty cochain
/// groups, degrees at or below are unchanged.
pub fn restrict_to_skeleton(c: &Cochain, p: usize) -> Cochain {
    if c.degree > p {
        Cochain::zero(0, c.degree, c.coeff.clone())
    } else {
        c.clone()
    }
}

/// `H^p(X; G)` for a simplicial complex (sparse route, group only).
pub fn simplicial_cohomology(x: &SimplicialComplex, coeff: &FGAbGroup, p: usize) -> FGAbGroup {
    cohomology(&x.chain_complex(), coeff, p)
}
