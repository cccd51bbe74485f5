//! Combinatorial spectral sequence engine over the integers.
//!
//! The crate computes spectral sequences of finitely filtered cochain
//! complexes, the skeletal-filtration spectral sequence of a triangulated
//! space for ordinary cohomology and for complex K-theory, dual block
//! decompositions of closed triangulated manifolds, and dual cochains of
//! subcomplexes together with a verification harness comparing them with an
//! intersection-theoretic pushforward.
//!
//! All arithmetic is exact; groups are reported in invariant-factor form.

pub mod abgroup;

pub use abgroup::{FGAbGroup, IntMatrix};
