//! Complete caps in binary projective space PG(n,2).
//!
//! The crate is layered bottom-up:
//!
//! - [`geom`]: point arithmetic, bitset point sets, flats, cosets, quotients.
//! - [`cap`]: secant algebra, cap and completeness tests, vertex sets and
//!   Plotkin doubling.
//! - [`slices`]: decomposition of a cap against a codimension-2 subspace it
//!   misses, the coset equations and their solution families.
//! - [`construct`]: explicit families of complete caps (tangent caps, the
//!   coset-pair family, partition caps, four-point slices).
//! - [`search`]: brute-force oracles used to cross-check everything above.
//! - [`catalog`]: worked configurations with known properties.

pub mod cap;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod geom;
pub mod search;
pub mod slices;

pub use cap::{completeness, is_cap, oplus, CompletenessReport, VertexSet};
pub use error::{Error, Result};
pub use geom::{Coset, Dim, Point, PointFormat, PointSet, QuotientMap, Subspace};
pub use slices::{PairClass, SliceDecomposition, SliceFrame};
