//! Points, point sets, flats, cosets and quotients of PG(n,2).
//!
//! Points are coordinate bitmasks in a single `u32`; every computation in
//! the crate reduces to XOR and popcount on these masks.

mod point;
mod pointset;
mod subspace;

pub use point::{
    format_point, is_collinear, parse_point, point_add, Dim, Point, PointFormat, MAX_DIM,
};
pub use pointset::{Iter, PointSet};
pub use subspace::{
    cosets_of, orthogonal_hyperplane, quotient_map, span, Coset, QuotientMap, Subspace,
};
