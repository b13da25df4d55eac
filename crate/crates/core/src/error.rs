use thiserror::Error;

use crate::geom::Point;

/// Errors raised by the geometry, cap, slice, construction and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("projective dimension {0} outside the supported range 2..=20")]
    DimOutOfRange(u32),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("mask {mask:#x} does not fit in PG({n},2)")]
    MaskOutOfRange { mask: u32, n: u32 },
    #[error("coordinate index {index} exceeds n = {n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("malformed point text {0:?}")]
    MalformedPoint(String),
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("dimension mismatch: expected PG({expected},2), found PG({found},2)")]
    DimMismatch { expected: u32, found: u32 },
    #[error("set is not a union of cosets of the flat (point {0} has an incomplete coset)")]
    NotCosetSaturated(Point),
    #[error("flat meets the set it is supposed to partition")]
    FlatMeetsSet,
    #[error("{0} is not a vertex of the set")]
    NotAVertex(Point),
    #[error("vertex {0} lies in the base space; it must lie outside the embedded hyperplane")]
    VertexInBase(Point),
    #[error("set is not a complete cap")]
    NotComplete,
    #[error("codimension-2 subspace meets the cap in {0}")]
    FrameMeetsCap(Point),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("coset pair {pair} does not satisfy the coset equations")]
    PairUnsolved { pair: usize },
    #[error("pair index {0} out of range")]
    PairIndex(usize),
    #[error("construction precondition failed: {0}")]
    Precondition(String),
    #[error("construction hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("search refused: {0}")]
    ScaleRefused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
