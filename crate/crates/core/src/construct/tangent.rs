use super::{Built, Certificate, Construction};
use crate::cap::{completeness, is_cap, vertex_set, VertexSet};
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::slices::{Region, SliceFrame};

/// A tangent-hyperplane cap and the facts that decide its completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentOutcome {
    pub built: Built,
    pub a_vertices: VertexSet,
    /// Points on no secant of the cap.
    pub uncovered: PointSet,
}

/// `S = {c0} ⊔ A ⊔ B` with `B = H_B \ (c0 + A)`, the unique cap with slice
/// `A` and tangent hyperplane `K_C` at `c0` whose `A'` and `B'` points are
/// all covered through `c0`.
pub fn tangent_cap(a: &PointSet, c0: Point, frame: &SliceFrame) -> Result<TangentOutcome> {
    let dim = frame.dim();
    if a.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim.n(),
            found: a.dim().n(),
        });
    }
    if frame.region(c0) != Region::C || !dim.contains_mask(c0.mask()) {
        return Err(Error::Precondition(format!("c0 = {c0} must lie in H_C")));
    }
    let h_a = frame.h_a();
    if a.is_empty() || !a.is_subset(&h_a) || *a == h_a {
        return Err(Error::Precondition(
            "A must be a nonempty proper subset of H_A".into(),
        ));
    }
    let b = frame.h_b().difference(&a.translate(c0));
    let mut s = a.union(&b);
    s.insert(c0);
    let predicted = (1usize << (dim.n() - 1)) + 1;
    let report = completeness(&s);
    let certificate = Certificate {
        construction: Construction::Tangent,
        parameters: vec![("n", dim.n() as i64), ("a", a.len() as i64)],
        predicted_size: predicted,
        size: s.len(),
        is_cap: report.is_cap,
        is_complete: report.is_complete,
    };
    Ok(TangentOutcome {
        built: Built {
            cap: s,
            certificate,
        },
        a_vertices: vertex_set(a),
        uncovered: report.uncovered,
    })
}

/// `T = S ⊔ E` where `E` is the set of points on no secant of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub t: PointSet,
    pub added: PointSet,
    pub is_cap: bool,
    pub is_complete: bool,
}

pub fn saturate(s: &PointSet) -> Saturation {
    let added = completeness(s).uncovered;
    let t = s.union(&added);
    let is_cap = is_cap(&t);
    let is_complete = is_cap && completeness(&t).is_complete;
    Saturation {
        t,
        added,
        is_cap,
        is_complete,
    }
}
