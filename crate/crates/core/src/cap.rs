//! Secant algebra, cap and completeness predicates, vertex sets, and the
//! Plotkin double.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Dim, Point, PointSet, Subspace};

/// Pair count above which `oplus` splits its outer loop across threads.
const PAR_PAIRS: usize = 1 << 22;

/// `X ⊕ Y = {x + y : x in X, y in Y, x != y}`.
pub fn oplus(x: &PointSet, y: &PointSet) -> PointSet {
    assert_eq!(x.dim(), y.dim(), "oplus across ambient spaces");
    let dim = x.dim();
    let xs = x.masks();
    let ys = y.masks();
    let kernel = |chunk: &[u32]| {
        let mut out = PointSet::empty(dim);
        for &a in chunk {
            for &b in &ys {
                if a != b {
                    out.insert_mask(a ^ b);
                }
            }
        }
        out
    };
    if xs.len().saturating_mul(ys.len()) < PAR_PAIRS {
        return kernel(&xs);
    }
    let chunk = (xs.len() / rayon::current_num_threads().max(1) / 4).max(64);
    xs.par_chunks(chunk).map(kernel).reduce(
        || PointSet::empty(dim),
        |mut a, b| {
            a.union_with(&b);
            a
        },
    )
}

/// All sums of two distinct points of `s`: the points on secants of `s`
/// other than the points of `s` themselves (when `s` is a cap).
pub fn secants(s: &PointSet) -> PointSet {
    let dim = s.dim();
    let xs = s.masks();
    let kernel = |range: std::ops::Range<usize>| {
        let mut out = PointSet::empty(dim);
        for i in range {
            let a = xs[i];
            for &b in &xs[i + 1..] {
                out.insert_mask(a ^ b);
            }
        }
        out
    };
    let n = xs.len();
    if n * n / 2 < PAR_PAIRS {
        return kernel(0..n);
    }
    // Triangular loop: interleave rows so every shard gets similar work.
    let shards = (rayon::current_num_threads() * 4).max(1);
    (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut out = PointSet::empty(dim);
            let mut i = k;
            while i < n {
                let a = xs[i];
                for &b in &xs[i + 1..] {
                    out.insert_mask(a ^ b);
                }
                i += shards;
            }
            out
        })
        .reduce(
            || PointSet::empty(dim),
            |mut a, b| {
                a.union_with(&b);
                a
            },
        )
}

/// Some line fully contained in `s`, if any.
pub fn find_collinear_triple(s: &PointSet) -> Option<(Point, Point, Point)> {
    let xs = s.masks();
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[i + 1..] {
            let c = a ^ b;
            if c > b && s.contains_mask(c) {
                return Some((
                    Point::new(a).ok()?,
                    Point::new(b).ok()?,
                    Point::new(c).ok()?,
                ));
            }
        }
    }
    None
}

/// No three points of `s` are collinear.
pub fn is_cap(s: &PointSet) -> bool {
    find_collinear_triple(s).is_none()
}

/// Completeness verdict for a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub is_cap: bool,
    /// `E = Σ \ (S ∪ (S ⊕ S))`: points on no secant.
    pub uncovered: PointSet,
    pub is_complete: bool,
}

pub fn completeness(s: &PointSet) -> CompletenessReport {
    let sec = secants(s);
    let is_cap = sec.is_disjoint(s);
    let uncovered = sec.union(s).complement();
    let is_complete = is_cap && uncovered.is_empty();
    CompletenessReport {
        is_cap,
        uncovered,
        is_complete,
    }
}

pub fn is_complete_cap(s: &PointSet) -> bool {
    completeness(s).is_complete
}

/// All points `v` with `v + X = X`. For empty `X` every point qualifies.
pub fn vertices(x: &PointSet) -> PointSet {
    let dim = x.dim();
    let Some(x0) = x.first() else {
        return PointSet::full(dim);
    };
    let mut out = PointSet::empty(dim);
    if x.len() % 2 == 1 {
        return out;
    }
    for y in x.iter() {
        if y == x0 {
            continue;
        }
        let v = Point::new(x0.mask() ^ y.mask()).expect("distinct");
        if !out.contains(v) && x.is_fixed_by(v) {
            out.insert(v);
        }
    }
    out
}

/// The vertex set of `X`, which is always a flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub points: PointSet,
    pub flat: Subspace,
    /// Set when `X` is empty and every point is vacuously a vertex.
    pub degenerate: bool,
}

impl VertexSet {
    pub fn is_periodic(&self) -> bool {
        !self.points.is_empty()
    }
}

pub fn vertex_set(x: &PointSet) -> VertexSet {
    let points = vertices(x);
    let flat = Subspace::span_points(x.dim(), points.iter());
    assert_eq!(
        flat.len(),
        points.len(),
        "vertex set is not closed under addition"
    );
    VertexSet {
        points,
        flat,
        degenerate: x.is_empty(),
    }
}

pub fn is_periodic(x: &PointSet) -> bool {
    vertex_set(x).is_periodic()
}

/// Plotkin double `X ⊔ (v + X)`.
///
/// `x` lives in PG(n,2), embedded in PG(n+1,2) as the coordinate hyperplane
/// `x_{n+1} = 0`; `v` must be a point of PG(n+1,2) off that hyperplane.
pub fn plotkin_double(x: &PointSet, v: Point) -> Result<PointSet> {
    let up = x.dim().succ()?;
    let top = 1u32 << up.n();
    if v.mask() & top == 0 || !up.contains_mask(v.mask()) {
        return Err(Error::VertexInBase(v));
    }
    let mut out = x.lift(up)?;
    for p in x.iter() {
        out.insert_mask(p.mask() ^ v.mask());
    }
    Ok(out)
}

/// Removes coordinate `bit` from a mask.
#[inline]
pub(crate) fn squeeze_bit(m: u32, bit: u32) -> u32 {
    let low = m & ((1u32 << bit) - 1);
    let high = (m >> (bit + 1)) << bit;
    low | high
}

/// Inserts a zero coordinate at position `bit`.
#[cfg(test)]
fn spread_bit(m: u32, bit: u32) -> u32 {
    let low = m & ((1u32 << bit) - 1);
    let high = (m >> bit) << (bit + 1);
    low | high
}

/// Result of splitting a periodic set along one of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Undoubled {
    /// Normal of the hyperplane `Σ'` not containing the vertex.
    pub normal: Point,
    /// `S ∩ Σ'` inside the original ambient space.
    pub section: PointSet,
    /// The section in coordinates of `Σ' ≅ PG(n-1,2)`.
    pub projected: PointSet,
}

/// Inverse of the Plotkin double: `S ∩ Σ'` for the hyperplane `Σ'` with the
/// smallest normal mask among those avoiding `v`. That normal is the single
/// coordinate at the lowest index of `v`.
pub fn undouble(s: &PointSet, v: Point) -> Result<Undoubled> {
    if !s.is_fixed_by(v) {
        return Err(Error::NotAVertex(v));
    }
    let bit = v.lowest_index();
    let normal = Point::new(1 << bit)?;
    let section = s.filter(|p| p.mask() & (1 << bit) == 0);
    let down = Dim::new(s.dim().n() - 1)?;
    let projected = PointSet::from_masks(down, section.iter().map(|p| squeeze_bit(p.mask(), bit)))?;
    Ok(Undoubled {
        normal,
        section,
        projected,
    })
}

/// Vertex set of a hyperplane section `S ∩ L` of a complete cap, together
/// with the check that each such vertex is a vertex of `S` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionVertices {
    pub section: PointSet,
    pub vertices: VertexSet,
    /// Every vertex of the section fixes `S`. Vacuous when the section is
    /// empty.
    pub inherited: bool,
}

pub fn periodic_section_vertex_check(s: &PointSet, l: &Subspace) -> Result<SectionVertices> {
    if l.hyperplane_normal().is_none() {
        return Err(Error::InvalidFrame("L must be a hyperplane".into()));
    }
    if !is_complete_cap(s) {
        return Err(Error::NotComplete);
    }
    let section = s.filter(|p| l.contains(p));
    let vertices = vertex_set(&section);
    let inherited = vertices.degenerate || vertices.points.iter().all(|v| s.is_fixed_by(v));
    Ok(SectionVertices {
        section,
        vertices,
        inherited,
    })
}

/// Number of points of `s` on the hyperplane with normal `u`.
pub fn hyperplane_meet(s: &PointSet, u: Point) -> usize {
    s.iter().filter(|p| !p.dot(u)).count()
}

/// Some hyperplane meeting `s` in exactly one point.
pub fn tangent_hyperplane(s: &PointSet) -> Option<Point> {
    s.dim().points().find(|&u| hyperplane_meet(s, u) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dim {
        Dim::new(n).unwrap()
    }

    fn set(n: u32, items: &[&str]) -> PointSet {
        PointSet::from_digit_strs(dim(n), items).unwrap()
    }

    #[test]
    fn oplus_examples() {
        let a = set(4, &["0"]);
        assert!(oplus(&a, &a).is_empty());
        let c = set(4, &["04", "14", "24", "34"]);
        assert_eq!(oplus(&c, &c), set(4, &["01", "02", "03", "12", "13", "23"]));
    }

    #[test]
    fn cap_examples() {
        assert!(!is_cap(&set(4, &["4", "04", "0"])));
        let d = dim(4);
        let kc = Subspace::orthogonal_hyperplane(Point::new(0b11000).unwrap(), d);
        let s = kc.members().complement();
        assert!(is_cap(&s));
        assert!(completeness(&s).is_complete);
    }

    #[test]
    fn vertex_examples() {
        let a = set(5, &["4", "04", "14", "014", "24", "024", "34", "034"]);
        let vs = vertex_set(&a);
        assert_eq!(vs.points, set(5, &["0"]));
        let a = set(5, &["4", "04", "14", "24", "34", "01234", "0134", "0234"]);
        assert!(!vertex_set(&a).is_periodic());
        let e = vertex_set(&PointSet::empty(dim(3)));
        assert!(e.degenerate);
        assert_eq!(e.points.len(), 15);
    }

    #[test]
    fn double_and_undouble() {
        let x = set(3, &["0", "1", "2", "3", "0123"]);
        assert!(is_complete_cap(&x));
        let v = Point::new(1 << 4).unwrap();
        let y = plotkin_double(&x, v).unwrap();
        assert_eq!(y.len(), 10);
        assert!(is_complete_cap(&y));
        assert!(vertex_set(&y).points.contains(v));
        let u = undouble(&y, v).unwrap();
        assert_eq!(u.projected, x);
        assert!(plotkin_double(&x, Point::new(3).unwrap()).is_err());
        assert_eq!(
            undouble(&x, Point::new(1).unwrap()),
            Err(Error::NotAVertex(Point::new(1).unwrap()))
        );
    }

    #[test]
    fn squeeze_spread_roundtrip() {
        for m in 0..256u32 {
            for b in 0..8 {
                if m & (1 << b) == 0 {
                    assert_eq!(spread_bit(squeeze_bit(m, b), b), m);
                }
            }
        }
    }

    #[test]
    fn secant_set_parallel_path_agrees() {
        let d = dim(12);
        let s = PointSet::from_masks(d, (1..4000u32).filter(|m| m % 3 == 1)).unwrap();
        let direct = {
            let xs = s.masks();
            let mut out = PointSet::empty(d);
            for (i, &a) in xs.iter().enumerate() {
                for &b in &xs[i + 1..] {
                    out.insert_mask(a ^ b);
                }
            }
            out
        };
        assert_eq!(secants(&s), direct);
        assert_eq!(oplus(&s, &s), direct);
    }
}
