use rayon::prelude::*;

use crate::cap::{completeness, is_periodic};
use crate::error::{Error, Result};
use crate::geom::{span, Dim, Point, PointSet};
use crate::slices::{enumerate_pair_solutions, PairGeometry, SliceFrame};

/// Largest ambient dimension for the unconstrained search.
pub const MAX_EXHAUSTIVE_N: u32 = 4;
/// Largest number of pair-solution combinations the structured search tries.
pub const STRUCTURED_BUDGET: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every cap, by depth-first extension in ascending mask order.
    Exhaustive,
    /// Fixed frame and slice `C`; combinations of coset-pair solutions.
    Structured,
}

/// Filters applied to enumerated complete caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConstraints {
    pub dim: Dim,
    pub mode: SearchMode,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    /// Some hyperplane meets the cap in exactly this many points and
    /// contains a codimension-2 subspace missing the cap.
    pub slice_size: Option<usize>,
    /// Projective dimension of the span of that slice.
    pub slice_span: Option<i32>,
    pub periodic: Option<bool>,
    /// `|S| >= 2^{n-1} + 1`.
    pub large: Option<bool>,
}

impl SearchConstraints {
    pub fn new(dim: Dim) -> Self {
        SearchConstraints {
            dim,
            mode: SearchMode::Exhaustive,
            min_size: None,
            max_size: None,
            slice_size: None,
            slice_span: None,
            periodic: None,
            large: None,
        }
    }

    pub fn structured(dim: Dim, slice_size: usize) -> Self {
        SearchConstraints {
            mode: SearchMode::Structured,
            slice_size: Some(slice_size),
            ..Self::new(dim)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(lo), Some(hi)) = (self.min_size, self.max_size) {
            if lo > hi {
                return Err(Error::Precondition(format!("size bounds {lo} > {hi}")));
            }
        }
        if self.slice_span.is_some() && self.slice_size.is_none() {
            return Err(Error::Precondition(
                "a slice span needs a slice size".into(),
            ));
        }
        Ok(())
    }

    /// Every filter except the slice, which each mode handles itself.
    fn accepts_basic(&self, s: &PointSet) -> bool {
        let len = s.len();
        let large = len > 1 << (self.dim.n() - 1);
        self.min_size.is_none_or(|m| len >= m)
            && self.max_size.is_none_or(|m| len <= m)
            && self.large.is_none_or(|want| want == large)
            && self.periodic.is_none_or(|want| want == is_periodic(s))
    }

    fn accepts_slice(&self, s: &PointSet) -> bool {
        match self.slice_size {
            None => true,
            Some(size) => has_slice(s, size, self.slice_span),
        }
    }
}

/// Whether some hyperplane meets `s` in exactly `size` points (spanning a
/// flat of dimension `span_dim`, if given) and contains a codimension-2
/// subspace disjoint from `s`.
pub fn has_slice(s: &PointSet, size: usize, span_dim: Option<i32>) -> bool {
    let dim = s.dim();
    dim.points().any(|normal| {
        let c = s.filter(|p| !p.dot(normal));
        if c.len() != size {
            return false;
        }
        if let Some(d) = span_dim {
            if span(&c).proj_dim() != d {
                return false;
            }
        }
        // A codim-2 subspace of (normal)^⊥ missing c.
        dim.points()
            .any(|w| w != normal && c.iter().all(|p| p.dot(w)))
    })
}

/// Bitset over at most 63 points, bit `mask - 1`.
type Bits = u64;

fn bit(m: u32) -> Bits {
    1 << (m - 1)
}

struct Dfs {
    total: u32,
    all: Bits,
}

impl Dfs {
    /// Complete caps whose smallest point is `first`.
    fn caps_starting_at(&self, first: u32) -> Vec<Bits> {
        let mut out = Vec::new();
        let pts = [first];
        self.extend(bit(first), 0, first, &pts, &mut out);
        out
    }

    fn extend(&self, s: Bits, blocked: Bits, max: u32, pts: &[u32], out: &mut Vec<Bits>) {
        if (s | blocked) == self.all {
            out.push(s);
            return;
        }
        let free_above = |q: u32| q > max && (s | blocked) & bit(q) == 0;
        // Points at or below max that are outside the cap and on no secant
        // can only be covered by a future point q with p + q available.
        let low_mask = if max >= 64 {
            self.all
        } else {
            (1u64 << max) - 1
        };
        let mut pending = !(s | blocked) & low_mask & self.all;
        while pending != 0 {
            let p = pending.trailing_zeros() + 1;
            pending &= pending - 1;
            let coverable = (max + 1..=self.total).any(|q| {
                free_above(q) && {
                    let o = p ^ q;
                    s & bit(o) != 0 || free_above(o)
                }
            });
            if !coverable {
                return;
            }
        }
        for q in max + 1..=self.total {
            if !free_above(q) {
                continue;
            }
            let mut nb = blocked;
            for &x in pts {
                nb |= bit(x ^ q);
            }
            let mut next = pts.to_vec();
            next.push(q);
            self.extend(s | bit(q), nb, q, &next, out);
        }
    }
}

/// Every complete cap of PG(n,2), `n <= 4`, sorted by point list.
pub fn all_complete_caps(dim: Dim) -> Result<Vec<PointSet>> {
    let n = dim.n();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::ScaleRefused(format!(
            "unconstrained search in PG({n},2) ranges over subsets of {} points; \
             every subset of an affine part alone gives 2^{} caps",
            dim.num_points(),
            1u64 << n
        )));
    }
    let total = dim.full_mask();
    let dfs = Dfs {
        total,
        all: (1u64 << total) - 1,
    };
    let shards: Vec<Vec<Bits>> = (1..=total)
        .into_par_iter()
        .map(|first| dfs.caps_starting_at(first))
        .collect();
    let mut out: Vec<PointSet> = shards
        .into_iter()
        .flatten()
        .map(|b| bits_to_set(dim, b))
        .collect();
    out.sort();
    Ok(out)
}

fn bits_to_set(dim: Dim, mut b: Bits) -> PointSet {
    let mut s = PointSet::empty(dim);
    while b != 0 {
        let m = b.trailing_zeros() + 1;
        b &= b - 1;
        s.insert(Point::new(m).expect("nonzero"));
    }
    s
}

/// A standard frame and slice `C` of the given size, canonical up to
/// collineations fixing the frame. Four points are taken non-planar unless
/// `span_dim = Some(2)`.
pub fn canonical_slice(
    dim: Dim,
    size: usize,
    span_dim: Option<i32>,
) -> Result<(SliceFrame, PointSet)> {
    let frame = SliceFrame::standard(dim);
    let n = dim.n();
    let c0 = 0b11u32 << (n - 1);
    let offsets: &[u32] = match (size, span_dim) {
        (1, None | Some(0)) => &[0],
        (2, None | Some(1)) => &[0, 1],
        (3, None | Some(2)) => &[1, 2, 3],
        (4, Some(2)) => &[0, 1, 2, 3],
        (4, None | Some(3)) => &[0, 1, 2, 4],
        _ => {
            return Err(Error::Precondition(format!(
                "no canonical slice of {size} points with span dimension {span_dim:?}"
            )))
        }
    };
    let h_inf_bits = (1u32 << (n - 1)) - 1;
    if offsets.iter().any(|&o| o & !h_inf_bits != 0) {
        return Err(Error::Precondition(format!(
            "PG({n},2) too small for this slice"
        )));
    }
    let c = PointSet::from_masks(dim, offsets.iter().map(|&o| c0 ^ o))?;
    Ok((frame, c))
}

/// Every complete cap `S` with `S ∩ K_C = C` and `S ∩ H∞ = ∅`, assembled
/// from one solution of the coset equations per pair. Sorted.
pub fn enumerate_structured(frame: &SliceFrame, c: &PointSet) -> Result<Vec<PointSet>> {
    let dim = frame.dim();
    let f = span(c).intersection(&frame.h_inf);
    let pairs = frame.h_a().len() >> f.rank();
    let mut menus: Vec<Vec<PointSet>> = Vec::with_capacity(pairs);
    let mut estimate = 1u128;
    for i in 0..pairs {
        let g = PairGeometry::new(frame, c, i)?;
        let sols = enumerate_pair_solutions(&g)?;
        let sets: Vec<PointSet> = sols
            .into_iter()
            .map(|s| PointSet::from_points(dim, s.a.into_iter().chain(s.b)))
            .collect::<Result<_>>()?;
        estimate = estimate.saturating_mul(sets.len() as u128);
        if estimate > STRUCTURED_BUDGET {
            return Err(Error::ScaleRefused(format!(
                "structured search over {pairs} coset pairs exceeds {STRUCTURED_BUDGET} combinations"
            )));
        }
        menus.push(sets);
    }
    let mut out = Vec::new();
    let mut cur = c.clone();
    combine(&menus, 0, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn combine(menus: &[Vec<PointSet>], i: usize, cur: &mut PointSet, out: &mut Vec<PointSet>) {
    if i == menus.len() {
        if completeness(cur).is_complete {
            out.push(cur.clone());
        }
        return;
    }
    for choice in &menus[i] {
        let mut next = cur.union(choice);
        std::mem::swap(cur, &mut next);
        combine(menus, i + 1, cur, out);
        std::mem::swap(cur, &mut next);
    }
}

/// Every complete cap satisfying the constraints.
///
/// Exhaustive mode needs `n <= 4`. Structured mode fixes the canonical
/// slice of the requested size, so it lists one representative frame
/// placement per cap shape rather than every cap.
pub fn enumerate_complete_caps(c: &SearchConstraints) -> Result<Vec<PointSet>> {
    c.validate()?;
    let found = match c.mode {
        SearchMode::Exhaustive => all_complete_caps(c.dim)?
            .into_iter()
            .filter(|s| c.accepts_slice(s))
            .collect::<Vec<_>>(),
        SearchMode::Structured => {
            let size = c.slice_size.ok_or_else(|| {
                Error::Precondition("structured search needs a slice size".into())
            })?;
            let (frame, slice) = canonical_slice(c.dim, size, c.slice_span)?;
            enumerate_structured(&frame, &slice)?
        }
    };
    Ok(found.into_iter().filter(|s| c.accepts_basic(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_caps() {
        let caps = all_complete_caps(Dim::new(2).unwrap()).unwrap();
        // Complete caps of the Fano plane are the 7 complements of lines.
        assert_eq!(caps.len(), 7);
        assert!(caps.iter().all(|s| s.len() == 4));
    }

    #[test]
    fn refuses_large_unconstrained() {
        assert!(matches!(
            all_complete_caps(Dim::new(5).unwrap()),
            Err(Error::ScaleRefused(_))
        ));
    }

    #[test]
    fn canonical_slices_have_requested_shape() {
        let dim = Dim::new(5).unwrap();
        for (size, span_dim) in [(1, 0), (2, 1), (3, 2), (4, 2), (4, 3)] {
            let (frame, c) = canonical_slice(dim, size, Some(span_dim)).unwrap();
            assert_eq!(c.len(), size);
            assert_eq!(span(&c).proj_dim(), span_dim);
            assert!(c.is_subset(&frame.h_c()));
        }
    }
}
