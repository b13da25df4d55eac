use std::fmt;

use super::point::{Dim, Point};
use super::pointset::PointSet;
use crate::error::{Error, Result};

#[inline]
fn pivot(v: u32) -> u32 {
    31 - v.leading_zeros()
}

/// A projective subspace (flat) of PG(n,2), kept as a basis in reduced row
/// echelon form: every basis vector has a distinct leading bit that is clear
/// in all other basis vectors. The basis is sorted by leading bit,
/// descending, so two equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: Dim,
    basis: Vec<u32>,
}

impl Subspace {
    pub fn empty(dim: Dim) -> Self {
        Subspace {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn whole(dim: Dim) -> Self {
        Self::span_masks(dim, (0..dim.coords()).map(|i| 1u32 << i))
    }

    /// Smallest subspace containing the given (nonzero) masks.
    pub fn span_masks<I: IntoIterator<Item = u32>>(dim: Dim, masks: I) -> Self {
        let mut s = Subspace::empty(dim);
        for m in masks {
            s.extend(m);
        }
        s
    }

    pub fn span_points<I: IntoIterator<Item = Point>>(dim: Dim, points: I) -> Self {
        Self::span_masks(dim, points.into_iter().map(Point::mask))
    }

    /// Adds `v` to the spanning set; returns whether the subspace grew.
    pub fn extend(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let p = pivot(r);
        for b in &mut self.basis {
            if *b & (1 << p) != 0 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.basis
            .sort_unstable_by_key(|&a| std::cmp::Reverse(pivot(a)));
        true
    }

    #[inline]
    pub fn ambient(&self) -> Dim {
        self.dim
    }

    pub fn basis(&self) -> impl Iterator<Item = Point> + '_ {
        self.basis.iter().map(|&m| Point::from_mask_unchecked(m))
    }

    pub fn basis_masks(&self) -> &[u32] {
        &self.basis
    }

    /// Leading-bit positions of the basis, descending.
    pub fn pivots(&self) -> Vec<u32> {
        self.basis.iter().map(|&b| pivot(b)).collect()
    }

    /// Vector-space dimension, `proj_dim + 1`.
    #[inline]
    pub fn rank(&self) -> u32 {
        self.basis.len() as u32
    }

    /// Projective dimension; `-1` for the empty subspace.
    #[inline]
    pub fn proj_dim(&self) -> i32 {
        self.basis.len() as i32 - 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        (1usize << self.basis.len()) - 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical representative of `v` modulo this subspace: clears every
    /// pivot bit. Zero iff `v` lies in the subspace (or is zero).
    #[inline]
    pub fn reduce(&self, mut v: u32) -> u32 {
        for &b in &self.basis {
            if v & (1 << pivot(b)) != 0 {
                v ^= b;
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.reduce(p.mask()) == 0
    }

    #[inline]
    pub fn contains_mask(&self, m: u32) -> bool {
        m != 0 && self.reduce(m) == 0
    }

    /// All `2^rank` vectors of the subspace, zero included, in the order of
    /// their coordinate vectors with respect to the basis.
    pub fn vectors(&self) -> Vec<u32> {
        let k = self.basis.len();
        let mut out = Vec::with_capacity(1 << k);
        out.push(0u32);
        for &b in self.basis.iter().rev() {
            let cur = out.len();
            for i in 0..cur {
                out.push(out[i] ^ b);
            }
        }
        out
    }

    pub fn members(&self) -> PointSet {
        let mut s = PointSet::empty(self.dim);
        for v in self.vectors().into_iter().skip(1) {
            s.insert_mask(v);
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> {
        let mut v = self.vectors();
        v.sort_unstable();
        v.into_iter().skip(1).map(Point::from_mask_unchecked)
    }

    /// Basis of the orthogonal complement with respect to the standard form.
    pub fn dual(&self) -> Subspace {
        let pivots: Vec<u32> = self.pivots();
        let mut out = Subspace::empty(self.dim);
        for j in 0..self.dim.coords() {
            if pivots.contains(&j) {
                continue;
            }
            let mut y = 1u32 << j;
            for &b in &self.basis {
                if b & (1 << j) != 0 {
                    y |= 1 << pivot(b);
                }
            }
            out.extend(y);
        }
        out
    }

    /// `(x)^perp`, the hyperplane of points orthogonal to `x`.
    pub fn orthogonal_hyperplane(x: Point, dim: Dim) -> Subspace {
        Subspace::span_masks(dim, [x.mask()]).dual()
    }

    /// Intersection of the hyperplanes `(u)^perp` for each normal `u`.
    pub fn from_normals(dim: Dim, normals: &[Point]) -> Subspace {
        Subspace::span_points(dim, normals.iter().copied()).dual()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let mut d = self.dual();
        for &b in &other.dual().basis {
            d.extend(b);
        }
        d.dual()
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &b in &other.basis {
            s.extend(b);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.reduce(b) == 0)
    }

    pub fn meets(&self, set: &PointSet) -> Option<Point> {
        set.iter().find(|&p| self.contains(p))
    }

    /// Normal vector when this is a hyperplane.
    pub fn hyperplane_normal(&self) -> Option<Point> {
        if self.rank() + 1 != self.dim.coords() {
            return None;
        }
        self.dual().basis().next()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}, basis ", self.proj_dim())?;
        f.debug_list().entries(self.basis()).finish()?;
        write!(f, ")")
    }
}

/// A translate `representative + (flat ∪ {0})` of a flat, disjoint from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    pub representative: Point,
    pub flat: Subspace,
}

impl Coset {
    pub fn new(representative: Point, flat: Subspace) -> Result<Self> {
        if flat.contains(representative) {
            return Err(Error::FlatMeetsSet);
        }
        let r = flat.reduce(representative.mask());
        let rep = flat
            .vectors()
            .into_iter()
            .map(|f| r ^ f)
            .min()
            .expect("nonempty");
        Ok(Coset {
            representative: Point::from_mask_unchecked(rep),
            flat,
        })
    }

    pub fn len(&self) -> usize {
        1 << self.flat.rank()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: Point) -> bool {
        self.flat.reduce(p.mask() ^ self.representative.mask()) == 0
    }

    /// Members in ascending mask order.
    pub fn points(&self) -> Vec<Point> {
        let mut v: Vec<u32> = self
            .flat
            .vectors()
            .into_iter()
            .map(|f| f ^ self.representative.mask())
            .collect();
        v.sort_unstable();
        v.into_iter().map(Point::from_mask_unchecked).collect()
    }

    pub fn members(&self) -> PointSet {
        let mut s = PointSet::empty(self.flat.ambient());
        for p in self.points() {
            s.insert(p);
        }
        s
    }

    /// Canonical key shared by every member: the reduced mask.
    pub fn key(&self) -> u32 {
        self.flat.reduce(self.representative.mask())
    }
}

/// Splits `within` into cosets of `flat`, ordered by minimal representative.
pub fn cosets_of(flat: &Subspace, within: &PointSet) -> Result<Vec<Coset>> {
    if flat.meets(within).is_some() {
        return Err(Error::FlatMeetsSet);
    }
    let mut seen = PointSet::empty(within.dim());
    let mut out = Vec::new();
    let vectors = flat.vectors();
    for p in within.iter() {
        if seen.contains(p) {
            continue;
        }
        for &f in &vectors {
            let m = p.mask() ^ f;
            if !within.contains_mask(m) {
                return Err(Error::NotCosetSaturated(p));
            }
            seen.insert_mask(m);
        }
        // p is the smallest unseen point, hence the minimal member.
        out.push(Coset {
            representative: p,
            flat: flat.clone(),
        });
    }
    Ok(out)
}

/// Projection onto the quotient geometry `PG(n,2) / flat`.
///
/// Each point is reduced against the echelon basis of the flat and the
/// pivot coordinates are squeezed out, giving a point of
/// `PG(n - rank, 2)`. Points of the flat have no image.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    flat: Subspace,
    keep: Vec<u32>,
}

impl QuotientMap {
    pub fn new(flat: &Subspace) -> Self {
        let pivots = flat.pivots();
        let keep = (0..flat.ambient().coords())
            .filter(|j| !pivots.contains(j))
            .collect();
        QuotientMap {
            flat: flat.clone(),
            keep,
        }
    }

    pub fn flat(&self) -> &Subspace {
        &self.flat
    }

    /// Projective dimension of the image geometry.
    pub fn target_n(&self) -> i32 {
        self.keep.len() as i32 - 1
    }

    pub fn target_dim(&self) -> Result<Dim> {
        Dim::new(self.target_n().max(0) as u32)
    }

    /// Canonical representative in the ambient space (zero for flat points).
    #[inline]
    pub fn representative(&self, p: Point) -> u32 {
        self.flat.reduce(p.mask())
    }

    /// Compressed image mask in the quotient; zero for points of the flat.
    pub fn image_mask(&self, p: Point) -> u32 {
        let r = self.representative(p);
        let mut out = 0u32;
        for (i, &j) in self.keep.iter().enumerate() {
            if r & (1 << j) != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn image(&self, p: Point) -> Option<Point> {
        Point::new(self.image_mask(p)).ok()
    }

    /// Image of a point set; requires the quotient to be at least a plane.
    pub fn image_set(&self, set: &PointSet) -> Result<PointSet> {
        let dim = self.target_dim()?;
        let mut out = PointSet::empty(dim);
        for p in set.iter() {
            if let Some(q) = self.image(p) {
                out.insert(q);
            }
        }
        Ok(out)
    }
}

pub fn quotient_map(flat: &Subspace) -> QuotientMap {
    QuotientMap::new(flat)
}

pub fn span(set: &PointSet) -> Subspace {
    Subspace::span_points(set.dim(), set.iter())
}

pub fn orthogonal_hyperplane(x: Point, dim: Dim) -> Subspace {
    Subspace::orthogonal_hyperplane(x, dim)
}
