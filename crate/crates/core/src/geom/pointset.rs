use std::cmp::Ordering;
use std::fmt;

use super::point::{Dim, Point};
use crate::error::{Error, Result};

/// A subset of PG(n,2) as a flat bitset; bit `mask - 1` records the point
/// with that mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: Dim,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(dim: Dim) -> Self {
        PointSet {
            dim,
            words: vec![0; dim.num_points().div_ceil(64)],
        }
    }

    /// All points of PG(n,2).
    pub fn full(dim: Dim) -> Self {
        let mut s = Self::empty(dim);
        let total = dim.num_points();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let left = total - lo;
            *w = if left >= 64 { !0 } else { (1u64 << left) - 1 };
        }
        s
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(dim: Dim, points: I) -> Result<Self> {
        let mut s = Self::empty(dim);
        for p in points {
            s.try_insert(p)?;
        }
        Ok(s)
    }

    /// Builds a set from raw masks; zero or oversized masks are errors.
    pub fn from_masks<I: IntoIterator<Item = u32>>(dim: Dim, masks: I) -> Result<Self> {
        let mut s = Self::empty(dim);
        for m in masks {
            s.insert(dim.point(m)?);
        }
        Ok(s)
    }

    /// Builds a set from compact digit strings (`"013"`); n <= 9 only.
    pub fn from_digit_strs(dim: Dim, items: &[&str]) -> Result<Self> {
        let mut s = Self::empty(dim);
        for it in items {
            s.try_insert(Point::from_digits(it)?)?;
        }
        Ok(s)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    fn slot(p: Point) -> (usize, u64) {
        let i = (p.mask() - 1) as usize;
        (i >> 6, 1u64 << (i & 63))
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        if !self.dim.contains_mask(p.mask()) {
            return false;
        }
        let (w, b) = Self::slot(p);
        self.words[w] & b != 0
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        if !self.dim.contains_mask(mask) {
            return false;
        }
        let i = (mask - 1) as usize;
        self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }

    /// Inserts `p`; returns whether it was new. Panics if `p` is outside the
    /// ambient space.
    #[inline]
    pub fn insert(&mut self, p: Point) -> bool {
        assert!(
            self.dim.contains_mask(p.mask()),
            "point {p} outside {}",
            self.dim
        );
        let (w, b) = Self::slot(p);
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn try_insert(&mut self, p: Point) -> Result<bool> {
        if !self.dim.contains_mask(p.mask()) {
            return Err(Error::MaskOutOfRange {
                mask: p.mask(),
                n: self.dim.n(),
            });
        }
        Ok(self.insert(p))
    }

    #[inline]
    pub(crate) fn insert_mask(&mut self, mask: u32) {
        let i = (mask - 1) as usize;
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, p: Point) -> bool {
        if !self.dim.contains_mask(p.mask()) {
            return false;
        }
        let (w, b) = Self::slot(p);
        let had = self.words[w] & b != 0;
        self.words[w] &= !b;
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Points in ascending mask order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.iter().collect()
    }

    pub fn masks(&self) -> Vec<u32> {
        self.iter().map(Point::mask).collect()
    }

    pub fn first(&self) -> Option<Point> {
        self.iter().next()
    }

    fn check_dim(&self, other: &PointSet) {
        assert_eq!(
            self.dim, other.dim,
            "set algebra across different ambient spaces"
        );
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        self.check_dim(other);
        PointSet {
            dim: self.dim,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.check_dim(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.check_dim(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> PointSet {
        PointSet::full(self.dim).difference(self)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_dim(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.check_dim(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.check_dim(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `v + X = {v + x : x in X, x != v}`.
    pub fn translate(&self, v: Point) -> PointSet {
        let mut out = PointSet::empty(self.dim);
        for x in self.iter() {
            if x != v {
                out.insert_mask(x.mask() ^ v.mask());
            }
        }
        out
    }

    /// Whether `v + X = X`.
    pub fn is_fixed_by(&self, v: Point) -> bool {
        if self.contains(v) {
            return false;
        }
        self.iter().all(|x| self.contains_mask(x.mask() ^ v.mask()))
    }

    /// Re-embeds the set into a larger ambient space (same masks).
    pub fn lift(&self, dim: Dim) -> Result<PointSet> {
        if dim < self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim.n(),
                found: dim.n(),
            });
        }
        let mut out = PointSet::empty(dim);
        for p in self.iter() {
            out.insert(p);
        }
        Ok(out)
    }

    pub fn filter(&self, mut keep: impl FnMut(Point) -> bool) -> PointSet {
        let mut out = PointSet::empty(self.dim);
        for p in self.iter() {
            if keep(p) {
                out.insert(p);
            }
        }
        out
    }
}

/// Lexicographic order on the ascending list of masks.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dim)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = Point;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = Point;

    #[inline]
    fn next(&mut self) -> Option<Point> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                let bit = (self.idx << 6) + tz;
                return Some(Point::from_mask_unchecked(bit as u32 + 1));
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_complement() {
        let dim = Dim::new(5).unwrap();
        let full = PointSet::full(dim);
        assert_eq!(full.len(), 63);
        assert!(full.complement().is_empty());
        assert_eq!(full.iter().last().unwrap().mask(), 63);
    }

    #[test]
    fn algebra() {
        let dim = Dim::new(3).unwrap();
        let a = PointSet::from_masks(dim, [1, 2, 3]).unwrap();
        let b = PointSet::from_masks(dim, [3, 4]).unwrap();
        assert_eq!(a.union(&b).masks(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).masks(), vec![3]);
        assert_eq!(a.difference(&b).masks(), vec![1, 2]);
        assert_eq!(a.symmetric_difference(&b).masks(), vec![1, 2, 4]);
        assert!(!a.is_disjoint(&b));
        assert_eq!(a.translate(Point::new(3).unwrap()).masks(), vec![1, 2]);
    }

    #[test]
    fn lexicographic_order() {
        let dim = Dim::new(3).unwrap();
        let a = PointSet::from_masks(dim, [1, 9]).unwrap();
        let b = PointSet::from_masks(dim, [2]).unwrap();
        let c = PointSet::from_masks(dim, [1, 9, 10]).unwrap();
        assert!(a < b);
        assert!(a < c);
    }

    #[test]
    fn out_of_range_insert_rejected() {
        let dim = Dim::new(2).unwrap();
        let mut s = PointSet::empty(dim);
        assert!(s.try_insert(Point::new(8).unwrap()).is_err());
        assert!(!s.contains(Point::new(8).unwrap()));
    }
}
