use std::fmt;

use crate::error::{Error, Result};

/// Largest supported projective dimension. A full point set at this size is
/// a 2^21-bit bitset.
pub const MAX_DIM: u32 = 20;

/// Projective dimension `n` of the ambient space PG(n,2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u32);

impl Dim {
    pub fn new(n: u32) -> Result<Self> {
        if (2..=MAX_DIM).contains(&n) {
            Ok(Dim(n))
        } else {
            Err(Error::DimOutOfRange(n))
        }
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.0
    }

    /// Number of homogeneous coordinates, `n + 1`.
    #[inline]
    pub fn coords(self) -> u32 {
        self.0 + 1
    }

    /// Number of points of PG(n,2), `2^(n+1) - 1`.
    #[inline]
    pub fn num_points(self) -> usize {
        (1usize << self.coords()) - 1
    }

    /// Mask with all `n + 1` coordinate bits set.
    #[inline]
    pub fn full_mask(self) -> u32 {
        (1u32 << self.coords()) - 1
    }

    #[inline]
    pub fn contains_mask(self, mask: u32) -> bool {
        mask != 0 && mask <= self.full_mask()
    }

    pub fn point(self, mask: u32) -> Result<Point> {
        if mask == 0 {
            Err(Error::ZeroPoint)
        } else if mask > self.full_mask() {
            Err(Error::MaskOutOfRange { mask, n: self.0 })
        } else {
            Ok(Point(mask))
        }
    }

    /// The point `e_i`.
    pub fn basis_point(self, i: u32) -> Result<Point> {
        if i > self.0 {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.0,
            });
        }
        Ok(Point(1 << i))
    }

    /// One dimension up, for Plotkin doubling.
    pub fn succ(self) -> Result<Dim> {
        Dim::new(self.0 + 1)
    }

    pub fn points(self) -> impl Iterator<Item = Point> {
        (1..=self.full_mask()).map(Point)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PG({},2)", self.0)
    }
}

/// A point of PG(n,2): the unique nonzero vector of its one-dimensional
/// subspace, stored as a coordinate bitmask (bit `i` set iff `e_i` appears).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(u32);

impl Point {
    pub fn new(mask: u32) -> Result<Self> {
        if mask == 0 {
            Err(Error::ZeroPoint)
        } else {
            Ok(Point(mask))
        }
    }

    /// Caller guarantees `mask != 0`.
    #[inline]
    pub(crate) fn from_mask_unchecked(mask: u32) -> Self {
        debug_assert!(mask != 0);
        Point(mask)
    }

    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= 32 {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: MAX_DIM,
                });
            }
            if mask & (1 << i) != 0 {
                return Err(Error::MalformedPoint(format!("repeated index {i}")));
            }
            mask |= 1 << i;
        }
        Point::new(mask)
    }

    /// Compact digit notation, one decimal digit per index (`"013"`). Only
    /// meaningful for n <= 9.
    pub fn from_digits(text: &str) -> Result<Self> {
        let mut idx = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::MalformedPoint(text.to_string()))?;
            idx.push(d);
        }
        Point::from_indices(&idx)
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn indices(self) -> Vec<u32> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Standard bilinear form: parity of the common coordinates.
    #[inline]
    pub fn dot(self, other: Point) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    #[inline]
    pub fn is_orthogonal(self, other: Point) -> bool {
        !self.dot(other)
    }

    /// The third point on the line through `self` and `other`.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Point) -> Result<Point> {
        point_add(self, other)
    }

    #[inline]
    pub fn lowest_index(self) -> u32 {
        self.0.trailing_zeros()
    }

    #[inline]
    pub fn highest_index(self) -> u32 {
        31 - self.0.leading_zeros()
    }

    /// Fixed-width hex form, at least four digits.
    pub fn to_hex(self, dim: Dim) -> String {
        let width = hex_width(dim);
        format!("0x{:0width$x}", self.0, width = width)
    }

    /// Ascending comma-separated indices.
    pub fn to_index_string(self) -> String {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        parts.join(",")
    }

    /// Compact digit string (`"045"`); only unambiguous for n <= 9.
    pub fn to_digits(self) -> String {
        self.indices().iter().map(|i| i.to_string()).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_index_string())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_index_string())
    }
}

fn hex_width(dim: Dim) -> usize {
    (dim.coords() as usize).div_ceil(4).max(4)
}

/// Sum of two distinct points: the XOR of their masks.
pub fn point_add(x: Point, y: Point) -> Result<Point> {
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    Ok(Point(x.0 ^ y.0))
}

/// Three pairwise-distinct points are collinear iff they sum to zero.
pub fn is_collinear(x: Point, y: Point, z: Point) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(Error::CoincidentPoints);
    }
    Ok(x.0 ^ y.0 ^ z.0 == 0)
}

/// Text output style for points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Index,
    Hex,
}

impl PointFormat {
    /// Index form reads naturally up to single-digit indices; beyond that hex
    /// is the default.
    pub fn default_for(dim: Dim) -> Self {
        if dim.n() <= 9 {
            PointFormat::Index
        } else {
            PointFormat::Hex
        }
    }
}

pub fn format_point(p: Point, dim: Dim, style: PointFormat) -> String {
    match style {
        PointFormat::Index => p.to_index_string(),
        PointFormat::Hex => p.to_hex(dim),
    }
}

/// Parses either `"0,1,3"` (ascending or not, no repeats) or `"0x000b"`.
pub fn parse_point(text: &str, dim: Dim) -> Result<Point> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::MalformedPoint(text.to_string()));
    }
    let mask = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u32::from_str_radix(hex, 16).map_err(|_| Error::MalformedPoint(text.to_string()))?
    } else {
        let mut mask = 0u32;
        for tok in t.split(',') {
            let i: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::MalformedPoint(text.to_string()))?;
            if i > dim.n() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: dim.n(),
                });
            }
            if mask & (1 << i) != 0 {
                return Err(Error::MalformedPoint(text.to_string()));
            }
            mask |= 1 << i;
        }
        mask
    };
    dim.point(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Point {
        Point::from_digits(s).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(point_add(d("013"), d("01")).unwrap(), d("3"));
        assert_eq!(point_add(d("04"), d("14")).unwrap(), d("01"));
        assert_eq!(point_add(d("4"), d("04")).unwrap(), d("0"));
        assert_eq!(point_add(d("4"), d("4")), Err(Error::CoincidentPoints));
    }

    #[test]
    fn collinearity_examples() {
        assert!(is_collinear(d("4"), d("04"), d("0")).unwrap());
        assert!(!is_collinear(d("04"), d("14"), d("24")).unwrap());
        assert!(!is_collinear(d("6"), d("06"), d("016")).unwrap());
        assert!(is_collinear(d("6"), d("6"), d("0")).is_err());
    }

    #[test]
    fn parse_and_format() {
        let dim = Dim::new(4).unwrap();
        let p = parse_point("0,1,3", dim).unwrap();
        assert_eq!(p.mask(), 0b1011);
        assert_eq!(p.to_index_string(), "0,1,3");
        assert_eq!(parse_point("0x000b", dim).unwrap(), p);
        assert_eq!(p.to_hex(dim), "0x000b");
        assert_eq!(parse_point("4", dim).unwrap().mask(), 1 << 4);
    }

    #[test]
    fn parse_errors() {
        let dim = Dim::new(4).unwrap();
        assert_eq!(parse_point("0x0", dim), Err(Error::ZeroPoint));
        assert_eq!(
            parse_point("5", dim),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        );
        assert!(matches!(
            parse_point("1,,2", dim),
            Err(Error::MalformedPoint(_))
        ));
        assert!(matches!(
            parse_point("1,1", dim),
            Err(Error::MalformedPoint(_))
        ));
        assert!(matches!(
            parse_point("0x40", dim),
            Err(Error::MaskOutOfRange { .. })
        ));
        assert!(matches!(
            parse_point("", dim),
            Err(Error::MalformedPoint(_))
        ));
    }

    #[test]
    fn dim_bounds() {
        assert!(Dim::new(1).is_err());
        assert!(Dim::new(21).is_err());
        assert_eq!(Dim::new(20).unwrap().num_points(), (1 << 21) - 1);
    }

    #[test]
    fn wide_hex() {
        let dim = Dim::new(20).unwrap();
        assert_eq!(Point::new(1).unwrap().to_hex(dim), "0x000001");
    }
}
