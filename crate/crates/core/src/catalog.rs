//! Worked configurations with known properties, in digit notation: `"045"`
//! is `e_0 + e_4 + e_5`.

use crate::construct::{CapPartition, FamilyGeometry};
use crate::geom::{Dim, Point, PointSet};
use crate::slices::SliceFrame;

/// A slice `A` for a tangent cap at `c0`.
#[derive(Debug, Clone)]
pub struct TangentSetup {
    pub frame: SliceFrame,
    pub a: PointSet,
    pub c0: Point,
}

fn pt(s: &str) -> Point {
    Point::from_digits(s).expect("catalog point")
}

fn set(n: u32, items: &[&str]) -> PointSet {
    PointSet::from_digit_strs(Dim::new(n).expect("catalog dim"), items).expect("catalog set")
}

fn frame(n: u32, a: &str, b: &str) -> SliceFrame {
    SliceFrame::from_normals(Dim::new(n).expect("catalog dim"), pt(a), pt(b))
        .expect("catalog frame")
}

/// PG(5,2): `A` is not periodic and `A ⊕ A = H∞`, so the tangent cap is
/// complete with 17 points.
pub fn tangent_complete_pg5() -> TangentSetup {
    TangentSetup {
        frame: frame(5, "5", "4"),
        a: set(5, &["4", "04", "14", "24", "34", "01234", "0134", "0234"]),
        c0: pt("45"),
    }
}

/// PG(5,2): `A` has vertex `e_0` and `A ⊕ A ≠ H∞`; the tangent cap misses
/// `045`, `123` and `0123`.
pub fn periodic_slice_pg5() -> TangentSetup {
    TangentSetup {
        frame: frame(5, "5", "4"),
        a: set(5, &["4", "04", "14", "014", "24", "024", "34", "034"]),
        c0: pt("45"),
    }
}

/// PG(4,2): `A` is not periodic, `A ⊕ A` misses only `012`, and adding it
/// gives a complete 10-cap.
pub fn unique_extender_pg4() -> TangentSetup {
    TangentSetup {
        frame: frame(4, "4", "3"),
        a: set(4, &["3", "03", "13", "23"]),
        c0: pt("34"),
    }
}

/// A 66-point slice in PG(9,2) with `A ⊕ A = H∞`, to be grown into a
/// periodic slice with vertex `v = 01`.
#[derive(Debug, Clone)]
pub struct PeriodicSeed {
    pub frame: SliceFrame,
    pub seed: PointSet,
    pub v: Point,
}

/// `{8} ∪ {i8} ∪ {ijklm8} ∪ {012345678}` with `0 <= i < j < k < l < m <= 7`.
pub fn big_slice_pg9() -> PeriodicSeed {
    let dim = Dim::new(9).expect("dim");
    let e8 = 1u32 << 8;
    let masks = (0..256u32)
        .filter(|x| matches!(x.count_ones(), 0 | 1 | 5 | 8))
        .map(|x| x | e8);
    PeriodicSeed {
        frame: frame(9, "9", "8"),
        seed: PointSet::from_masks(dim, masks).expect("seed"),
        v: pt("01"),
    }
}

/// PG(7,2) with `C = {067, 167, 0167}`, `c0 = 67`, `F = {0, 1, 01}`; the
/// first A-coset is `{6, 06, 16, 016}`.
pub fn partition_frame_pg7() -> FamilyGeometry {
    FamilyGeometry::c_hat_minus_one(Dim::new(7).expect("dim"), 2).expect("geometry")
}

/// Coordinates in AG(4,2) of a point of `H_A` of [`partition_frame_pg7`]
/// written without its `F` part: digits `2..=5` are the bits and `6` must be
/// present.
pub fn affine_coordinates(digits: &str) -> Option<u32> {
    let m = Point::from_digits(digits).ok()?.mask();
    (m & 0b1100_0011 == 0b0100_0000).then_some((m >> 2) & 0xf)
}

/// Parts (by label: `∅ = 0`, `0 = 1`, `1 = 2`, `01 = 3`) of a four-part
/// partition of AG(4,2) satisfying the partition condition.
pub const SEED_PARTS: [&[&str]; 4] = [
    &[],
    &["6", "246", "346", "256", "2346", "2456"],
    &["236", "356", "456", "2356", "3456"],
    &["26", "36", "46", "56", "23456"],
];

pub fn seed_partition() -> CapPartition {
    let parts: Vec<Vec<u32>> = SEED_PARTS
        .iter()
        .map(|part| {
            part.iter()
                .map(|d| affine_coordinates(d).expect("seed vector"))
                .collect()
        })
        .collect();
    CapPartition::from_parts(4, 2, &parts).expect("seed partition")
}

/// Anchors `a0 = 6`, `a1 = 236`, `a01 = 26` of [`seed_partition`] for
/// doubling.
pub const SEED_ANCHORS: (u32, u32, u32) = (0b0000, 0b0011, 0b0001);

/// The 35-point cap of PG(7,2) listed point by point: `A`, `B = 67 + A` and
/// `C`.
pub fn partition_cap_pg7() -> PointSet {
    let a = set(
        7,
        &[
            "1236", "1356", "1456", "12356", "13456", "06", "0246", "0346", "0256", "02346",
            "02456", "0126", "0136", "0146", "0156", "0123456",
        ],
    );
    let mut s = a.union(&a.translate(pt("67")));
    s.union_with(&set(7, &["067", "167", "0167"]));
    s
}

/// PG(4,2) with `K_A = (0123)^⊥`, `K_B = (4)^⊥` and a four-point slice
/// spanning `K_C`; the single coset pair has 8 points per side.
pub fn four_point_model() -> (SliceFrame, PointSet) {
    (frame(4, "0123", "4"), set(4, &["04", "14", "24", "34"]))
}
