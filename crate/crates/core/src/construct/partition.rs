use super::family::{assemble, FamilyGeometry, PairPlan};
use super::{Built, Certificate, Construction};
use crate::error::{Error, Result};
use crate::geom::{Dim, Point, PointSet};

/// A labelling of the `2^k` vectors of AG(k,2) by the `2^r` vectors of
/// AG(r,2). Part `X_w` is the set of vectors labelled `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CapPartition {
    k: u32,
    r: u32,
    labels: Vec<u32>,
}

impl CapPartition {
    pub fn new(k: u32, r: u32, labels: Vec<u32>) -> Result<Self> {
        if k == 0 || k > 24 || r > 16 {
            return Err(Error::Precondition(format!(
                "unsupported sizes k = {k}, r = {r}"
            )));
        }
        if labels.len() != 1 << k {
            return Err(Error::Precondition(format!(
                "{} labels for AG({k},2), expected {}",
                labels.len(),
                1u32 << k
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&w| w >> r != 0) {
            return Err(Error::Precondition(format!(
                "label {bad} outside AG({r},2)"
            )));
        }
        Ok(CapPartition { k, r, labels })
    }

    /// From explicit parts; `parts[w]` lists the vectors labelled `w`, and
    /// together the parts must cover AG(k,2) exactly once.
    pub fn from_parts(k: u32, r: u32, parts: &[Vec<u32>]) -> Result<Self> {
        if parts.len() != 1 << r {
            return Err(Error::Precondition(format!(
                "{} parts given, AG({r},2) has {}",
                parts.len(),
                1u32 << r
            )));
        }
        let mut labels = vec![u32::MAX; 1 << k];
        for (w, part) in parts.iter().enumerate() {
            for &x in part {
                let slot = labels
                    .get_mut(x as usize)
                    .ok_or_else(|| Error::Precondition(format!("vector {x} outside AG({k},2)")))?;
                if *slot != u32::MAX {
                    return Err(Error::Precondition(format!("vector {x} in two parts")));
                }
                *slot = w as u32;
            }
        }
        if let Some(x) = labels.iter().position(|&w| w == u32::MAX) {
            return Err(Error::Precondition(format!("vector {x} in no part")));
        }
        Self::new(k, r, labels)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: u32) -> u32 {
        self.labels[x as usize]
    }

    pub fn part(&self, w: u32) -> Vec<u32> {
        (0..1u32 << self.k)
            .filter(|&x| self.label(x) == w)
            .collect()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; 1 << self.r];
        for &w in &self.labels {
            sizes[w as usize] += 1;
        }
        sizes
    }
}

/// Verdict of the partition condition, with the points at infinity missed
/// by secants of each type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCheck {
    pub holds: bool,
    /// `missing[w]`: nonzero vectors of the hyperplane at infinity on no
    /// secant of type `w`.
    pub missing: Vec<Vec<u32>>,
}

/// For every type `w`, every point at infinity must be `x + y` for some
/// `x`, `y` whose labels differ by `w`.
pub fn partition_condition(p: &CapPartition) -> PartitionCheck {
    let size = 1usize << p.k;
    let types = 1usize << p.r;
    let mut covered = vec![false; types * size];
    for x in 0..size {
        let lx = p.labels[x] as usize;
        for y in x + 1..size {
            covered[(lx ^ p.labels[y] as usize) * size + (x ^ y)] = true;
        }
    }
    let missing: Vec<Vec<u32>> = (0..types)
        .map(|w| {
            (1..size)
                .filter(|&z| !covered[w * size + z])
                .map(|z| z as u32)
                .collect()
        })
        .collect();
    PartitionCheck {
        holds: missing.iter().all(Vec::is_empty),
        missing,
    }
}

fn partition_geometry(p: &CapPartition) -> Result<FamilyGeometry> {
    if p.r == 0 {
        return Err(Error::Precondition("partition caps need r >= 1".into()));
    }
    let dim = Dim::new(p.k + p.r + 1)?;
    FamilyGeometry::c_hat_minus_one(dim, p.r)
}

/// The all-singleton cap of PG(k+r+1, 2) whose A-point in the coset with
/// coordinates `x` is `e_{n-1} + (x << r) + w` for the label `w` of `x`.
/// Complete exactly when the partition condition holds.
pub fn partition_to_cap(p: &CapPartition) -> Result<Built> {
    let g = partition_geometry(p)?;
    let n = g.dim().n();
    let plan: Vec<PairPlan> = (0..1u32 << p.k)
        .map(|x| {
            let alpha = (1 << (n - 1)) | (x << p.r) | p.label(x);
            PairPlan::SingletonA(Point::new(alpha).expect("nonzero"))
        })
        .collect();
    let s = assemble(&g, &plan)?;
    let predicted = (2usize << p.k) + (1 << p.r) - 1;
    let params = vec![("n", n as i64), ("k", p.k as i64), ("r", p.r as i64)];
    Ok(Built {
        certificate: Certificate::check(Construction::Partition, params, predicted, &s),
        cap: s,
    })
}

/// Inverse of [`partition_to_cap`] for caps in the same standard geometry.
pub fn partition_from_cap(s: &PointSet, r: u32) -> Result<CapPartition> {
    let dim = s.dim();
    let g = FamilyGeometry::c_hat_minus_one(dim, r)?;
    let n = dim.n();
    let k = n - r - 1;
    if s.intersection(&g.frame.h_c()) != g.c {
        return Err(Error::Precondition("cap does not meet H_C in C".into()));
    }
    if g.frame.h_inf.meets(s).is_some() {
        return Err(Error::FrameMeetsCap(g.frame.h_inf.meets(s).expect("some")));
    }
    let a = s.intersection(&g.frame.h_a());
    if s.intersection(&g.frame.h_b()) != a.translate(g.c0()) {
        return Err(Error::Precondition("B is not c0 + A".into()));
    }
    let mut labels = vec![u32::MAX; 1 << k];
    for alpha in a.iter() {
        let x = ((alpha.mask() >> r) & ((1 << k) - 1)) as usize;
        if labels[x] != u32::MAX {
            return Err(Error::Precondition(format!("two points of A in coset {x}")));
        }
        labels[x] = alpha.mask() & ((1 << r) - 1);
    }
    if labels.contains(&u32::MAX) {
        return Err(Error::Precondition("some coset has no point of A".into()));
    }
    CapPartition::new(k, r, labels)
}

/// For each point of the line `{a0+a1, a0+a01, a1+a01}`, which of the four
/// secant types pass through it without using `a0`, `a1` or `a01`.
pub fn witness_lines(p: &CapPartition, a0: u32, a1: u32, a01: u32) -> Vec<(u32, [bool; 4])> {
    let size = 1u32 << p.k;
    [a0 ^ a1, a0 ^ a01, a1 ^ a01]
        .into_iter()
        .map(|z| {
            let mut types = [false; 4];
            for x in 0..size {
                let y = x ^ z;
                if x < y && ![a0, a1, a01].iter().any(|&a| a == x || a == y) {
                    types[(p.label(x) ^ p.label(y)) as usize] = true;
                }
            }
            (z, types)
        })
        .collect()
}

/// Doubles a four-part partition with empty `X_∅` into AG(k+1,2).
///
/// Every part is doubled along the new coordinate `z`; then `z + a0` moves
/// to part `1`, `z + a1` to part `01` and `z + a01` to part `0`, which puts
/// `z` on secants of every type. Labels are `∅ = 0`, `0 = 1`, `1 = 2`,
/// `01 = 3`.
pub fn partition_double(p: &CapPartition, a0: u32, a1: u32, a01: u32) -> Result<CapPartition> {
    if p.r != 2 {
        return Err(Error::Precondition(
            "doubling needs four parts (r = 2)".into(),
        ));
    }
    if p.k >= 24 {
        return Err(Error::Precondition("partition too large to double".into()));
    }
    if p.labels.contains(&0) {
        return Err(Error::Precondition("part X_∅ must be empty".into()));
    }
    let size = 1u32 << p.k;
    for (x, want, name) in [(a0, 1, "a0"), (a1, 2, "a1"), (a01, 3, "a01")] {
        if x >= size || p.label(x) != want {
            return Err(Error::Precondition(format!(
                "{name} = {x} is not in its part"
            )));
        }
    }
    for (z, types) in witness_lines(p, a0, a1, a01) {
        if let Some(w) = types.iter().position(|&ok| !ok) {
            return Err(Error::Precondition(format!(
                "line point {z} has no secant of type {w} avoiding the anchors"
            )));
        }
    }
    let mut labels = Vec::with_capacity(2 * size as usize);
    labels.extend_from_slice(&p.labels);
    labels.extend_from_slice(&p.labels);
    labels[(size | a0) as usize] = 2;
    labels[(size | a1) as usize] = 3;
    labels[(size | a01) as usize] = 1;
    CapPartition::new(p.k + 1, 2, labels)
}
