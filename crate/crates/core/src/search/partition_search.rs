use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{partition_condition, partition_double, witness_lines, CapPartition};
use crate::error::{Error, Result};

/// Largest number of labellings the exhaustive partition search may visit.
pub const EXHAUSTIVE_PARTITION_LIMIT: u128 = 1 << 32;
/// Largest number of labellings [`count_partitions`] will visit.
const COUNT_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    /// Every labelling in lexicographic order, stopping at the first hit.
    Exhaustive,
    /// Seeded local search over labellings, minimizing uncovered
    /// (type, point) pairs.
    Randomized { seed: u64, steps: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSearch {
    pub k: u32,
    pub r: u32,
    pub found: Option<CapPartition>,
    /// Labellings (exhaustive) or moves (randomized) tried.
    pub examined: u64,
    /// `found` is `None` and every labelling was checked.
    pub proved_absent: bool,
    pub seed: Option<u64>,
}

fn total_labellings(k: u32, r: u32) -> u128 {
    let bits = r as u128 * (1u128 << k);
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

/// Per-type coverage of the hyperplane at infinity as bitmasks, `k <= 6`.
fn holds_small(k: u32, r: u32, labels: &[u32], covered: &mut [u64]) -> bool {
    let size = 1usize << k;
    covered.iter_mut().for_each(|c| *c = 0);
    for x in 0..size {
        let lx = labels[x];
        for (y, &ly) in labels.iter().enumerate().skip(x + 1) {
            covered[(lx ^ ly) as usize] |= 1 << (x ^ y);
        }
    }
    let want = ((1u128 << size) - 2) as u64;
    covered[..1 << r].iter().all(|&c| c == want)
}

/// Looks for a labelling of AG(k,2) by AG(r,2) satisfying the partition
/// condition.
pub fn partition_search(k: u32, r: u32, mode: PartitionMode) -> Result<PartitionSearch> {
    if k == 0 || k > 20 || r > 8 {
        return Err(Error::Precondition(format!(
            "unsupported sizes k = {k}, r = {r}"
        )));
    }
    match mode {
        PartitionMode::Exhaustive => exhaustive(k, r),
        PartitionMode::Randomized { seed, steps } => randomized(k, r, seed, steps),
    }
}

fn exhaustive(k: u32, r: u32) -> Result<PartitionSearch> {
    let total = total_labellings(k, r);
    if total > EXHAUSTIVE_PARTITION_LIMIT || k > 6 {
        return Err(Error::ScaleRefused(format!(
            "exhaustive search over (2^{r})^(2^{k}) labellings exceeds {EXHAUSTIVE_PARTITION_LIMIT}"
        )));
    }
    let mut out = PartitionSearch {
        k,
        r,
        found: None,
        examined: 0,
        proved_absent: false,
        seed: None,
    };
    let mut covered = vec![0u64; 1 << r];
    let found = for_each_labelling(k, r, |labels| {
        out.examined += 1;
        holds_small(k, r, labels, &mut covered)
    });
    match found {
        Some(labels) => out.found = Some(CapPartition::new(k, r, labels)?),
        None => out.proved_absent = true,
    }
    Ok(out)
}

/// Calls `f` on every labelling (a base-`2^r` counter over `2^k` digits)
/// until it returns true; returns that labelling.
fn for_each_labelling(k: u32, r: u32, mut f: impl FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
    let size = 1usize << k;
    let top = (1u32 << r) - 1;
    let mut labels = vec![0u32; size];
    loop {
        if f(&labels) {
            return Some(labels);
        }
        let mut i = 0;
        while i < size && labels[i] == top {
            labels[i] = 0;
            i += 1;
        }
        if i == size {
            return None;
        }
        labels[i] += 1;
    }
}

/// Number of labellings satisfying the partition condition.
pub fn count_partitions(k: u32, r: u32) -> Result<u64> {
    if total_labellings(k, r) > COUNT_LIMIT || k > 6 {
        return Err(Error::ScaleRefused(format!(
            "counting over (2^{r})^(2^{k}) labellings exceeds {COUNT_LIMIT}"
        )));
    }
    let mut covered = vec![0u64; 1 << r];
    let mut count = 0;
    for_each_labelling(k, r, |labels| {
        if holds_small(k, r, labels, &mut covered) {
            count += 1;
        }
        false
    });
    Ok(count)
}

/// `cnt[w][z]`: secants of type `w` through point `z` at infinity.
struct Coverage {
    k: u32,
    cnt: Vec<u32>,
    /// Nonzero `z` and any `w` with `cnt[w][z] = 0`.
    missing: u64,
}

impl Coverage {
    fn new(k: u32, r: u32, labels: &[u32]) -> Self {
        let size = 1usize << k;
        let mut cnt = vec![0u32; size << r];
        for x in 0..size {
            for y in x + 1..size {
                cnt[((labels[x] ^ labels[y]) as usize) * size + (x ^ y)] += 1;
            }
        }
        let missing = (0..1usize << r)
            .flat_map(|w| (1..size).map(move |z| w * size + z))
            .filter(|&i| cnt[i] == 0)
            .count() as u64;
        Coverage { k, cnt, missing }
    }

    /// Moves `x` from label `from` to `to`.
    fn relabel(&mut self, labels: &mut [u32], x: usize, to: u32) {
        let size = 1usize << self.k;
        let from = labels[x];
        for (y, &ly) in labels.iter().enumerate() {
            if y == x {
                continue;
            }
            let z = x ^ y;
            let old = ((from ^ ly) as usize) * size + z;
            let new = ((to ^ ly) as usize) * size + z;
            self.cnt[old] -= 1;
            if self.cnt[old] == 0 {
                self.missing += 1;
            }
            if self.cnt[new] == 0 {
                self.missing -= 1;
            }
            self.cnt[new] += 1;
        }
        labels[x] = to;
    }
}

fn randomized(k: u32, r: u32, seed: u64, steps: u64) -> Result<PartitionSearch> {
    let size = 1usize << k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<u32> = (0..size).map(|_| rng.gen_range(0..1u32 << r)).collect();
    let mut cov = Coverage::new(k, r, &labels);
    let mut out = PartitionSearch {
        k,
        r,
        found: None,
        examined: 0,
        proved_absent: false,
        seed: Some(seed),
    };
    while out.examined < steps {
        if cov.missing == 0 {
            out.found = Some(CapPartition::new(k, r, labels)?);
            return Ok(out);
        }
        out.examined += 1;
        let x = rng.gen_range(0..size);
        let to = rng.gen_range(0..1u32 << r);
        let from = labels[x];
        if to == from {
            continue;
        }
        let before = cov.missing;
        cov.relabel(&mut labels, x, to);
        // Keep sideways and improving moves; keep worse ones rarely.
        if cov.missing > before && rng.gen_range(0..64) != 0 {
            cov.relabel(&mut labels, x, from);
        }
    }
    if cov.missing == 0 {
        out.found = Some(CapPartition::new(k, r, labels)?);
    }
    Ok(out)
}

/// The first anchor triple `(a0, a1, a01)` accepted by [`partition_double`].
pub fn find_doubling_anchors(p: &CapPartition) -> Option<(u32, u32, u32)> {
    if p.r() != 2 || p.labels().contains(&0) {
        return None;
    }
    let (x0, x1, x01) = (p.part(1), p.part(2), p.part(3));
    for &a0 in &x0 {
        for &a1 in &x1 {
            for &a01 in &x01 {
                let ok = witness_lines(p, a0, a1, a01)
                    .iter()
                    .all(|(_, types)| types.iter().all(|&t| t));
                if ok {
                    return Some((a0, a1, a01));
                }
            }
        }
    }
    None
}

/// Repeated doubling from `seed` up to AG(target_k, 2). The given anchors
/// are reused while they satisfy the doubling precondition; otherwise the
/// first valid triple is taken. Returns every partition of the chain,
/// starting with `seed`.
pub fn partition_chain(
    seed: &CapPartition,
    anchors: (u32, u32, u32),
    target_k: u32,
) -> Result<Vec<CapPartition>> {
    if target_k < seed.k() {
        return Err(Error::Precondition(format!(
            "target k = {target_k} is below the seed's k = {}",
            seed.k()
        )));
    }
    let mut chain = vec![seed.clone()];
    while chain.last().expect("nonempty").k() < target_k {
        let p = chain.last().expect("nonempty");
        let (a0, a1, a01) = anchors;
        let next = match partition_double(p, a0, a1, a01) {
            Ok(q) => q,
            Err(Error::Precondition(_)) => {
                let (a0, a1, a01) = find_doubling_anchors(p).ok_or_else(|| {
                    Error::Precondition(format!("no doubling anchors for k = {}", p.k()))
                })?;
                partition_double(p, a0, a1, a01)?
            }
            Err(e) => return Err(e),
        };
        chain.push(next);
    }
    Ok(chain)
}

/// Counting facts about partitions of AG(k,2) indexed by AG(r,2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingCheck {
    pub k: u32,
    pub r: u32,
    /// `2^{k-1}(2^k - 1) >= 2^r (2^k - 1)`: enough secants for every type
    /// to cover the hyperplane at infinity.
    pub secant_bound: bool,
    /// `r = k - 1`: each point at infinity is on exactly one secant of
    /// each type.
    pub tight: bool,
    /// `(Σ x_u)^2 = 2^{2k}` against `2^r (2^k - 1) + 2^k - 2`, the value
    /// obtained from `Σ x_u = 2^r - 1` and `Σ_{u≠v} x_u x_v = 2^r (2^k - 1)`.
    pub printed_lhs: u128,
    pub printed_rhs: u128,
    /// The same expansion with `Σ x_u = 2^k`, `Σ x_u^2 = 2(2^k - 1) + 2^k`
    /// and `Σ_{u≠v} x_u x_v = 2(2^r - 1)(2^k - 1)`.
    pub corrected_rhs: u128,
    /// When tight and `2^r <= 8`: part-size vectors meeting the exact
    /// secant counts.
    pub feasible_profiles: Option<Vec<Vec<u64>>>,
    /// For a supplied partition: whether every type covers every point.
    pub candidate_holds: Option<bool>,
}

impl CountingCheck {
    /// The counts alone exclude every partition.
    pub fn rules_out(&self) -> bool {
        !self.secant_bound
            || (self.tight && self.feasible_profiles.as_ref().is_some_and(Vec::is_empty))
    }

    /// The printed identity is violated, which is the contradiction the
    /// argument for `r <= k - 2` relies on.
    pub fn printed_identity_fails(&self) -> bool {
        self.tight && self.printed_lhs != self.printed_rhs
    }
}

pub fn counting_identity_check(k: u32, r: u32, p: Option<&CapPartition>) -> CountingCheck {
    let h = (1u128 << k) - 1;
    let lines = (1u128 << (k - 1)) * h;
    let tight = r + 1 == k;
    let feasible_profiles = (tight && r <= 3).then(|| feasible_profiles(k, r));
    CountingCheck {
        k,
        r,
        secant_bound: lines >= (1u128 << r) * h,
        tight,
        printed_lhs: 1u128 << (2 * k),
        printed_rhs: (1u128 << r) * h + (1u128 << k) - 2,
        corrected_rhs: 2 * h + (1u128 << k) + 2 * ((1u128 << r) - 1) * h,
        feasible_profiles,
        candidate_holds: p.map(|p| partition_condition(p).holds),
    }
}

/// Vectors `x` over AG(r,2) with `Σ x_u = 2^k`, `Σ C(x_u, 2) = 2^k - 1` and
/// `Σ_u x_u x_{u+w} = 2(2^k - 1)` for every `w ≠ 0`.
fn feasible_profiles(k: u32, r: u32) -> Vec<Vec<u64>> {
    let total = 1u64 << k;
    let h = total - 1;
    let parts = 1usize << r;
    let mut out = Vec::new();
    let mut x = vec![0u64; parts];
    compositions(
        &mut x,
        0,
        total,
        &mut |x| {
            let same: u64 = x.iter().map(|&v| v * v.saturating_sub(1) / 2).sum();
            same == h
                && (1..parts).all(|w| (0..parts).map(|u| x[u] * x[u ^ w]).sum::<u64>() == 2 * h)
        },
        &mut out,
    );
    out
}

fn compositions(
    x: &mut Vec<u64>,
    i: usize,
    left: u64,
    keep: &mut impl FnMut(&[u64]) -> bool,
    out: &mut Vec<Vec<u64>>,
) {
    if i + 1 == x.len() {
        x[i] = left;
        if keep(x) {
            out.push(x.clone());
        }
        return;
    }
    for v in 0..=left {
        x[i] = v;
        compositions(x, i + 1, left - v, keep, out);
    }
}
