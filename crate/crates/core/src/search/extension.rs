use crate::cap::{is_cap, oplus};
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::slices::SliceFrame;

/// Search nodes allowed to the backtracking fallback.
const BACKTRACK_BUDGET: u64 = 1 << 22;

/// A periodic cap in `H_A` grown from a seed by whole lines through `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub seed_size: usize,
    /// Secant lines of the seed passing through `v`.
    pub secants_through_v: usize,
    /// `|X ∪ (v + X)|` for the seed `X`.
    pub union_size: usize,
    /// Smaller point of each added line `{p, p + v}`, in order of addition.
    pub lines_added: Vec<Point>,
    pub a: PointSet,
    pub backtracked: bool,
    pub is_cap: bool,
    pub periodic: bool,
    /// `A ⊕ A` is every point of `H∞`.
    pub covers_h_inf: bool,
}

/// Closes `seed` under `v` and adds lines `{p, p + v}` of `H_A` (smallest
/// mask first) while the result stays a cap, until it has `target` points.
/// Falls back to backtracking over the same candidate order when the
/// greedy pass stalls.
pub fn periodic_extension(
    seed: &PointSet,
    v: Point,
    frame: &SliceFrame,
    target: usize,
) -> Result<Extension> {
    let h_a = frame.h_a();
    if !seed.is_subset(&h_a) {
        return Err(Error::Precondition("seed must lie in H_A".into()));
    }
    if !frame.h_inf.contains(v) {
        return Err(Error::Precondition(format!("v = {v} must lie in H∞")));
    }
    let secants_through_v = seed
        .iter()
        .filter(|p| p.mask() < p.mask() ^ v.mask() && seed.contains_mask(p.mask() ^ v.mask()))
        .count();
    let start = seed.union(&seed.translate(v));
    if !is_cap(&start) {
        return Err(Error::Precondition("seed ∪ (v + seed) is not a cap".into()));
    }
    if !target.is_multiple_of(2) || target > h_a.len() || target < start.len() {
        return Err(Error::Precondition(format!(
            "target {target} must be even and between {} and {}",
            start.len(),
            h_a.len()
        )));
    }
    let candidates: Vec<Point> = h_a
        .iter()
        .filter(|p| p.mask() < p.mask() ^ v.mask() && !start.contains(*p))
        .collect();
    let mut a = start.clone();
    let mut sums = oplus(&a, &a);
    let mut lines = Vec::new();
    for &p in &candidates {
        if a.len() >= target {
            break;
        }
        if fits(&a, &sums, p, v) {
            add_line(&mut a, &mut sums, p, v);
            lines.push(p);
        }
    }
    let mut backtracked = false;
    if a.len() < target {
        backtracked = true;
        a = start.clone();
        sums = oplus(&a, &a);
        lines.clear();
        let mut nodes = 0;
        if !backtrack(
            &candidates,
            0,
            target,
            v,
            &mut a,
            &mut sums,
            &mut lines,
            &mut nodes,
        ) {
            return Err(Error::Precondition(format!(
                "no periodic extension to {target} points found in {nodes} nodes"
            )));
        }
    }
    let pair_sums = oplus(&a, &a);
    Ok(Extension {
        seed_size: seed.len(),
        secants_through_v,
        union_size: start.len(),
        lines_added: lines,
        is_cap: is_cap(&a),
        periodic: a.is_fixed_by(v),
        covers_h_inf: frame.h_inf_points().is_subset(&pair_sums),
        backtracked,
        a,
    })
}

/// The line `{p, p + v}` can join `a` without creating a collinear triple.
fn fits(a: &PointSet, sums: &PointSet, p: Point, v: Point) -> bool {
    let q = Point::new(p.mask() ^ v.mask()).expect("p != v");
    !a.contains(p) && !a.contains(q) && !sums.contains(p) && !sums.contains(q)
}

fn add_line(a: &mut PointSet, sums: &mut PointSet, p: Point, v: Point) {
    let q = Point::new(p.mask() ^ v.mask()).expect("p != v");
    for x in a.iter() {
        sums.insert(Point::new(x.mask() ^ p.mask()).expect("distinct"));
        sums.insert(Point::new(x.mask() ^ q.mask()).expect("distinct"));
    }
    sums.insert(v);
    a.insert(p);
    a.insert(q);
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    candidates: &[Point],
    from: usize,
    target: usize,
    v: Point,
    a: &mut PointSet,
    sums: &mut PointSet,
    lines: &mut Vec<Point>,
    nodes: &mut u64,
) -> bool {
    if a.len() >= target {
        return true;
    }
    *nodes += 1;
    if *nodes > BACKTRACK_BUDGET {
        return false;
    }
    let need = (target - a.len()) / 2;
    for (i, &p) in candidates.iter().enumerate().skip(from) {
        if candidates.len() - i < need {
            break;
        }
        if !fits(a, sums, p, v) {
            continue;
        }
        let (saved_a, saved_sums) = (a.clone(), sums.clone());
        add_line(a, sums, p, v);
        lines.push(p);
        if backtrack(candidates, i + 1, target, v, a, sums, lines, nodes) {
            return true;
        }
        lines.pop();
        *a = saved_a;
        *sums = saved_sums;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Dim;

    #[test]
    fn grows_to_half_of_h_a() {
        let dim = Dim::new(5).unwrap();
        let frame = SliceFrame::standard(dim);
        let v = Point::from_digits("0").unwrap();
        let seed = PointSet::from_digit_strs(dim, &["4"]).unwrap();
        let ext = periodic_extension(&seed, v, &frame, 8).unwrap();
        assert_eq!(ext.union_size, 2);
        assert_eq!(ext.a.len(), 8);
        assert!(ext.is_cap && ext.periodic);
    }

    #[test]
    fn rejects_seed_outside_h_a() {
        let dim = Dim::new(5).unwrap();
        let frame = SliceFrame::standard(dim);
        let seed = PointSet::from_digit_strs(dim, &["5"]).unwrap();
        let v = Point::from_digits("0").unwrap();
        assert!(periodic_extension(&seed, v, &frame, 8).is_err());
    }
}
