//! Decomposition of a cap against a codimension-2 subspace `H∞` it misses.
//!
//! The three hyperplanes through `H∞` are labelled `K_A`, `K_B`, `K_C`, with
//! affine parts `H_X = K_X \ H∞`. The cap splits as `S = A ⊔ B ⊔ C` and the
//! complements inside the affine parts are `A'`, `B'`, `C'`. With
//! `F̃ = span(C)`, `F = F̃ ∩ H∞` and `Ĉ = F̃ \ F`, both `H_A` and `H_B` split
//! into cosets of `F`, paired by `HB(i) = Ĉ + HA(i)`.

use crate::cap::oplus;
use crate::error::{Error, Result};
use crate::geom::{cosets_of, span, Coset, Dim, Point, PointSet, Subspace};

/// Which part of the frame a point lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    HInf,
    A,
    B,
    C,
}

/// A codimension-2 subspace and the three hyperplanes through it, labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceFrame {
    pub h_inf: Subspace,
    pub k_a: Subspace,
    pub k_b: Subspace,
    pub k_c: Subspace,
    pub normal_a: Point,
    pub normal_b: Point,
    pub normal_c: Point,
}

impl SliceFrame {
    /// `K_A = (a)^⊥`, `K_B = (b)^⊥`, `K_C = (a+b)^⊥`.
    pub fn from_normals(dim: Dim, a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidFrame("normals must be distinct".into()));
        }
        for p in [a, b] {
            if !dim.contains_mask(p.mask()) {
                return Err(Error::MaskOutOfRange {
                    mask: p.mask(),
                    n: dim.n(),
                });
            }
        }
        let c = Point::new(a.mask() ^ b.mask())?;
        Ok(SliceFrame {
            h_inf: Subspace::from_normals(dim, &[a, b]),
            k_a: Subspace::orthogonal_hyperplane(a, dim),
            k_b: Subspace::orthogonal_hyperplane(b, dim),
            k_c: Subspace::orthogonal_hyperplane(c, dim),
            normal_a: a,
            normal_b: b,
            normal_c: c,
        })
    }

    /// `K_A = (e_n)^⊥`, `K_B = (e_{n-1})^⊥`, so that `H∞` is spanned by
    /// `e_0, …, e_{n-2}` and `H_C` is the set of points containing both
    /// `e_{n-1}` and `e_n`.
    pub fn standard(dim: Dim) -> Self {
        let a = Point::new(1 << dim.n()).expect("nonzero");
        let b = Point::new(1 << (dim.n() - 1)).expect("nonzero");
        Self::from_normals(dim, a, b).expect("distinct normals")
    }

    /// Frame around `h_inf` with `K_C = (c_normal)^⊥`. Of the remaining two
    /// hyperplanes, the one whose slice of `s` is lexicographically smaller
    /// becomes `K_A`.
    pub fn canonical(h_inf: &Subspace, c_normal: Point, s: &PointSet) -> Result<Self> {
        let dual = h_inf.dual();
        if dual.rank() != 2 || !dual.contains(c_normal) {
            return Err(Error::InvalidFrame(
                "K_C must be one of the three hyperplanes through a codimension-2 H∞".into(),
            ));
        }
        let others: Vec<Point> = dual.iter().filter(|&p| p != c_normal).collect();
        let (u, w) = (others[0], others[1]);
        let dim = h_inf.ambient();
        let slice = |normal: Point| s.filter(|p| !p.dot(normal) && !h_inf.contains(p));
        // Point in H_A iff orthogonal to normal_a but not to normal_b.
        let su = slice(u);
        let sw = slice(w);
        if su <= sw {
            Self::from_normals(dim, u, w)
        } else {
            Self::from_normals(dim, w, u)
        }
    }

    pub fn dim(&self) -> Dim {
        self.h_inf.ambient()
    }

    #[inline]
    pub fn region(&self, p: Point) -> Region {
        match (p.dot(self.normal_a), p.dot(self.normal_b)) {
            (false, false) => Region::HInf,
            (false, true) => Region::A,
            (true, false) => Region::B,
            (true, true) => Region::C,
        }
    }

    fn part(&self, r: Region) -> PointSet {
        PointSet::full(self.dim()).filter(|p| self.region(p) == r)
    }

    pub fn h_a(&self) -> PointSet {
        self.part(Region::A)
    }

    pub fn h_b(&self) -> PointSet {
        self.part(Region::B)
    }

    pub fn h_c(&self) -> PointSet {
        self.part(Region::C)
    }

    pub fn h_inf_points(&self) -> PointSet {
        self.h_inf.members()
    }
}

/// Scans pairs of hyperplane normals `(u, w)`, `u < w`, in ascending
/// lexicographic order and returns the first `(u)^⊥ ∩ (w)^⊥` missing `s`.
pub fn find_disjoint_codim2(s: &PointSet) -> Option<Subspace> {
    first_disjoint_normals(s).map(|(u, w)| Subspace::from_normals(s.dim(), &[u, w]))
}

fn first_disjoint_normals(s: &PointSet) -> Option<(Point, Point)> {
    let dim = s.dim();
    let pts = s.masks();
    for u in 1..=dim.full_mask() {
        // Points of s on (u)^⊥; w must be non-orthogonal to all of them.
        let on_u: Vec<u32> = pts
            .iter()
            .copied()
            .filter(|&x| (x & u).count_ones() & 1 == 0)
            .collect();
        for w in (u + 1)..=dim.full_mask() {
            if on_u.iter().all(|&x| (x & w).count_ones() & 1 == 1) {
                return Some((Point::new(u).ok()?, Point::new(w).ok()?));
            }
        }
    }
    None
}

/// Every codimension-2 subspace missing `s`, each once, in the scan order
/// of [`find_disjoint_codim2`] (by its smallest pair of normals).
pub fn all_disjoint_codim2(s: &PointSet) -> Vec<Subspace> {
    let dim = s.dim();
    let pts = s.masks();
    let mut out = Vec::new();
    for u in 1..=dim.full_mask() {
        let on_u: Vec<u32> = pts
            .iter()
            .copied()
            .filter(|&x| (x & u).count_ones() & 1 == 0)
            .collect();
        for w in (u + 1)..=dim.full_mask() {
            if (u ^ w) < w {
                continue;
            }
            if on_u.iter().all(|&x| (x & w).count_ones() & 1 == 1) {
                let normals = [Point::new(u).expect("nz"), Point::new(w).expect("nz")];
                out.push(Subspace::from_normals(dim, &normals));
            }
        }
    }
    out
}

/// Picks the frame whose `K_C` meets `s` in the fewest (but at least one)
/// points, falling back to an empty `C` when nothing else exists.
pub fn discover_frame(s: &PointSet) -> Option<SliceFrame> {
    let mut best: Option<(usize, SliceFrame)> = None;
    let mut empty_c: Option<SliceFrame> = None;
    for h in all_disjoint_codim2(s) {
        for normal in h.dual().iter() {
            let size = s.iter().filter(|p| !p.dot(normal)).count();
            let frame = SliceFrame::canonical(&h, normal, s).ok()?;
            if size == 0 {
                empty_c.get_or_insert(frame);
            } else if best.as_ref().is_none_or(|(b, _)| size < *b) {
                best = Some((size, frame));
            }
        }
    }
    best.map(|(_, f)| f).or(empty_c)
}

/// Solution family of the coset equations on one coset pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    /// `A(i) = HA(i)`, `B(i) = ∅`.
    TrivialA,
    /// `A(i) = ∅`, `B(i) = HB(i)`.
    TrivialB,
    /// `A(i) = {a}`, `B(i) = HB(i) \ (a + C)`.
    SingletonA,
    /// `B(i) = {b}`, `A(i) = HA(i) \ (b + C)`.
    SingletonB,
    /// Two points on each side with equal sums different from the sum of the
    /// four points of `C`; only defined when `|C| = 4`.
    Doubleton,
    Other,
}

impl PairClass {
    pub fn is_trivial(self) -> bool {
        matches!(self, PairClass::TrivialA | PairClass::TrivialB)
    }

    pub fn is_singleton(self) -> bool {
        matches!(self, PairClass::SingletonA | PairClass::SingletonB)
    }

    pub fn name(self) -> &'static str {
        match self {
            PairClass::TrivialA => "trivial-a",
            PairClass::TrivialB => "trivial-b",
            PairClass::SingletonA => "singleton-a",
            PairClass::SingletonB => "singleton-b",
            PairClass::Doubleton => "doubleton",
            PairClass::Other => "other",
        }
    }
}

/// One matched pair of cosets with the cap's traces on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPair {
    pub ha: Coset,
    pub hb: Coset,
    pub a: PointSet,
    pub b: PointSet,
    pub a_prime: PointSet,
    pub b_prime: PointSet,
}

impl CosetPair {
    /// `A(i) + C = B'(i)` and `B(i) + C = A'(i)`.
    pub fn equations_hold(&self, c: &PointSet) -> bool {
        oplus(&self.a, c) == self.b_prime && oplus(&self.b, c) == self.a_prime
    }
}

/// Sum of the four points of `C`, when `|C| = 4`.
pub fn four_point_sum(c: &PointSet) -> Option<Point> {
    if c.len() != 4 {
        return None;
    }
    Point::new(c.iter().fold(0, |acc, p| acc ^ p.mask())).ok()
}

/// Classifies a pair known to satisfy the coset equations.
pub fn classify_sets(
    ha: &PointSet,
    hb: &PointSet,
    a: &PointSet,
    b: &PointSet,
    c: &PointSet,
) -> PairClass {
    if a == ha && b.is_empty() {
        return PairClass::TrivialA;
    }
    if a.is_empty() && b == hb {
        return PairClass::TrivialB;
    }
    if a.len() == 1 {
        let a1 = a.first().expect("one point");
        if *b == hb.difference(&c.translate(a1)) {
            return PairClass::SingletonA;
        }
    }
    if b.len() == 1 {
        let b1 = b.first().expect("one point");
        if *a == ha.difference(&c.translate(b1)) {
            return PairClass::SingletonB;
        }
    }
    if let Some(z0) = four_point_sum(c) {
        if a.len() == 2 && b.len() == 2 {
            let sa = a.iter().fold(0, |x, p| x ^ p.mask());
            let sb = b.iter().fold(0, |x, p| x ^ p.mask());
            if sa == sb && sa != z0.mask() {
                return PairClass::Doubleton;
            }
        }
    }
    PairClass::Other
}

/// The full slice apparatus of a cap against a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceDecomposition {
    pub frame: SliceFrame,
    pub s: PointSet,
    pub a: PointSet,
    pub b: PointSet,
    pub c: PointSet,
    pub a_prime: PointSet,
    pub b_prime: PointSet,
    pub c_prime: PointSet,
    pub f_tilde: Subspace,
    pub f: Subspace,
    pub c_hat: PointSet,
    /// Projective dimension of `F̃ = span(C)`; `-1` when `C` is empty.
    pub r: i32,
    pub pairs: Vec<CosetPair>,
    /// Class of each pair, `None` when its coset equations fail.
    pub classes: Vec<Option<PairClass>>,
    pub t: usize,
    pub u: usize,
    pub s_count: usize,
    pub m: usize,
    /// When `C` is empty: whether `S = Σ \ K_C`, the only complete option.
    pub c_empty_affine: Option<bool>,
}

pub fn decompose(s: &PointSet, frame: &SliceFrame) -> Result<SliceDecomposition> {
    let dim = frame.dim();
    if s.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim.n(),
            found: s.dim().n(),
        });
    }
    if let Some(p) = frame.h_inf.meets(s) {
        return Err(Error::FrameMeetsCap(p));
    }
    let h_a = frame.h_a();
    let h_b = frame.h_b();
    let h_c = frame.h_c();
    let a = s.intersection(&h_a);
    let b = s.intersection(&h_b);
    let c = s.intersection(&h_c);
    let a_prime = h_a.difference(&a);
    let b_prime = h_b.difference(&b);
    let c_prime = h_c.difference(&c);

    let mut out = SliceDecomposition {
        frame: frame.clone(),
        s: s.clone(),
        a,
        b,
        c,
        a_prime,
        b_prime,
        c_prime,
        f_tilde: Subspace::empty(dim),
        f: Subspace::empty(dim),
        c_hat: PointSet::empty(dim),
        r: -1,
        pairs: Vec::new(),
        classes: Vec::new(),
        t: 0,
        u: 0,
        s_count: 0,
        m: 0,
        c_empty_affine: None,
    };
    if out.c.is_empty() {
        out.c_empty_affine = Some(*s == frame.k_c.members().complement());
        return Ok(out);
    }

    let f_tilde = span(&out.c);
    let f = f_tilde.intersection(&frame.h_inf);
    let c_hat = f_tilde.members().difference(&f.members());
    let c_any = out.c.first().expect("nonempty");
    let ha_cosets = cosets_of(&f, &h_a)?;
    for ha in ha_cosets {
        let hb = Coset::new(
            Point::new(ha.representative.mask() ^ c_any.mask())?,
            f.clone(),
        )?;
        let ha_set = ha.members();
        let hb_set = hb.members();
        let pa = out.a.intersection(&ha_set);
        let pb = out.b.intersection(&hb_set);
        out.pairs.push(CosetPair {
            a_prime: ha_set.difference(&pa),
            b_prime: hb_set.difference(&pb),
            ha,
            hb,
            a: pa,
            b: pb,
        });
    }
    out.r = f_tilde.proj_dim();
    out.f_tilde = f_tilde;
    out.f = f;
    out.c_hat = c_hat;
    out.classes = (0..out.pairs.len())
        .map(|i| classify_pair(&out, i).ok())
        .collect();
    for cls in out.classes.iter().flatten() {
        match cls {
            PairClass::TrivialA => out.t += 1,
            PairClass::TrivialB => out.u += 1,
            PairClass::SingletonA | PairClass::SingletonB => out.s_count += 1,
            PairClass::Doubleton => out.m += 1,
            PairClass::Other => {}
        }
    }
    Ok(out)
}

impl SliceDecomposition {
    /// `A ⊔ B ⊔ C`.
    pub fn reassemble(&self) -> PointSet {
        self.a.union(&self.b).union(&self.c)
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }
}

pub fn coset_equations_hold(d: &SliceDecomposition) -> Vec<bool> {
    d.pairs.iter().map(|p| p.equations_hold(&d.c)).collect()
}

/// Detailed verdict on the global completeness equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalEquations {
    /// `A + B = C'`, `A + C = B'`, `B + C = A'`.
    pub cross: bool,
    /// `(A ⊕ A) ∪ (B ⊕ B) ∪ (C ⊕ C) = H∞`.
    pub h_inf_covered: bool,
    pub c_prime_missed: PointSet,
    pub b_prime_missed: PointSet,
    pub a_prime_missed: PointSet,
    pub h_inf_missed: PointSet,
}

pub fn global_equations(d: &SliceDecomposition) -> GlobalEquations {
    let ab = oplus(&d.a, &d.b);
    let ac = oplus(&d.a, &d.c);
    let bc = oplus(&d.b, &d.c);
    let cross = ab == d.c_prime && ac == d.b_prime && bc == d.a_prime;
    let mut inner = oplus(&d.a, &d.a);
    inner.union_with(&oplus(&d.b, &d.b));
    inner.union_with(&oplus(&d.c, &d.c));
    let h = d.frame.h_inf_points();
    GlobalEquations {
        cross,
        h_inf_covered: inner == h,
        c_prime_missed: d.c_prime.difference(&ab),
        b_prime_missed: d.b_prime.difference(&ac),
        a_prime_missed: d.a_prime.difference(&bc),
        h_inf_missed: h.difference(&inner),
    }
}

pub fn global_completeness_equations(d: &SliceDecomposition) -> (bool, bool) {
    let g = global_equations(d);
    (g.cross, g.h_inf_covered)
}

pub fn classify_pair(d: &SliceDecomposition, i: usize) -> Result<PairClass> {
    let p = d.pairs.get(i).ok_or(Error::PairIndex(i))?;
    if !p.equations_hold(&d.c) {
        return Err(Error::PairUnsolved { pair: i });
    }
    Ok(classify_sets(
        &p.ha.members(),
        &p.hb.members(),
        &p.a,
        &p.b,
        &d.c,
    ))
}

/// One coset pair in isolation, indexed locally for brute-force scans.
#[derive(Debug, Clone)]
pub struct PairGeometry {
    pub dim: Dim,
    pub ha: Vec<Point>,
    pub hb: Vec<Point>,
    pub c: PointSet,
    /// For each point of `ha`, the `hb` indices of `a + C`.
    a_plus_c: Vec<u32>,
    /// For each point of `hb`, the `ha` indices of `b + C`.
    b_plus_c: Vec<u32>,
}

/// Largest `F̃` dimension for which the pair scan is allowed.
pub const MAX_PAIR_SCAN_R: i32 = 4;

impl PairGeometry {
    /// Pair `index` of the decomposition of `H_A`, `H_B` under `frame` with
    /// slice `c` in `H_C`.
    pub fn new(frame: &SliceFrame, c: &PointSet, index: usize) -> Result<Self> {
        let dim = frame.dim();
        if c.is_empty() || !c.is_subset(&frame.h_c()) {
            return Err(Error::Precondition(
                "C must be a nonempty subset of H_C".into(),
            ));
        }
        let f_tilde = span(c);
        let f = f_tilde.intersection(&frame.h_inf);
        let cosets = cosets_of(&f, &frame.h_a())?;
        let ha = cosets.get(index).ok_or(Error::PairIndex(index))?;
        let c0 = c.first().expect("nonempty");
        let hb = Coset::new(Point::new(ha.representative.mask() ^ c0.mask())?, f.clone())?;
        Ok(Self::from_cosets(dim, ha.points(), hb.points(), c.clone()))
    }

    pub fn from_decomposition(d: &SliceDecomposition, index: usize) -> Result<Self> {
        let p = d.pairs.get(index).ok_or(Error::PairIndex(index))?;
        Ok(Self::from_cosets(
            d.frame.dim(),
            p.ha.points(),
            p.hb.points(),
            d.c.clone(),
        ))
    }

    fn from_cosets(dim: Dim, ha: Vec<Point>, hb: Vec<Point>, c: PointSet) -> Self {
        let idx = |set: &[Point], m: u32| set.iter().position(|p| p.mask() == m);
        let a_plus_c = ha
            .iter()
            .map(|a| {
                c.iter()
                    .filter_map(|x| idx(&hb, a.mask() ^ x.mask()))
                    .fold(0u32, |acc, j| acc | (1 << j))
            })
            .collect();
        let b_plus_c = hb
            .iter()
            .map(|b| {
                c.iter()
                    .filter_map(|x| idx(&ha, b.mask() ^ x.mask()))
                    .fold(0u32, |acc, j| acc | (1 << j))
            })
            .collect();
        PairGeometry {
            dim,
            ha,
            hb,
            c,
            a_plus_c,
            b_plus_c,
        }
    }

    pub fn coset_size(&self) -> usize {
        self.ha.len()
    }

    fn full(&self) -> u32 {
        if self.ha.len() == 32 {
            !0
        } else {
            (1u32 << self.ha.len()) - 1
        }
    }

    /// `A + C` as a local mask over `hb`.
    pub fn a_plus_c(&self, a_mask: u32) -> u32 {
        bits(a_mask).fold(0, |acc, i| acc | self.a_plus_c[i])
    }

    pub fn b_plus_c(&self, b_mask: u32) -> u32 {
        bits(b_mask).fold(0, |acc, j| acc | self.b_plus_c[j])
    }

    pub fn satisfies(&self, a_mask: u32, b_mask: u32) -> bool {
        let full = self.full();
        self.a_plus_c(a_mask) == !b_mask & full && self.b_plus_c(b_mask) == !a_mask & full
    }

    pub fn a_points(&self, a_mask: u32) -> Vec<Point> {
        bits(a_mask).map(|i| self.ha[i]).collect()
    }

    pub fn b_points(&self, b_mask: u32) -> Vec<Point> {
        bits(b_mask).map(|j| self.hb[j]).collect()
    }

    pub fn classify(&self, a_mask: u32, b_mask: u32) -> PairClass {
        let set = |pts: Vec<Point>| PointSet::from_points(self.dim, pts).expect("in range");
        classify_sets(
            &set(self.ha.clone()),
            &set(self.hb.clone()),
            &set(self.a_points(a_mask)),
            &set(self.b_points(b_mask)),
            &self.c,
        )
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A solution `(A(i), B(i))` of the coset equations on one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSolution {
    /// Local masks over the ascending point lists of the two cosets.
    pub a_mask: u32,
    pub b_mask: u32,
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    pub class: PairClass,
}

/// Every `(A(i), B(i))` on the pair satisfying the coset equations, by a
/// scan over all `2^{2^r} × 2^{2^r}` subset pairs. Sorted by
/// `(a_mask, b_mask)`.
pub fn enumerate_pair_solutions(g: &PairGeometry) -> Result<Vec<PairSolution>> {
    let size = g.coset_size();
    if size > 1 << MAX_PAIR_SCAN_R {
        return Err(Error::ScaleRefused(format!(
            "pair scan over cosets of {size} points needs 2^{} candidates",
            2 * size
        )));
    }
    let count = 1u32 << size;
    let full = g.full();
    let need_b: Vec<u32> = (0..count).map(|a| g.a_plus_c(a)).collect();
    let need_a: Vec<u32> = (0..count).map(|b| g.b_plus_c(b)).collect();
    let mut out = Vec::new();
    for a in 0..count {
        let want = need_b[a as usize];
        let a_comp = !a & full;
        for b in 0..count {
            if !b & full == want && need_a[b as usize] == a_comp {
                out.push(PairSolution {
                    a_mask: a,
                    b_mask: b,
                    a: g.a_points(a),
                    b: g.b_points(b),
                    class: g.classify(a, b),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Point {
        Point::from_digits(s).unwrap()
    }

    fn dim(n: u32) -> Dim {
        Dim::new(n).unwrap()
    }

    fn model_frame() -> SliceFrame {
        SliceFrame::from_normals(dim(4), d("0123"), d("4")).unwrap()
    }

    fn model_c() -> PointSet {
        PointSet::from_digit_strs(dim(4), &["04", "14", "24", "34"]).unwrap()
    }

    #[test]
    fn model_frame_parts() {
        let f = model_frame();
        assert_eq!(
            f.h_inf_points(),
            PointSet::from_digit_strs(dim(4), &["01", "02", "03", "12", "13", "23", "0123"])
                .unwrap()
        );
        assert_eq!(
            f.h_a(),
            PointSet::from_digit_strs(
                dim(4),
                &["4", "014", "024", "034", "124", "134", "234", "01234"]
            )
            .unwrap()
        );
        assert_eq!(f.normal_c, d("01234"));
        assert!(model_c().is_subset(&f.h_c()));
    }

    #[test]
    fn model_pair_solutions() {
        let g = PairGeometry::new(&model_frame(), &model_c(), 0).unwrap();
        let sols = enumerate_pair_solutions(&g).unwrap();
        let count = |c: PairClass| sols.iter().filter(|s| s.class == c).count();
        assert_eq!(count(PairClass::TrivialA) + count(PairClass::TrivialB), 2);
        assert_eq!(
            count(PairClass::SingletonA) + count(PairClass::SingletonB),
            16
        );
        assert_eq!(count(PairClass::Doubleton), 24);
        assert_eq!(count(PairClass::Other), 0);
        assert_eq!(sols.len(), 42);
    }

    #[test]
    fn model_doubleton_example() {
        let f = model_frame();
        let s =
            PointSet::from_digit_strs(dim(4), &["01234", "014", "2", "3", "04", "14", "24", "34"])
                .unwrap();
        let dec = decompose(&s, &f).unwrap();
        assert_eq!(dec.r, 3);
        assert_eq!(dec.pairs.len(), 1);
        assert_eq!(dec.pairs[0].ha.len(), 8);
        assert_eq!(classify_pair(&dec, 0), Ok(PairClass::Doubleton));
    }

    #[test]
    fn single_point_c_every_choice_solves() {
        let frame = SliceFrame::standard(dim(4));
        let c = PointSet::from_digit_strs(dim(4), &["34"]).unwrap();
        let g = PairGeometry::new(&frame, &c, 0).unwrap();
        let sols = enumerate_pair_solutions(&g).unwrap();
        assert_eq!(sols.len(), 2);
        for s in sols {
            // B(i) is HB(i) minus c0 + A(i).
            let expect = (!g.a_plus_c(s.a_mask)) & 1;
            assert_eq!(s.b_mask, expect);
        }
    }

    #[test]
    fn overfull_pair_fails() {
        let frame = SliceFrame::standard(dim(5));
        let c = PointSet::from_digit_strs(dim(5), &["045", "145", "0145"]).unwrap();
        let g = PairGeometry::new(&frame, &c, 0).unwrap();
        assert!(!g.satisfies(0b0001, 0b1111));
        assert!(g.satisfies(0b1111, 0));
        assert!(g.satisfies(0, 0b1111));
    }

    #[test]
    fn frame_meeting_cap_rejected() {
        let frame = SliceFrame::standard(dim(4));
        let s = PointSet::from_digit_strs(dim(4), &["0"]).unwrap();
        assert_eq!(
            decompose(&s, &frame).unwrap_err(),
            Error::FrameMeetsCap(d("0"))
        );
    }

    #[test]
    fn empty_c_reports_affine_special_case() {
        let frame = SliceFrame::standard(dim(4));
        let s = frame.k_c.members().complement();
        let dec = decompose(&s, &frame).unwrap();
        assert_eq!(dec.c_empty_affine, Some(true));
        assert!(dec.pairs.is_empty());
        assert_eq!(global_completeness_equations(&dec), (true, true));
    }

    #[test]
    fn no_frame_for_whole_space() {
        let s = PointSet::full(dim(3));
        assert!(find_disjoint_codim2(&s).is_none());
    }

    #[test]
    fn affine_complement_frame_inside_kc() {
        let d4 = dim(4);
        let kc = Subspace::orthogonal_hyperplane(d("4"), d4);
        let s = kc.members().complement();
        let h = find_disjoint_codim2(&s).unwrap();
        assert!(h.is_subspace_of(&kc));
        assert!(h.meets(&s).is_none());
    }
}
