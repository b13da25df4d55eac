use std::fmt;

use super::{Built, Certificate, Construction};
use crate::cap::oplus;
use crate::error::{Error, Result};
use crate::geom::{cosets_of, span, Coset, Dim, Point, PointSet, QuotientMap, Subspace};
use crate::slices::{decompose, PairClass, SliceDecomposition, SliceFrame};

/// The standard frame with a fixed slice `C` in `H_C`, and its coset pairs.
///
/// In the standard frame `c0 = e_{n-1} + e_n` and `H_A` is the set of
/// points containing `e_{n-1}` but not `e_n`.
#[derive(Debug, Clone)]
pub struct FamilyGeometry {
    pub frame: SliceFrame,
    pub c: PointSet,
    pub f_tilde: Subspace,
    pub f: Subspace,
    pub c_hat: PointSet,
    pub r: u32,
    pub pairs: Vec<(Coset, Coset)>,
}

impl FamilyGeometry {
    pub fn new(dim: Dim, c: PointSet) -> Result<Self> {
        let frame = SliceFrame::standard(dim);
        if c.is_empty() || !c.is_subset(&frame.h_c()) {
            return Err(Error::Precondition(
                "C must be a nonempty subset of H_C".into(),
            ));
        }
        let f_tilde = span(&c);
        let r = f_tilde.proj_dim() as u32;
        if r + 2 > dim.n() {
            return Err(Error::Precondition(format!(
                "span(C) has dimension {r}; the coset family needs r <= n-2"
            )));
        }
        let f = f_tilde.intersection(&frame.h_inf);
        let c_hat = f_tilde.members().difference(&f.members());
        let c_any = c.first().expect("nonempty");
        let pairs = cosets_of(&f, &frame.h_a())?
            .into_iter()
            .map(|ha| {
                let hb = Coset::new(
                    Point::new(ha.representative.mask() ^ c_any.mask()).expect("off F"),
                    f.clone(),
                )
                .expect("off F");
                (ha, hb)
            })
            .collect();
        Ok(FamilyGeometry {
            frame,
            c,
            f_tilde,
            f,
            c_hat,
            r,
            pairs,
        })
    }

    /// `C = Ĉ \ {c0}` with `F = span{e_0, …, e_{r-1}}`.
    pub fn c_hat_minus_one(dim: Dim, r: u32) -> Result<Self> {
        if r < 1 || r + 2 > dim.n() {
            return Err(Error::Precondition(format!(
                "need 1 <= r <= n-2, got r = {r}"
            )));
        }
        let c0 = Self::c0_for(dim);
        let c = PointSet::from_masks(dim, (1..1u32 << r).map(|f| c0.mask() ^ f))?;
        Self::new(dim, c)
    }

    pub fn c0_for(dim: Dim) -> Point {
        Point::new(0b11 << (dim.n() - 1)).expect("nonzero")
    }

    pub fn dim(&self) -> Dim {
        self.frame.dim()
    }

    pub fn c0(&self) -> Point {
        Self::c0_for(self.dim())
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn coset_size(&self) -> usize {
        1 << self.r
    }

    /// `X + C` for `X` disjoint from `C`.
    fn plus_c(&self, x: &PointSet) -> PointSet {
        oplus(x, &self.c)
    }
}

/// How to fill one coset pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairPlan {
    /// `A(i) = HA(i)`, `B(i) = ∅`.
    TrivialA,
    /// `A(i) = ∅`, `B(i) = HB(i)`.
    TrivialB,
    /// `A(i) = {a}`, `B(i) = HB(i) \ (a + C)`.
    SingletonA(Point),
    /// `B(i) = {b}`, `A(i) = HA(i) \ (b + C)`.
    SingletonB(Point),
    /// `A(i) = {a1, a2}`, `B(i) = HB(i) \ (A(i) + C)`.
    Doubleton(Point, Point),
    Explicit {
        a: Vec<Point>,
        b: Vec<Point>,
    },
}

impl PairPlan {
    fn fill(&self, g: &FamilyGeometry, ha: &Coset, hb: &Coset) -> Result<(PointSet, PointSet)> {
        let dim = g.dim();
        let ha_set = ha.members();
        let hb_set = hb.members();
        let within = |pts: &[Point], set: &PointSet, side: &str| -> Result<PointSet> {
            let out = PointSet::from_points(dim, pts.iter().copied())?;
            if out.len() != pts.len() || !out.is_subset(set) {
                return Err(Error::Precondition(format!(
                    "anchors {pts:?} are not distinct points of H{side}({})",
                    ha.representative
                )));
            }
            Ok(out)
        };
        Ok(match self {
            PairPlan::TrivialA => (ha_set, PointSet::empty(dim)),
            PairPlan::TrivialB => (PointSet::empty(dim), hb_set),
            PairPlan::SingletonA(a) => {
                let a = within(&[*a], &ha_set, "A")?;
                let b = hb_set.difference(&g.plus_c(&a));
                (a, b)
            }
            PairPlan::Doubleton(a1, a2) => {
                let a = within(&[*a1, *a2], &ha_set, "A")?;
                let b = hb_set.difference(&g.plus_c(&a));
                (a, b)
            }
            PairPlan::SingletonB(b) => {
                let b = within(&[*b], &hb_set, "B")?;
                let a = ha_set.difference(&g.plus_c(&b));
                (a, b)
            }
            PairPlan::Explicit { a, b } => (within(a, &ha_set, "A")?, within(b, &hb_set, "B")?),
        })
    }
}

/// A hypothesis of the coset-family sufficient condition that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyHypothesis {
    /// `A(i) + C = B'(i)` or `B(i) + C = A'(i)` fails.
    CosetEquations { pair: usize },
    /// `t + u` must lie strictly between 0 and the number of pairs.
    TrivialCount { trivial: usize, pairs: usize },
    /// `t = u`.
    EqualTrivialSides { t: usize },
    /// The images of the full A-cosets and of the full B-cosets are both
    /// periodic in the quotient by `F`.
    FullSidesPeriodic,
    /// Points of `Ĉ \ C` on no `A(i) + B(i)`.
    CHatUncovered(Vec<Point>),
    /// The frame leaves `C` empty.
    EmptyC,
}

impl fmt::Display for FamilyHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyHypothesis::CosetEquations { pair } => {
                write!(f, "coset equations fail on pair {pair}")
            }
            FamilyHypothesis::TrivialCount { trivial, pairs } => write!(
                f,
                "{trivial} trivial pairs out of {pairs}; need strictly between 0 and {pairs}"
            ),
            FamilyHypothesis::EqualTrivialSides { t } => {
                write!(f, "t = u = {t}; the two trivial sides must differ in size")
            }
            FamilyHypothesis::FullSidesPeriodic => {
                write!(
                    f,
                    "full A-cosets and full B-cosets are both periodic in the quotient"
                )
            }
            FamilyHypothesis::CHatUncovered(pts) => {
                write!(f, "points of span(C) outside C on no A(i) + B(i): {pts:?}")
            }
            FamilyHypothesis::EmptyC => write!(f, "C is empty"),
        }
    }
}

/// Whether a set of nonzero masks has a vertex; the empty set counts as
/// periodic.
fn masks_periodic(masks: &[u32]) -> bool {
    if masks.is_empty() {
        return true;
    }
    if masks.len() % 2 == 1 {
        return false;
    }
    let mut sorted = masks.to_vec();
    sorted.sort_unstable();
    let has = |m: u32| sorted.binary_search(&m).is_ok();
    let m0 = sorted[0];
    sorted[1..]
        .iter()
        .any(|&y| sorted.iter().all(|&x| has(x ^ m0 ^ y)))
}

/// Every failed hypothesis of the sufficient condition for completeness;
/// empty when all hold.
pub fn check_family_hypotheses(d: &SliceDecomposition) -> Vec<FamilyHypothesis> {
    let mut out = Vec::new();
    if d.c.is_empty() {
        out.push(FamilyHypothesis::EmptyC);
        return out;
    }
    for (i, cls) in d.classes.iter().enumerate() {
        if cls.is_none() {
            out.push(FamilyHypothesis::CosetEquations { pair: i });
        }
    }
    let pairs = d.pairs.len();
    let trivial = d.t + d.u;
    if trivial == 0 || trivial >= pairs {
        out.push(FamilyHypothesis::TrivialCount { trivial, pairs });
    }
    if d.t == d.u {
        out.push(FamilyHypothesis::EqualTrivialSides { t: d.t });
    }
    let q = QuotientMap::new(&d.f);
    let images = |class: PairClass, a_side: bool| -> Vec<u32> {
        d.pairs
            .iter()
            .zip(&d.classes)
            .filter(|(_, c)| **c == Some(class))
            .map(|(p, _)| {
                let rep = if a_side {
                    p.ha.representative
                } else {
                    p.hb.representative
                };
                q.image_mask(rep)
            })
            .collect()
    };
    if masks_periodic(&images(PairClass::TrivialA, true))
        && masks_periodic(&images(PairClass::TrivialB, false))
    {
        out.push(FamilyHypothesis::FullSidesPeriodic);
    }
    let mut covered = PointSet::empty(d.s.dim());
    for p in &d.pairs {
        covered.union_with(&oplus(&p.a, &p.b));
    }
    let missing: Vec<Point> = d.c_hat.difference(&d.c).difference(&covered).to_vec();
    if !missing.is_empty() {
        out.push(FamilyHypothesis::CHatUncovered(missing));
    }
    out
}

/// Builds `S = A ⊔ B ⊔ C` from a per-pair plan, checks every hypothesis of
/// the sufficient condition, then certifies completeness with the oracle.
pub fn general_family(g: &FamilyGeometry, plan: &[PairPlan]) -> Result<Built> {
    let s = assemble(g, plan)?;
    let d = decompose(&s, &g.frame)?;
    let failed = check_family_hypotheses(&d);
    if !failed.is_empty() {
        let text: Vec<String> = failed.iter().map(|h| h.to_string()).collect();
        return Err(Error::Hypothesis(text.join("; ")));
    }
    let predicted = s.len();
    let params = vec![
        ("n", g.dim().n() as i64),
        ("r", g.r as i64),
        ("c", g.c.len() as i64),
        ("t", d.t as i64),
        ("u", d.u as i64),
        ("s", d.s_count as i64),
        ("m", d.m as i64),
    ];
    Ok(Built {
        certificate: Certificate::check(Construction::CosetFamily, params, predicted, &s),
        cap: s,
    })
}

/// `A ⊔ B ⊔ C` per plan, without any checks beyond anchor placement.
pub(crate) fn assemble(g: &FamilyGeometry, plan: &[PairPlan]) -> Result<PointSet> {
    if plan.len() != g.num_pairs() {
        return Err(Error::Precondition(format!(
            "plan has {} entries for {} coset pairs",
            plan.len(),
            g.num_pairs()
        )));
    }
    let mut s = g.c.clone();
    for (p, (ha, hb)) in plan.iter().zip(&g.pairs) {
        let (a, b) = p.fill(g, ha, hb)?;
        s.union_with(&a);
        s.union_with(&b);
    }
    Ok(s)
}

/// `t` full A-pairs, then `u` full B-pairs, then singleton pairs anchored at
/// the smallest point of each remaining A-coset.
pub fn trivial_and_singleton_plan(g: &FamilyGeometry, t: usize, u: usize) -> Result<Vec<PairPlan>> {
    let pairs = g.num_pairs();
    if t + u > pairs {
        return Err(Error::Precondition(format!(
            "t + u = {} exceeds {pairs} pairs",
            t + u
        )));
    }
    Ok((0..pairs)
        .map(|i| {
            if i < t {
                PairPlan::TrivialA
            } else if i < t + u {
                PairPlan::TrivialB
            } else {
                PairPlan::SingletonA(g.pairs[i].0.representative)
            }
        })
        .collect())
}

/// `|S| = 2^{n-1} + 2^r - 1 - (2^r - 2) s` for the family with a single point
/// in `Ĉ \ C` and `s` singleton pairs.
pub fn size_by_singletons(n: u32, r: u32, s: u64) -> i64 {
    (1i64 << (n - 1)) + (1i64 << r) - 1 - ((1i64 << r) - 2) * s as i64
}

/// The same sizes as `2^{n-r} + k (2^r - 2) + 1`, where `k = t + u + 1` and
/// `t + u = 2^{n-r-1} - s`.
pub fn size_by_k(n: u32, r: u32, k: u64) -> i64 {
    (1i64 << (n - r)) + k as i64 * ((1i64 << r) - 2) + 1
}

/// Result of the all-singleton construction with its covering check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonFamily {
    pub built: Built,
    /// `A ⊕ A = H∞ \ F`, which is equivalent to completeness here.
    pub a_oplus_a_covers: bool,
}

/// One point `α_i` per A-coset, `β_i = α_i + c0`, `C = Ĉ \ {c0}`.
pub fn c_full_minus_one_family(dim: Dim, r: u32, alphas: &[Point]) -> Result<SingletonFamily> {
    let g = FamilyGeometry::c_hat_minus_one(dim, r)?;
    if alphas.len() != g.num_pairs() {
        return Err(Error::Precondition(format!(
            "need one point per coset: {} given, {} cosets",
            alphas.len(),
            g.num_pairs()
        )));
    }
    let plan: Vec<PairPlan> = alphas.iter().map(|&a| PairPlan::SingletonA(a)).collect();
    let s = assemble(&g, &plan)?;
    let a = PointSet::from_points(dim, alphas.iter().copied())?;
    let target = g.frame.h_inf_points().difference(&g.f.members());
    let covers = oplus(&a, &a) == target;
    let predicted = size_by_singletons(dim.n(), r, g.num_pairs() as u64) as usize;
    let params = vec![
        ("n", dim.n() as i64),
        ("r", r as i64),
        ("s", g.num_pairs() as i64),
    ];
    Ok(SingletonFamily {
        built: Built {
            certificate: Certificate::check(Construction::AllSingletons, params, predicted, &s),
            cap: s,
        },
        a_oplus_a_covers: covers,
    })
}

/// Which two pairs carry the trivial solution in [`two_trivial_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoTrivial {
    /// `t = u = 1`.
    Mixed,
    /// `t = 2`, `u = 0`.
    BothA,
}

/// The family with `s = 2^{n-r-1} - 2` singleton pairs, of size
/// `2^{n-r} + 2^{r+1} + 2^r - 5`.
///
/// Pairs 0 and 1 are trivial. The `2^r` points of the coset left uncovered
/// by the sufficient condition must each be a sum of two singleton anchors
/// from distinct pairs, so the remaining pairs are matched as `{x, x + 1}`
/// (in coset coordinates) and the j-th match is given anchors differing by
/// the j-th vector of `F ∪ {0}`. That needs `2^{r+1}` distinct pairs, which
/// is possible exactly when `n >= 2r + 3`.
pub fn two_trivial_family(dim: Dim, r: u32, kind: TwoTrivial) -> Result<Built> {
    let g = FamilyGeometry::c_hat_minus_one(dim, r)?;
    let n = dim.n();
    let pairs = g.num_pairs();
    let needed = 1usize << (r + 1);
    if pairs < needed + 2 {
        return Err(Error::Hypothesis(format!(
            "the {} points of the uncovered coset need {needed} singleton anchors in distinct \
             pairs, but only {} singleton pairs exist (requires n >= 2r + 3 = {})",
            1u32 << r,
            pairs - 2,
            2 * r + 3
        )));
    }
    // Pair i has A-coset {e_{n-1} + (i << r) + f : f in F ∪ {0}}.
    let anchor =
        |i: usize, f: u32| Point::new((1u32 << (n - 1)) | ((i as u32) << r) | f).expect("nz");
    let mut plan = vec![PairPlan::TrivialA; pairs];
    plan[1] = match kind {
        TwoTrivial::Mixed => PairPlan::TrivialB,
        TwoTrivial::BothA => PairPlan::TrivialA,
    };
    for (j, x) in (2..pairs).step_by(2).enumerate() {
        // x even, so x and x ^ 1 differ by the vector of pair 1.
        let f = if j < (1 << r) { j as u32 } else { 0 };
        plan[x] = PairPlan::SingletonA(anchor(x, 0));
        plan[x ^ 1] = PairPlan::SingletonA(anchor(x ^ 1, f));
    }
    let s = assemble(&g, &plan)?;
    let predicted = ((1usize << (n - r)) + (1 << (r + 1)) + (1 << r)) - 5;
    let params = vec![
        ("n", n as i64),
        ("r", r as i64),
        ("s", (pairs - 2) as i64),
        ("t", if kind == TwoTrivial::Mixed { 1 } else { 2 }),
        ("u", if kind == TwoTrivial::Mixed { 1 } else { 0 }),
    ];
    Ok(Built {
        certificate: Certificate::check(Construction::TwoTrivial, params, predicted, &s),
        cap: s,
    })
}
