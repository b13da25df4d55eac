use super::family::{assemble, general_family, FamilyGeometry, PairPlan};
use super::{Built, Certificate, Construction};
use crate::cap::{completeness, is_complete_cap, oplus, undouble, vertex_set, Undoubled};
use crate::error::{Error, Result};
use crate::geom::{span, Dim, Point, PointSet};
use crate::slices::{decompose, enumerate_pair_solutions, PairClass, PairGeometry, SliceFrame};

/// Largest number of plans the exhaustive fallback will try.
const SEARCH_BUDGET: u128 = 1 << 24;

/// `2^{n-1} - 3(s + m) - m + 4`: four points of `C`, eight per trivial pair,
/// five per singleton pair and four per doubleton pair.
pub fn c4_predicted_size(n: u32, m: u64, s: u64) -> i64 {
    (1i64 << (n - 1)) - 3 * (s + m) as i64 - m as i64 + 4
}

/// Parameter constraints for a non-planar four-point slice.
pub fn c4_admissible(n: u32, m: u64, s: u64) -> Result<()> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "a four-point slice spanning a solid needs n >= 5, got {n}"
        )));
    }
    let pairs = 1u64 << (n - 4);
    if m >= pairs || s >= pairs {
        return Err(Error::Precondition(format!(
            "m and s must be below {pairs}"
        )));
    }
    if m + s == 0 || m + s >= pairs {
        return Err(Error::Precondition(format!(
            "need 1 <= m + s <= {}, got {}",
            pairs - 1,
            m + s
        )));
    }
    if (m, s) == (1, 0) {
        return Err(Error::Precondition(
            "a single doubleton pair and no singleton cannot cover span(C) \\ C".into(),
        ));
    }
    Ok(())
}

/// How a four-point cap was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C4Route {
    /// `t = 1`, `u = T - 1`, covered by the sufficient condition.
    Sufficient,
    /// Exhaustive search over plans with the requested class counts.
    Search { examined: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C4Outcome {
    pub n: u32,
    pub m: u64,
    pub s: u64,
    pub predicted_size: usize,
    pub route: C4Route,
    /// `None` when no plan with these counts gives a complete cap.
    pub built: Option<Built>,
}

fn four_point_geometry(dim: Dim) -> Result<FamilyGeometry> {
    let c0 = FamilyGeometry::c0_for(dim).mask();
    let c = PointSet::from_masks(dim, (0..4).map(|i| c0 | (1 << i)))?;
    FamilyGeometry::new(dim, c)
}

/// Concrete solutions of one pair, by class.
struct PairMenu {
    singletons: Vec<PairPlan>,
    doubletons: Vec<(PairPlan, PointSet)>,
}

fn menus(g: &FamilyGeometry) -> Result<Vec<PairMenu>> {
    (0..g.num_pairs())
        .map(|i| {
            let pg = PairGeometry::new(&g.frame, &g.c, i)?;
            let sols = enumerate_pair_solutions(&pg)?;
            let mut menu = PairMenu {
                singletons: Vec::new(),
                doubletons: Vec::new(),
            };
            let dim = g.dim();
            for sol in sols {
                let plan = PairPlan::Explicit {
                    a: sol.a.clone(),
                    b: sol.b.clone(),
                };
                match sol.class {
                    PairClass::SingletonA | PairClass::SingletonB => menu.singletons.push(plan),
                    PairClass::Doubleton => {
                        let a = PointSet::from_points(dim, sol.a)?;
                        let b = PointSet::from_points(dim, sol.b)?;
                        menu.doubletons.push((plan, oplus(&a, &b)));
                    }
                    _ => {}
                }
            }
            Ok(menu)
        })
        .collect()
}

/// A complete cap with a non-planar four-point slice, `m` doubleton pairs
/// and `s` singleton pairs.
///
/// With `T = 2^{n-4} - s - m` trivial pairs and `T != 2`, taking one full
/// A-pair and `T - 1` full B-pairs meets the sufficient condition. When
/// `T = 2` it cannot (two trivial pairs are either balanced or periodic),
/// and every plan with the requested counts is tried instead.
pub fn c4_construct(dim: Dim, m: u64, s: u64) -> Result<C4Outcome> {
    let n = dim.n();
    c4_admissible(n, m, s)?;
    let g = four_point_geometry(dim)?;
    let menus = menus(&g)?;
    let pairs = g.num_pairs();
    let trivial = pairs - (m + s) as usize;
    let predicted = c4_predicted_size(n, m, s) as usize;
    let mut outcome = C4Outcome {
        n,
        m,
        s,
        predicted_size: predicted,
        route: C4Route::Sufficient,
        built: None,
    };
    if trivial != 2 {
        if let Some(built) = sufficient_route(&g, &menus, m as usize, s as usize)? {
            outcome.built = Some(built);
            return Ok(outcome);
        }
    }
    let (examined, found) = search_route(&g, &menus, m as usize, s as usize, trivial)?;
    outcome.route = C4Route::Search { examined };
    outcome.built = found.map(|cap| {
        let params = vec![("n", n as i64), ("m", m as i64), ("s", s as i64)];
        Built {
            certificate: Certificate::check(Construction::FourPoint, params, predicted, &cap),
            cap,
        }
    });
    Ok(outcome)
}

fn sufficient_route(
    g: &FamilyGeometry,
    menus: &[PairMenu],
    m: usize,
    s: usize,
) -> Result<Option<Built>> {
    let target = g.c_hat.difference(&g.c);
    let mut covered = PointSet::empty(g.dim());
    let mut plan = Vec::with_capacity(g.num_pairs());
    for menu in &menus[..s] {
        plan.push(menu.singletons[0].clone());
        covered = target.clone();
    }
    for menu in &menus[s..s + m] {
        // First doubleton covering the most still-uncovered points.
        let gain = |x: &PointSet| x.intersection(&target).difference(&covered).len();
        let best = menu.doubletons.iter().map(|(_, x)| gain(x)).max();
        let (choice, sums) = menu
            .doubletons
            .iter()
            .find(|(_, x)| Some(gain(x)) == best)
            .expect("doubletons exist");
        plan.push(choice.clone());
        covered.union_with(sums);
    }
    plan.push(PairPlan::TrivialA);
    while plan.len() < g.num_pairs() {
        plan.push(PairPlan::TrivialB);
    }
    match general_family(g, &plan) {
        Ok(mut built) => {
            built.certificate.construction = Construction::FourPoint;
            Ok(Some(built))
        }
        Err(Error::Hypothesis(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn multinomial(parts: &[usize]) -> u128 {
    let mut total = 0usize;
    let mut out = 1u128;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            out = out * total as u128 / i as u128;
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Slot {
    Single,
    Double,
    FullA,
    FullB,
}

fn search_route(
    g: &FamilyGeometry,
    menus: &[PairMenu],
    m: usize,
    s: usize,
    trivial: usize,
) -> Result<(u64, Option<PointSet>)> {
    let mut estimate = 0u128;
    for t in 0..=trivial {
        estimate +=
            multinomial(&[s, m, t, trivial - t]) * 16u128.pow(s as u32) * 24u128.pow(m as u32);
    }
    if estimate > SEARCH_BUDGET {
        return Err(Error::ScaleRefused(format!(
            "exhaustive plan search would try about {estimate} plans"
        )));
    }
    let mut examined = 0u64;
    for t in 0..=trivial {
        let mut counts = [s, m, t, trivial - t];
        let mut plan = Vec::with_capacity(g.num_pairs());
        if let Some(cap) = dfs(g, menus, &mut counts, &mut plan, &mut examined)? {
            return Ok((examined, Some(cap)));
        }
    }
    Ok((examined, None))
}

fn dfs(
    g: &FamilyGeometry,
    menus: &[PairMenu],
    counts: &mut [usize; 4],
    plan: &mut Vec<PairPlan>,
    examined: &mut u64,
) -> Result<Option<PointSet>> {
    let i = plan.len();
    if i == g.num_pairs() {
        *examined += 1;
        let cap = assemble(g, plan)?;
        return Ok(is_complete_cap(&cap).then_some(cap));
    }
    for (k, slot) in [Slot::Single, Slot::Double, Slot::FullA, Slot::FullB]
        .into_iter()
        .enumerate()
    {
        if counts[k] == 0 {
            continue;
        }
        counts[k] -= 1;
        let choices: Vec<PairPlan> = match slot {
            Slot::Single => menus[i].singletons.clone(),
            Slot::Double => menus[i].doubletons.iter().map(|(p, _)| p.clone()).collect(),
            Slot::FullA => vec![PairPlan::TrivialA],
            Slot::FullB => vec![PairPlan::TrivialB],
        };
        for choice in choices {
            plan.push(choice);
            let found = dfs(g, menus, counts, plan, examined)?;
            plan.pop();
            if found.is_some() {
                counts[k] += 1;
                return Ok(found);
            }
        }
        counts[k] += 1;
    }
    Ok(None)
}

/// Analysis of a cap whose slice `C` has four points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarVerdict {
    /// `C` lies in a plane, so it is an affine plane and periodic.
    pub planar: bool,
    pub is_complete: bool,
    /// A vertex of `C` that also fixes `S`.
    pub vertex: Option<Point>,
    /// `|S| = 2^{n-1} + 4`.
    pub large_size: bool,
    pub undoubled: Option<Undoubled>,
    pub undoubled_complete: Option<bool>,
}

pub fn c4_planar_case(s: &PointSet, frame: &SliceFrame) -> Result<PlanarVerdict> {
    let d = decompose(s, frame)?;
    if d.c.len() != 4 {
        return Err(Error::Precondition(format!(
            "|C| = {}, expected 4",
            d.c.len()
        )));
    }
    let planar = span(&d.c).proj_dim() == 2;
    let is_complete = completeness(s).is_complete;
    let mut verdict = PlanarVerdict {
        planar,
        is_complete,
        vertex: None,
        large_size: s.len() == (1 << (s.dim().n() - 1)) + 4,
        undoubled: None,
        undoubled_complete: None,
    };
    if planar {
        let v = vertex_set(&d.c).points.iter().find(|&v| s.is_fixed_by(v));
        if let Some(v) = v {
            let u = undouble(s, v)?;
            verdict.undoubled_complete = Some(is_complete_cap(&u.projected));
            verdict.undoubled = Some(u);
        }
        verdict.vertex = v;
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(c4_admissible(5, 1, 0).is_err());
        assert!(c4_admissible(5, 0, 1).is_ok());
        assert!(c4_admissible(5, 0, 2).is_err());
        assert!(c4_admissible(4, 0, 1).is_err());
        assert!(c4_admissible(6, 2, 0).is_ok());
    }

    #[test]
    fn smallest_case() {
        let out = c4_construct(Dim::new(5).unwrap(), 0, 1).unwrap();
        let built = out.built.unwrap();
        assert_eq!(out.route, C4Route::Sufficient);
        assert!(built.certificate.verified());
        assert_eq!(built.cap.len(), 17);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 2]), 12);
        assert_eq!(multinomial(&[0, 4]), 1);
    }
}
