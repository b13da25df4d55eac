use std::collections::BTreeMap;

use super::enumerate::{enumerate_complete_caps, has_slice, SearchConstraints};
use super::partition_search::partition_chain;
use crate::cap::{completeness, plotkin_double};
use crate::catalog;
use crate::construct::{
    c4_admissible, c4_construct, general_family, partition_to_cap, tangent_cap,
    trivial_and_singleton_plan, two_trivial_family, Built, Certificate, Construction,
    FamilyGeometry, TwoTrivial,
};
use crate::error::{Error, Result};
use crate::geom::{Dim, Point, PointSet};
use crate::slices::SliceFrame;

/// One verified cap of a given size and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub size: usize,
    pub cap: PointSet,
    pub source: String,
}

/// Sizes achieved under some constraints, one verified witness per size.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Spectrum {
    /// Sorted.
    pub sizes: Vec<usize>,
    /// Sorted by size, one per entry of `sizes`.
    pub witnesses: Vec<Witness>,
    /// Sizes the constructions predict but did not produce.
    pub not_produced: Vec<usize>,
    /// How many caps were seen for each size (search modes only).
    pub counts: BTreeMap<usize, usize>,
}

impl Spectrum {
    fn add(&mut self, cap: PointSet, source: String) -> Result<()> {
        let size = cap.len();
        if !completeness(&cap).is_complete {
            return Err(Error::NotComplete);
        }
        *self.counts.entry(size).or_default() += 1;
        if !self.sizes.contains(&size) {
            self.sizes.push(size);
            self.witnesses.push(Witness { size, cap, source });
        }
        Ok(())
    }

    fn finish(mut self) -> Self {
        self.sizes.sort_unstable();
        self.witnesses.sort_by_key(|w| w.size);
        self.not_produced.sort_unstable();
        self.not_produced.dedup();
        self.not_produced.retain(|s| !self.sizes.contains(s));
        self
    }

    pub fn witness(&self, size: usize) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.size == size)
    }
}

/// Sizes of every complete cap the search finds under `c`.
pub fn spectrum(c: &SearchConstraints) -> Result<Spectrum> {
    let mut out = Spectrum::default();
    let source = format!("{:?} search", c.mode).to_lowercase();
    for cap in enumerate_complete_caps(c)? {
        out.add(cap, source.clone())?;
    }
    Ok(out.finish())
}

/// Sizes produced by the explicit constructions for caps whose slice `C`
/// has `slice_size` points (a solid for four points), each witness checked
/// by the completeness oracle and, for `n <= 8`, by a slice scan.
///
/// For four points, sizes of the interval `[2^{n-2} + 8, 2^{n-1} - 2]` that
/// no construction reaches are listed in `not_produced`.
pub fn construction_spectrum(dim: Dim, slice_size: usize) -> Result<Spectrum> {
    let n = dim.n();
    let mut out = Spectrum::default();
    let mut push = |built: Built, source: String, out: &mut Spectrum| -> Result<()> {
        if !built.certificate.verified() {
            return Ok(());
        }
        if n <= 8 && !has_slice(&built.cap, slice_size, (slice_size == 4).then_some(3)) {
            return Err(Error::Precondition(format!(
                "{source} produced a cap without a {slice_size}-point slice"
            )));
        }
        out.add(built.cap, source)
    };
    match slice_size {
        1 => {
            if n < 3 {
                return Err(Error::Precondition("one-point slices need n >= 3".into()));
            }
            let frame = SliceFrame::standard(dim);
            // An odd slice is never periodic.
            let a = PointSet::from_points(dim, frame.h_a().first())?;
            let c0 = FamilyGeometry::c0_for(dim);
            push(
                tangent_cap(&a, c0, &frame)?.built,
                "tangent".into(),
                &mut out,
            )?;
        }
        2 => {
            if n < 4 {
                return Err(Error::Precondition("two-point slices need n >= 4".into()));
            }
            let lower = Dim::new(n - 1)?;
            let frame = SliceFrame::standard(lower);
            let a = PointSet::from_points(lower, frame.h_a().first())?;
            let base = tangent_cap(&a, FamilyGeometry::c0_for(lower), &frame)?
                .built
                .cap;
            let v = Point::new(1 << n | 1)?;
            let cap = plotkin_double(&base, v)?;
            let size = cap.len();
            let built = Built {
                certificate: Certificate::check(
                    Construction::Double,
                    vec![("n", n as i64)],
                    size,
                    &cap,
                ),
                cap,
            };
            push(built, "double of a tangent cap".into(), &mut out)?;
        }
        3 => three_point(dim, &mut out, &mut push)?,
        4 => {
            if n < 5 {
                return Err(Error::Precondition("four-point slices need n >= 5".into()));
            }
            let pairs = 1u64 << (n - 4);
            for m in 0..pairs {
                for s in 0..pairs {
                    if c4_admissible(n, m, s).is_err() {
                        continue;
                    }
                    let outcome = c4_construct(dim, m, s)?;
                    match outcome.built {
                        Some(b) => push(b, format!("four-point m={m} s={s}"), &mut out)?,
                        None => out.not_produced.push(outcome.predicted_size),
                    }
                }
            }
            let lo = (1usize << (n - 2)) + 8;
            let hi = (1usize << (n - 1)) - 2;
            out.not_produced.extend(lo..=hi);
        }
        _ => {
            return Err(Error::Precondition(format!(
                "no constructions for slices of {slice_size} points"
            )))
        }
    }
    Ok(out.finish())
}

type Push<'a> = dyn FnMut(Built, String, &mut Spectrum) -> Result<()> + 'a;

fn three_point(dim: Dim, out: &mut Spectrum, push: &mut Push<'_>) -> Result<()> {
    let n = dim.n();
    if n < 4 {
        return Err(Error::Precondition("three-point slices need n >= 4".into()));
    }
    let g = FamilyGeometry::c_hat_minus_one(dim, 2)?;
    let pairs = g.num_pairs();
    // One full A-pair, T - 1 full B-pairs, singletons elsewhere.
    for trivial in (1..pairs).filter(|&t| t != 2) {
        let plan = trivial_and_singleton_plan(&g, 1, trivial - 1)?;
        match general_family(&g, &plan) {
            Ok(b) => push(b, format!("coset family t=1 u={}", trivial - 1), out)?,
            Err(Error::Hypothesis(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if n >= 7 {
        push(
            two_trivial_family(dim, 2, TwoTrivial::Mixed)?,
            "two trivial pairs".into(),
            out,
        )?;
        let seed = catalog::seed_partition();
        let chain = partition_chain(&seed, catalog::SEED_ANCHORS, n - 3)?;
        let last = chain.last().expect("chain starts at the seed");
        push(
            partition_to_cap(last)?,
            format!("partition k={}", last.k()),
            out,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::SearchMode;

    #[test]
    fn plane_spectrum() {
        let sp = spectrum(&SearchConstraints::new(Dim::new(2).unwrap())).unwrap();
        assert_eq!(sp.sizes, vec![4]);
        assert_eq!(sp.counts[&4], 7);
    }

    #[test]
    fn small_constructions() {
        let dim = Dim::new(5).unwrap();
        assert_eq!(construction_spectrum(dim, 1).unwrap().sizes, vec![17]);
        assert_eq!(construction_spectrum(dim, 2).unwrap().sizes, vec![18]);
        assert_eq!(construction_spectrum(dim, 3).unwrap().sizes, vec![13, 17]);
    }

    #[test]
    fn structured_mode_is_labelled() {
        let c = SearchConstraints::structured(Dim::new(4).unwrap(), 3);
        assert_eq!(c.mode, SearchMode::Structured);
        let sp = spectrum(&c).unwrap();
        assert_eq!(sp.sizes, vec![9]);
        assert!(sp.witnesses[0].source.contains("structured"));
    }
}
