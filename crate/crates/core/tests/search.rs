mod common;

use pgcaps::catalog;
use pgcaps::search::{
    all_complete_caps, canonical_slice, construction_spectrum, count_partitions,
    counting_identity_check, enumerate_complete_caps, enumerate_structured, partition_search,
    PartitionMode, SearchConstraints,
};
use pgcaps::slices::SliceFrame;
use pgcaps::{Dim, Error, PointSet};

fn dim(n: u32) -> Dim {
    Dim::new(n).unwrap()
}

/// Complete caps meeting `K_C` in exactly `c` and missing `H∞`.
fn framed(all: &[PointSet], frame: &SliceFrame, c: &PointSet) -> Vec<PointSet> {
    let k_c = frame.h_c().union(&frame.h_inf_points());
    all.iter()
        .filter(|s| s.intersection(&k_c) == *c)
        .cloned()
        .collect()
}

#[test]
fn structured_matches_unconstrained_in_pg4() {
    let all = all_complete_caps(dim(4)).unwrap();
    let mut setups: Vec<(SliceFrame, PointSet)> = [(1, None), (2, None), (3, None), (4, Some(2))]
        .into_iter()
        .map(|(size, span)| canonical_slice(dim(4), size, span).unwrap())
        .collect();
    setups.push(catalog::four_point_model());
    for (frame, c) in setups {
        let want = framed(&all, &frame, &c);
        let got = enumerate_structured(&frame, &c).unwrap();
        assert_eq!(got, want, "slice {c:?}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| all_complete_caps(dim(4)).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn large_caps_in_pg4_have_power_of_two_excess() {
    let mut c = SearchConstraints::new(dim(4));
    c.large = Some(true);
    for s in enumerate_complete_caps(&c).unwrap() {
        let excess = s.len() - 8;
        assert!(excess.is_power_of_two(), "size {}", s.len());
    }
}

#[test]
fn three_point_slices_in_pg4_have_nine_points() {
    let mut c = SearchConstraints::new(dim(4));
    c.slice_size = Some(3);
    let caps = enumerate_complete_caps(&c).unwrap();
    assert!(!caps.is_empty());
    assert!(caps.iter().all(|s| s.len() == 9 && common::complete(s)));
}

#[test]
fn inconsistent_constraints_rejected() {
    let mut c = SearchConstraints::new(dim(3));
    c.min_size = Some(9);
    c.max_size = Some(5);
    assert!(matches!(
        enumerate_complete_caps(&c),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn construction_spectrum_pg7_three_points() {
    let sp = construction_spectrum(dim(7), 3).unwrap();
    assert!(sp.sizes.contains(&35));
    assert!(sp.sizes.contains(&65));
    assert!(sp.witnesses.iter().all(|w| common::complete(&w.cap)));
}

#[test]
fn four_point_spectrum_pg5_is_single_size() {
    let sp = construction_spectrum(dim(5), 4).unwrap();
    assert_eq!(sp.sizes, vec![17]);
    assert!(sp.not_produced.is_empty());
}

#[test]
fn small_partitions() {
    // With r = k - 1 = 1 the partition condition can hold.
    assert_eq!(count_partitions(2, 1).unwrap(), 8);
    let check = counting_identity_check(2, 1, None);
    assert!(check.printed_identity_fails());
    assert!(!check.rules_out());
    let check = counting_identity_check(3, 2, None);
    assert!(check.rules_out());
    let seed = catalog::seed_partition();
    let check = counting_identity_check(4, 2, Some(&seed));
    assert!(check.secant_bound && check.candidate_holds == Some(true));
}

#[test]
fn randomized_partition_search_records_seed() {
    let out = partition_search(
        4,
        2,
        PartitionMode::Randomized {
            seed: 11,
            steps: 1 << 20,
        },
    )
    .unwrap();
    assert_eq!(out.seed, Some(11));
    let p = out.found.expect("AG(4,2) partitions exist");
    assert!(pgcaps::construct::partition_condition(&p).holds);
    assert!(!out.proved_absent);
}
