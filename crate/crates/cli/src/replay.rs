//! Re-derives the stated facts of the catalogued configurations.

use std::fmt::Debug;

use pgcaps::cap::vertex_set;
use pgcaps::catalog;
use pgcaps::construct::{partition_condition, partition_to_cap, saturate, tangent_cap};
use pgcaps::search::{partition_chain, periodic_extension};
use pgcaps::slices::decompose;
use pgcaps::{completeness, oplus, Dim, Point, PointSet, Subspace};

use crate::report::{Fact, ReplayEntry, ReplayReport};

struct Entry {
    name: String,
    facts: Vec<Fact>,
}

impl Entry {
    fn new(name: &str) -> Self {
        Entry {
            name: name.to_string(),
            facts: Vec::new(),
        }
    }

    fn eq<T: PartialEq + Debug>(&mut self, fact: &str, expected: T, found: T) {
        self.facts.push(Fact {
            fact: fact.to_string(),
            expected: format!("{expected:?}"),
            ok: expected == found,
            found: format!("{found:?}"),
        });
    }

    fn sets(&mut self, fact: &str, expected: &PointSet, found: &PointSet) {
        self.facts.push(Fact {
            fact: fact.to_string(),
            expected: digits(expected),
            found: digits(found),
            ok: expected == found,
        });
    }

    fn done(self) -> ReplayEntry {
        ReplayEntry {
            ok: self.facts.iter().all(|f| f.ok),
            name: self.name,
            facts: self.facts,
        }
    }
}

fn digits(s: &PointSet) -> String {
    let items: Vec<String> = s.iter().map(Point::to_digits).collect();
    format!("{{{}}}", items.join(", "))
}

fn pt(s: &str) -> Point {
    Point::from_digits(s).expect("digit point")
}

fn set(n: u32, items: &[&str]) -> PointSet {
    PointSet::from_digit_strs(Dim::new(n).expect("dim"), items).expect("digit set")
}

pub fn replay() -> ReplayReport {
    let entries = vec![
        tangent_complete(),
        periodic_slice(),
        unique_extender(),
        periodic_extension_pg9(),
        partition_frame(),
        partition_cap(),
        doubling_chain(),
    ];
    let facts_checked = entries.iter().map(|e| e.facts.len()).sum();
    let facts_failed = entries
        .iter()
        .flat_map(|e| &e.facts)
        .filter(|f| !f.ok)
        .count();
    ReplayReport {
        ok: facts_failed == 0,
        entries,
        facts_checked,
        facts_failed,
    }
}

fn tangent_complete() -> ReplayEntry {
    let mut e = Entry::new("tangent cap with non-periodic slice, PG(5,2)");
    let ex = catalog::tangent_complete_pg5();
    match tangent_cap(&ex.a, ex.c0, &ex.frame) {
        Ok(out) => {
            e.eq("A periodic", false, out.a_vertices.is_periodic());
            e.eq("complete", true, completeness(&out.built.cap).is_complete);
            e.eq("size", 17, out.built.cap.len());
        }
        Err(err) => e.eq("construction", "ok".to_string(), err.to_string()),
    }
    e.done()
}

fn periodic_slice() -> ReplayEntry {
    let mut e = Entry::new("tangent cap with periodic slice, PG(5,2)");
    let ex = catalog::periodic_slice_pg5();
    e.sets("V(A)", &set(5, &["0"]), &vertex_set(&ex.a).points);
    match tangent_cap(&ex.a, ex.c0, &ex.frame) {
        Ok(out) => {
            let report = completeness(&out.built.cap);
            e.eq("cap", true, report.is_cap);
            e.sets(
                "uncovered points",
                &set(5, &["045", "123", "0123"]),
                &report.uncovered,
            );
        }
        Err(err) => e.eq("construction", "ok".to_string(), err.to_string()),
    }
    e.done()
}

fn unique_extender() -> ReplayEntry {
    let mut e = Entry::new("single uncovered point, PG(4,2)");
    let ex = catalog::unique_extender_pg4();
    match tangent_cap(&ex.a, ex.c0, &ex.frame) {
        Ok(out) => {
            e.sets(
                "uncovered points",
                &set(4, &["012"]),
                &completeness(&out.built.cap).uncovered,
            );
            let sat = saturate(&out.built.cap);
            e.eq(
                "extended cap complete",
                true,
                completeness(&sat.t).is_complete,
            );
            e.eq("extended cap size", 10, sat.t.len());
        }
        Err(err) => e.eq("construction", "ok".to_string(), err.to_string()),
    }
    e.done()
}

fn periodic_extension_pg9() -> ReplayEntry {
    let mut e = Entry::new("periodic extension of a 66-point slice, PG(9,2)");
    let big = catalog::big_slice_pg9();
    e.eq("seed size", 66, big.seed.len());
    e.eq(
        "seed covers H∞",
        true,
        big.frame
            .h_inf_points()
            .is_subset(&oplus(&big.seed, &big.seed)),
    );
    match periodic_extension(&big.seed, big.v, &big.frame, 128) {
        Ok(ext) => {
            e.eq("secants through v", 16, ext.secants_through_v);
            e.eq("seed ∪ (v + seed) size", 116, ext.union_size);
            e.eq("extension size", 128, ext.a.len());
            e.eq("extension contains seed", true, big.seed.is_subset(&ext.a));
            e.eq("extension is a cap", true, ext.is_cap);
            e.eq("extension fixed by v", true, ext.periodic);
            e.eq(
                "A ⊕ A = H∞",
                true,
                oplus(&ext.a, &ext.a) == big.frame.h_inf_points(),
            );
        }
        Err(err) => e.eq("extension", "found".to_string(), err.to_string()),
    }
    e.done()
}

fn partition_frame() -> ReplayEntry {
    let mut e = Entry::new("partition frame, PG(7,2)");
    let g = catalog::partition_frame_pg7();
    let dim = g.dim();
    e.sets("F", &set(7, &["0", "1", "01"]), &g.f.members());
    e.sets("C", &set(7, &["067", "167", "0167"]), &g.c);
    e.eq("c0", pt("67"), g.c0());
    let first = PointSet::from_points(dim, g.pairs[0].0.points()).expect("coset points");
    e.sets("first A-coset", &set(7, &["6", "06", "16", "016"]), &first);
    let l = Subspace::span_points(dim, ["2", "3", "4", "5", "6"].map(pt));
    e.sets(
        "first A-coset ∩ L",
        &set(7, &["6"]),
        &first.filter(|p| l.contains(p)),
    );
    e.done()
}

fn partition_cap() -> ReplayEntry {
    let mut e = Entry::new("partition cap, PG(7,2)");
    let cap = catalog::partition_cap_pg7();
    let g = catalog::partition_frame_pg7();
    e.eq("complete", true, completeness(&cap).is_complete);
    e.eq("size", 35, cap.len());
    match decompose(&cap, &g.frame) {
        Ok(d) => {
            e.eq("|C|", 3, d.c.len());
            e.eq("(t, u, s)", (0, 0, 16), (d.t, d.u, d.s_count));
        }
        Err(err) => e.eq("decomposition", "ok".to_string(), err.to_string()),
    }
    let seed = catalog::seed_partition();
    e.eq(
        "partition condition",
        true,
        partition_condition(&seed).holds,
    );
    let rebuilt = partition_to_cap(&seed).map(|b| b.cap);
    e.eq("rebuilt from the partition", Ok(cap), rebuilt);
    e.done()
}

fn doubling_chain() -> ReplayEntry {
    let mut e = Entry::new("partition doubling chain");
    match partition_chain(&catalog::seed_partition(), catalog::SEED_ANCHORS, 7) {
        Ok(chain) => {
            for p in &chain {
                let n = p.k() + p.r() + 1;
                e.eq(
                    &format!("k = {}: partition condition", p.k()),
                    true,
                    partition_condition(p).holds,
                );
                match partition_to_cap(p) {
                    Ok(b) => {
                        e.eq(
                            &format!("PG({n},2): complete"),
                            true,
                            completeness(&b.cap).is_complete,
                        );
                        e.eq(
                            &format!("PG({n},2): size"),
                            (1usize << (n - 2)) + 3,
                            b.cap.len(),
                        );
                    }
                    Err(err) => e.eq(
                        &format!("PG({n},2): cap"),
                        "ok".to_string(),
                        err.to_string(),
                    ),
                }
            }
        }
        Err(err) => e.eq("chain", "ok".to_string(), err.to_string()),
    }
    e.done()
}
