//! Definitional oracles on raw masks, independent of the library.

#![allow(dead_code)]

use std::io::Write;

use pgcaps::PointSet;

/// No `x ^ y == z` among distinct members.
pub fn is_cap(masks: &[u32]) -> bool {
    let set: std::collections::HashSet<u32> = masks.iter().copied().collect();
    for (i, &x) in masks.iter().enumerate() {
        for &y in &masks[i + 1..] {
            if set.contains(&(x ^ y)) {
                return false;
            }
        }
    }
    true
}

/// Points of PG(n,2) outside the set and on no secant.
pub fn uncovered(n: u32, masks: &[u32]) -> Vec<u32> {
    let total = (1u32 << (n + 1)) - 1;
    let mut hit = vec![false; total as usize + 1];
    for &x in masks {
        hit[x as usize] = true;
    }
    for (i, &x) in masks.iter().enumerate() {
        for &y in &masks[i + 1..] {
            hit[(x ^ y) as usize] = true;
        }
    }
    (1..=total).filter(|&p| !hit[p as usize]).collect()
}

pub fn is_complete_cap(n: u32, masks: &[u32]) -> bool {
    is_cap(masks) && uncovered(n, masks).is_empty()
}

pub fn complete(s: &PointSet) -> bool {
    is_complete_cap(s.dim().n(), &s.masks())
}

/// Every `v` with `v + X = X`, by brute force over all points.
pub fn vertices(n: u32, masks: &[u32]) -> Vec<u32> {
    let set: std::collections::HashSet<u32> = masks.iter().copied().collect();
    (1..1u32 << (n + 1))
        .filter(|&v| masks.iter().all(|&x| set.contains(&(x ^ v))))
        .collect()
}

/// Formats a pass/fail line and returns whether all checks passed.
pub fn report(id: u32, title: &str, checks: &[(String, bool)], secs: f64, limit: f64) -> bool {
    let timed = secs < limit;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name.as_str())
        .collect();
    let ok = failed.is_empty() && timed;
    let mut line = format!(
        "criterion {id} ({title}): {} in {secs:.3} s (limit {limit} s)",
        if ok { "PASS" } else { "FAIL" }
    );
    if !failed.is_empty() {
        line.push_str(&format!("; failed: {}", failed.join("; ")));
    }
    if !timed {
        line.push_str("; over time limit");
    }
    // Written past the test harness's output capture so every verdict shows.
    let _ = writeln!(std::io::stderr(), "{line}");
    ok
}

/// Collects named checks.
#[derive(Default)]
pub struct Checks(pub Vec<(String, bool)>);

impl Checks {
    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }

    pub fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let ok = got == want;
        let label = if ok {
            name.to_string()
        } else {
            format!("{name}: got {got:?}, want {want:?}")
        };
        self.0.push((label, ok));
    }
}
