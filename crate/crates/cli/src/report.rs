//! JSON report documents. Field order is fixed by the struct layouts and
//! every collection is sorted, so equal inputs give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;

use pgcaps::cap::{find_collinear_triple, tangent_hyperplane, vertex_set};
use pgcaps::geom::format_point;
use pgcaps::slices::{coset_equations_hold, decompose, global_equations};
use pgcaps::{completeness, Dim, Point, PointFormat, PointSet, SliceFrame};

use crate::error::CliResult;

/// Longest point list written out in full; longer ones are cut.
pub const LIST_LIMIT: usize = 1024;

pub fn fmt_point(p: Point, dim: Dim, style: PointFormat) -> String {
    format_point(p, dim, style)
}

pub fn fmt_set(s: &PointSet, style: PointFormat) -> Vec<String> {
    s.iter().map(|p| fmt_point(p, s.dim(), style)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub size: usize,
    pub is_cap: bool,
    /// Three points of the input on a common line.
    pub collinear_triple: Option<[String; 3]>,
    pub is_complete: bool,
    pub uncovered_count: usize,
    pub uncovered: Vec<String>,
    pub uncovered_truncated: bool,
    pub large: bool,
    pub vertices: Vec<String>,
    pub tangent_hyperplane: Option<String>,
    pub slices: Option<SliceReport>,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    /// `given` or `discovered`.
    pub frame: &'static str,
    pub normal_a: String,
    pub normal_b: String,
    pub normal_c: String,
    pub size_a: usize,
    pub size_b: usize,
    pub c: Vec<String>,
    /// Projective dimension of the span of `C`.
    pub r: i32,
    pub pairs: usize,
    pub t: usize,
    pub u: usize,
    pub s: usize,
    pub m: usize,
    pub other: usize,
    /// Pairs whose coset equations fail.
    pub unsolved: usize,
    pub coset_equations: bool,
    pub cross_equations: bool,
    pub h_inf_covered: bool,
    /// For empty `C`: whether the cap is the affine complement of `K_C`.
    pub affine_complement: Option<bool>,
}

impl VerifyReport {
    pub fn build(
        s: &PointSet,
        frame: Option<(&SliceFrame, bool)>,
        style: PointFormat,
    ) -> CliResult<Self> {
        let dim = s.dim();
        let report = completeness(s);
        let triple = if report.is_cap {
            None
        } else {
            find_collinear_triple(s).map(|(x, y, z)| [x, y, z].map(|p| fmt_point(p, dim, style)))
        };
        let uncovered = if report.is_cap {
            report.uncovered.clone()
        } else {
            PointSet::empty(dim)
        };
        let mut listed = fmt_set(&uncovered, style);
        let truncated = listed.len() > LIST_LIMIT;
        listed.truncate(LIST_LIMIT);
        let slices = match frame {
            Some((f, given)) if report.is_cap => Some(SliceReport::build(s, f, given, style)?),
            _ => None,
        };
        let verdict = if !report.is_cap {
            "not a cap"
        } else if report.is_complete {
            "complete"
        } else {
            "incomplete"
        };
        Ok(VerifyReport {
            n: dim.n(),
            size: s.len(),
            is_cap: report.is_cap,
            collinear_triple: triple,
            is_complete: report.is_complete,
            uncovered_count: uncovered.len(),
            uncovered: listed,
            uncovered_truncated: truncated,
            large: s.len() > 1 << (dim.n() - 1),
            vertices: if report.is_cap {
                fmt_set(&vertex_set(s).points, style)
            } else {
                Vec::new()
            },
            tangent_hyperplane: if report.is_cap {
                tangent_hyperplane(s).map(|p| fmt_point(p, dim, style))
            } else {
                None
            },
            slices,
            verdict,
        })
    }
}

impl SliceReport {
    pub fn build(
        s: &PointSet,
        frame: &SliceFrame,
        given: bool,
        style: PointFormat,
    ) -> CliResult<Self> {
        let dim = s.dim();
        let d = decompose(s, frame)?;
        let g = global_equations(&d);
        let unsolved = d.classes.iter().filter(|c| c.is_none()).count();
        let classified = d.t + d.u + d.s_count + d.m;
        Ok(SliceReport {
            frame: if given { "given" } else { "discovered" },
            normal_a: fmt_point(frame.normal_a, dim, style),
            normal_b: fmt_point(frame.normal_b, dim, style),
            normal_c: fmt_point(frame.normal_c, dim, style),
            size_a: d.a.len(),
            size_b: d.b.len(),
            c: fmt_set(&d.c, style),
            r: d.r,
            pairs: d.num_pairs(),
            t: d.t,
            u: d.u,
            s: d.s_count,
            m: d.m,
            other: d.classes.len() - unsolved - classified,
            unsolved,
            coset_equations: coset_equations_hold(&d).iter().all(|&ok| ok),
            cross_equations: g.cross,
            h_inf_covered: g.h_inf_covered,
            affine_complement: d.c_empty_affine,
        })
    }
}

/// Outcome of a construction recipe.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructReport {
    pub construction: String,
    pub n: u32,
    pub parameters: BTreeMap<String, i64>,
    pub predicted_size: Option<usize>,
    pub size: usize,
    pub is_cap: bool,
    pub is_complete: bool,
    pub verified: bool,
    pub notes: Vec<String>,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub n: u32,
    pub mode: String,
    pub constraints: BTreeMap<String, String>,
    pub sizes: Vec<usize>,
    /// Caps found per size; empty in construct mode.
    pub counts: BTreeMap<usize, usize>,
    pub not_produced: Vec<usize>,
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub size: usize,
    pub source: String,
    pub file: Option<String>,
}

/// One checked fact of a replayed configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub fact: String,
    pub expected: String,
    pub found: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayEntry {
    pub name: String,
    pub facts: Vec<Fact>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub entries: Vec<ReplayEntry>,
    pub facts_checked: usize,
    pub facts_failed: usize,
    pub ok: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
