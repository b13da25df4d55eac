//! Construction recipes: a construction name followed by `key=value` tokens.
//!
//! ```text
//! tangent n=5 A=4;0,4;1,4 c0=4,5
//! family n=7 r=2 t=1 u=0
//! family n=8 r=2 plan=two-trivial
//! partition k=5 from=seed a0=0 a1=3 a01=1
//! partition k=4 r=2 search=random
//! c4 n=6 m=1 s=2
//! double in=cap.txt v=auto
//! ```
//!
//! Point lists are separated by `;`. Affine vectors (partition anchors) are
//! integers in decimal, `0b` binary or `0x` hex.

use std::collections::BTreeMap;
use std::path::Path;

use pgcaps::cap::plotkin_double;
use pgcaps::catalog;
use pgcaps::construct::{
    c4_construct, general_family, partition_condition, partition_from_cap, partition_to_cap,
    tangent_cap, trivial_and_singleton_plan, two_trivial_family, Built, Certificate, Construction,
    FamilyGeometry, TwoTrivial,
};
use pgcaps::geom::parse_point;
use pgcaps::search::{find_doubling_anchors, partition_chain, partition_search, PartitionMode};
use pgcaps::{Dim, Point, PointFormat, PointSet, SliceFrame};

use crate::capfile::CapFile;
use crate::error::{CliError, CliResult};
use crate::report::{fmt_set, ConstructReport};

/// Randomized partition search steps.
const RANDOM_STEPS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub name: String,
    params: BTreeMap<String, String>,
}

/// Settings shared by all recipes.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    /// Normals of `K_A` and `K_B`, overriding the standard frame.
    pub frame: Option<(Point, Point)>,
    pub seed: u64,
    pub style: Option<PointFormat>,
}

/// A finished construction. `cap` is `None` when nothing was built.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub cap: Option<PointSet>,
    pub report: ConstructReport,
}

impl Recipe {
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> CliResult<Self> {
        let mut it = tokens.iter().map(AsRef::as_ref);
        let name = it.next().ok_or_else(|| usage("empty recipe"))?.to_string();
        let mut params = BTreeMap::new();
        for tok in it {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| usage(format!("expected key=value, found {tok:?}")))?;
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(usage(format!("parameter {k:?} given twice")));
            }
        }
        Ok(Recipe { name, params })
    }

    fn allow(&self, keys: &[&str]) -> CliResult<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(usage(format!(
                "{}: unknown parameter {k:?} (expected one of {})",
                self.name,
                keys.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn int(&self, key: &str) -> CliResult<Option<u64>> {
        self.raw(key)
            .map(|v| parse_int(v).ok_or_else(|| usage(format!("{key}: not an integer: {v:?}"))))
            .transpose()
    }

    fn need_int(&self, key: &str) -> CliResult<u64> {
        self.int(key)?
            .ok_or_else(|| usage(format!("{}: missing parameter {key}", self.name)))
    }

    fn small(&self, key: &str) -> CliResult<u32> {
        let v = self.need_int(key)?;
        u32::try_from(v).map_err(|_| usage(format!("{key} = {v} is too large")))
    }

    fn dim(&self) -> CliResult<Dim> {
        Ok(Dim::new(self.small("n")?)?)
    }

    pub fn run(&self, settings: &Settings) -> CliResult<Constructed> {
        match self.name.as_str() {
            "tangent" => self.tangent(settings),
            "family" => self.family(settings),
            "partition" => self.partition(settings),
            "c4" => self.four_point(settings),
            "double" => self.double(settings),
            other => Err(usage(format!(
                "unknown construction {other:?} (expected tangent, family, partition, c4 or double)"
            ))),
        }
    }

    fn tangent(&self, settings: &Settings) -> CliResult<Constructed> {
        self.allow(&["n", "A", "c0"])?;
        let dim = self.dim()?;
        let frame = frame_for(dim, settings.frame)?;
        let a_text = self
            .raw("A")
            .ok_or_else(|| usage("tangent: missing parameter A"))?;
        let a = parse_list(a_text, dim)?;
        let c0 = match self.raw("c0") {
            Some(t) => parse_point(t, dim)?,
            None => default_c0(&frame)?,
        };
        let out = tangent_cap(&a, c0, &frame)?;
        let mut notes = vec![if out.a_vertices.is_periodic() {
            format!(
                "A is periodic with {} vertices",
                out.a_vertices.points.len()
            )
        } else {
            "A is not periodic".to_string()
        }];
        if !out.uncovered.is_empty() {
            notes.push(format!("{} points on no secant", out.uncovered.len()));
        }
        Ok(finish(out.built, notes, settings))
    }

    fn family(&self, settings: &Settings) -> CliResult<Constructed> {
        self.allow(&["n", "r", "t", "u", "plan"])?;
        let dim = self.dim()?;
        let r = self.small("r")?;
        let built = match self.raw("plan") {
            None | Some("trivial-singleton") => {
                let t = self.int("t")?.unwrap_or(0) as usize;
                let u = self.int("u")?.unwrap_or(0) as usize;
                let g = FamilyGeometry::c_hat_minus_one(dim, r)?;
                let plan = trivial_and_singleton_plan(&g, t, u)?;
                general_family(&g, &plan)?
            }
            Some("two-trivial") => two_trivial_family(dim, r, TwoTrivial::Mixed)?,
            Some("two-trivial-a") => two_trivial_family(dim, r, TwoTrivial::BothA)?,
            Some(other) => {
                return Err(usage(format!(
                    "family: unknown plan {other:?} (expected trivial-singleton, two-trivial or two-trivial-a)"
                )))
            }
        };
        Ok(finish(built, Vec::new(), settings))
    }

    fn partition(&self, settings: &Settings) -> CliResult<Constructed> {
        self.allow(&["k", "r", "from", "a0", "a1", "a01", "search"])?;
        let k = self.small("k")?;
        if let Some(mode) = self.raw("search") {
            return self.partition_search(k, mode, settings);
        }
        let (seed, default_anchors) = match self.raw("from").unwrap_or("seed") {
            "seed" => (catalog::seed_partition(), Some(catalog::SEED_ANCHORS)),
            path => {
                let file = CapFile::read(Path::new(path))?;
                let r = self.small("r")?;
                (partition_from_cap(&file.points, r)?, None)
            }
        };
        let anchors = match (self.int("a0")?, self.int("a1")?, self.int("a01")?) {
            (Some(a0), Some(a1), Some(a01)) => (a0 as u32, a1 as u32, a01 as u32),
            (None, None, None) => match default_anchors.or_else(|| find_doubling_anchors(&seed)) {
                Some(a) => a,
                None if k == seed.k() => (0, 0, 0),
                None => {
                    return Err(usage(
                        "partition: no anchor triple accepted by the doubling",
                    ))
                }
            },
            _ => return Err(usage("partition: give all of a0, a1, a01 or none")),
        };
        let chain = partition_chain(&seed, anchors, k)?;
        let last = chain.last().expect("chain starts at the seed");
        let holds = partition_condition(last).holds;
        let built = partition_to_cap(last)?;
        let notes = vec![
            format!("anchors ({}, {}, {})", anchors.0, anchors.1, anchors.2),
            format!(
                "chain k = {}..={}: partition condition {}",
                seed.k(),
                last.k(),
                if holds { "holds" } else { "fails" }
            ),
            format!("labels {:?}", last.labels()),
        ];
        Ok(finish(built, notes, settings))
    }

    fn partition_search(&self, k: u32, mode: &str, settings: &Settings) -> CliResult<Constructed> {
        let r = self.small("r")?;
        let mode = match mode {
            "exhaustive" => PartitionMode::Exhaustive,
            "random" => PartitionMode::Randomized {
                seed: settings.seed,
                steps: RANDOM_STEPS,
            },
            other => {
                return Err(usage(format!(
                    "partition: unknown search {other:?} (expected exhaustive or random)"
                )))
            }
        };
        let out = partition_search(k, r, mode)?;
        let mut notes = vec![format!("{} labellings or moves examined", out.examined)];
        if let Some(seed) = out.seed {
            notes.push(format!("seed {seed}"));
        }
        match out.found {
            Some(p) => {
                notes.push(format!("labels {:?}", p.labels()));
                Ok(finish(partition_to_cap(&p)?, notes, settings))
            }
            None => {
                notes.push(if out.proved_absent {
                    "no labelling satisfies the partition condition".to_string()
                } else {
                    "search ended without a partition".to_string()
                });
                Ok(Constructed {
                    cap: None,
                    report: ConstructReport {
                        construction: "partition".into(),
                        n: k + r + 1,
                        parameters: [("k".into(), k as i64), ("r".into(), r as i64)].into(),
                        predicted_size: None,
                        size: 0,
                        is_cap: false,
                        is_complete: false,
                        verified: false,
                        notes,
                        points: Vec::new(),
                    },
                })
            }
        }
    }

    fn four_point(&self, settings: &Settings) -> CliResult<Constructed> {
        self.allow(&["n", "m", "s"])?;
        let dim = self.dim()?;
        let out = c4_construct(dim, self.need_int("m")?, self.need_int("s")?)?;
        match out.built {
            Some(built) => Ok(finish(built, Vec::new(), settings)),
            None => Ok(Constructed {
                cap: None,
                report: ConstructReport {
                    construction: Construction::FourPoint.name().into(),
                    n: out.n,
                    parameters: [("m".into(), out.m as i64), ("s".into(), out.s as i64)].into(),
                    predicted_size: Some(out.predicted_size),
                    size: 0,
                    is_cap: false,
                    is_complete: false,
                    verified: false,
                    notes: vec!["no plan with these class counts gives a complete cap".into()],
                    points: Vec::new(),
                },
            }),
        }
    }

    fn double(&self, settings: &Settings) -> CliResult<Constructed> {
        self.allow(&["in", "v"])?;
        let path = self
            .raw("in")
            .ok_or_else(|| usage("double: missing parameter in"))?;
        let x = CapFile::read(Path::new(path))?.points;
        let up = x.dim().succ()?;
        let v = match self.raw("v").unwrap_or("auto") {
            "auto" => up.basis_point(up.n())?,
            t => parse_point(t, up)?,
        };
        let cap = plotkin_double(&x, v)?;
        let params = vec![("n", up.n() as i64), ("v", v.mask() as i64)];
        let built = Built {
            certificate: Certificate::check(Construction::Double, params, 2 * x.len(), &cap),
            cap,
        };
        Ok(finish(built, Vec::new(), settings))
    }
}

pub fn frame_for(dim: Dim, normals: Option<(Point, Point)>) -> CliResult<SliceFrame> {
    match normals {
        Some((a, b)) => Ok(SliceFrame::from_normals(dim, a, b)?),
        None => Ok(SliceFrame::standard(dim)),
    }
}

/// Smallest point of `H_C`; `e_{n-1} + e_n` for the standard frame.
fn default_c0(frame: &SliceFrame) -> pgcaps::Result<Point> {
    let h_c = frame.h_c();
    h_c.first()
        .ok_or(pgcaps::Error::InvalidFrame("empty H_C".into()))
}

fn finish(built: Built, notes: Vec<String>, settings: &Settings) -> Constructed {
    let cert = &built.certificate;
    let style = settings
        .style
        .unwrap_or_else(|| PointFormat::default_for(built.cap.dim()));
    let report = ConstructReport {
        construction: cert.construction.name().to_string(),
        n: built.cap.dim().n(),
        parameters: cert
            .parameters
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect(),
        predicted_size: Some(cert.predicted_size),
        size: cert.size,
        is_cap: cert.is_cap,
        is_complete: cert.is_complete,
        verified: cert.verified(),
        notes,
        points: fmt_set(&built.cap, style),
    };
    Constructed {
        cap: Some(built.cap),
        report,
    }
}

pub fn parse_list(text: &str, dim: Dim) -> CliResult<PointSet> {
    let mut s = PointSet::empty(dim);
    for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        if !s.insert(parse_point(item, dim)?) {
            return Err(usage(format!("duplicate point {item:?}")));
        }
    }
    Ok(s)
}

pub fn parse_int(text: &str) -> Option<u64> {
    let t = text.trim();
    if let Some(b) = t.strip_prefix("0b") {
        u64::from_str_radix(b, 2).ok()
    } else if let Some(h) = t.strip_prefix("0x") {
        u64::from_str_radix(h, 16).ok()
    } else {
        t.parse().ok()
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
