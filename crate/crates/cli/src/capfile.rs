//! Text format for point sets.
//!
//! ```text
//! PG 4 2
//! # construction: tangent
//! 3
//! 0,3
//! 0x0018
//! ```
//!
//! The header names the ambient space. Each following line holds one point,
//! either as comma-separated coordinate indices or as a `0x` hex mask.
//! Lines of the form `# key: value` are kept as metadata; other `#` lines
//! and blank lines are ignored.

use std::path::Path;

use pgcaps::geom::{format_point, parse_point};
use pgcaps::{Dim, PointFormat, PointSet};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapFile {
    pub points: PointSet,
    pub metadata: Vec<(String, String)>,
}

impl CapFile {
    pub fn new(points: PointSet) -> Self {
        CapFile {
            points,
            metadata: Vec::new(),
        }
    }

    pub fn dim(&self) -> Dim {
        self.points.dim()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let err = |line: usize, message: String| CliError::Parse { line, message };
        let mut dim: Option<Dim> = None;
        let mut points: Option<PointSet> = None;
        let mut metadata = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.split_once(':') {
                    let key = k.trim();
                    if !key.is_empty() && !key.contains(char::is_whitespace) {
                        metadata.push((key.to_string(), v.trim().to_string()));
                    }
                }
                continue;
            }
            let Some(d) = dim else {
                let d = parse_header(line).map_err(|m| err(line_no, m))?;
                dim = Some(d);
                points = Some(PointSet::empty(d));
                continue;
            };
            let p = parse_point(line, d).map_err(|e| err(line_no, e.to_string()))?;
            if !d.contains_mask(p.mask()) {
                return Err(err(
                    line_no,
                    format!("point {line:?} does not fit in PG({},2)", d.n()),
                ));
            }
            let set = points.as_mut().expect("set with header");
            if !set.insert(p) {
                return Err(err(line_no, format!("duplicate point {line:?}")));
            }
        }
        match points {
            Some(points) => Ok(CapFile { points, metadata }),
            None => Err(err(1, "missing header \"PG <n> 2\"".into())),
        }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse { line, message } => CliError::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })
    }

    /// Canonical text: header, metadata in insertion order, points by mask.
    pub fn render(&self, style: PointFormat) -> String {
        let dim = self.dim();
        let mut out = format!("PG {} 2\n", dim.n());
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        for p in self.points.iter() {
            out.push_str(&format_point(p, dim, style));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path, style: PointFormat) -> CliResult<()> {
        std::fs::write(path, self.render(style)).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn parse_header(line: &str) -> Result<Dim, String> {
    let bad = || format!("expected header \"PG <n> 2\", found {line:?}");
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["PG", n, "2"] => {
            let n: u32 = n.parse().map_err(|_| bad())?;
            Dim::new(n).map_err(|e| e.to_string())
        }
        _ => Err(bad()),
    }
}
