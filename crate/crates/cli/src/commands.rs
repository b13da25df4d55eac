use std::path::{Path, PathBuf};

use pgcaps::search::{
    construction_spectrum, spectrum, SearchConstraints, SearchMode, MAX_EXHAUSTIVE_N,
};
use pgcaps::slices::discover_frame;
use pgcaps::{completeness, Point, PointFormat, SliceFrame};

use crate::capfile::CapFile;
use crate::error::{CliError, CliResult};
use crate::recipe::{frame_for, parse_int, Recipe, Settings};
use crate::replay::replay;
use crate::report::{to_json, SpectrumReport, VerifyReport, WitnessEntry};

/// Largest dimension at which `verify` looks for a frame on its own.
pub const FRAME_DISCOVERY_MAX_N: u32 = 10;

/// A rendered report and whether the command's verdict was positive.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: String,
    pub ok: bool,
}

/// `--frame a,b`: the normals of `K_A` and `K_B`, each in digit form
/// (`0123`) or hex (`0x0f`).
pub fn parse_frame(text: &str) -> CliResult<(Point, Point)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--frame expects two normals separated by a comma, found {text:?}"
        )));
    };
    let one = |t: &str| -> CliResult<Point> {
        let p = match t.strip_prefix("0x") {
            Some(h) => u32::from_str_radix(h, 16)
                .map_err(|_| CliError::Usage(format!("bad normal {t:?}")))
                .and_then(|m| Ok(Point::new(m)?)),
            None => Ok(Point::from_digits(t)?),
        };
        p.map_err(|e| CliError::Usage(format!("bad normal {t:?}: {e}")))
    };
    Ok((one(a)?, one(b)?))
}

pub fn verify(
    path: &Path,
    frame: Option<(Point, Point)>,
    style: Option<PointFormat>,
) -> CliResult<Outcome> {
    let file = CapFile::read(path)?;
    let s = &file.points;
    let style = style.unwrap_or_else(|| PointFormat::default_for(s.dim()));
    let chosen: Option<(SliceFrame, bool)> = match frame {
        Some(normals) => Some((frame_for(s.dim(), Some(normals))?, true)),
        None if s.dim().n() <= FRAME_DISCOVERY_MAX_N && completeness(s).is_cap => {
            discover_frame(s).map(|f| (f, false))
        }
        None => None,
    };
    let report = VerifyReport::build(s, chosen.as_ref().map(|(f, g)| (f, *g)), style)?;
    Ok(Outcome {
        ok: report.is_complete,
        json: to_json(&report),
    })
}

pub fn construct(tokens: &[String], settings: &Settings, out: Option<&Path>) -> CliResult<Outcome> {
    let recipe = Recipe::parse(tokens)?;
    let built = recipe.run(settings)?;
    if let (Some(path), Some(cap)) = (out, &built.cap) {
        let style = settings
            .style
            .unwrap_or_else(|| PointFormat::default_for(cap.dim()));
        let mut file = CapFile::new(cap.clone()).with("construction", &built.report.construction);
        for (k, v) in &built.report.parameters {
            file = file.with(k, v);
        }
        file.with("size", cap.len())
            .with("complete", built.report.is_complete)
            .write(path, style)?;
    }
    Ok(Outcome {
        ok: built.report.verified,
        json: to_json(&built.report),
    })
}

/// `spectrum n=<n> [C=<size>] [span=<dim>] [mode=exhaustive|structured|construct]
/// [min=..] [max=..] [periodic=true|false] [large=true|false]`.
pub fn spectrum_cmd(
    tokens: &[String],
    style: Option<PointFormat>,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let mut args: Vec<(String, String)> = Vec::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, found {tok:?}")))?;
        if args.iter().any(|(seen, _)| seen == k) {
            return Err(CliError::Usage(format!("parameter {k:?} given twice")));
        }
        args.push((k.to_string(), v.to_string()));
    }
    let get = |key: &str| args.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let int = |key: &str| -> CliResult<Option<u64>> {
        get(key)
            .map(|v| {
                parse_int(v).ok_or_else(|| CliError::Usage(format!("{key}: not an integer: {v:?}")))
            })
            .transpose()
    };
    let flag = |key: &str| -> CliResult<Option<bool>> {
        get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("{key}: expected true or false")))
            })
            .transpose()
    };
    const KEYS: [&str; 8] = ["n", "C", "span", "mode", "min", "max", "periodic", "large"];
    if let Some((k, _)) = args.iter().find(|(k, _)| !KEYS.contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "spectrum: unknown parameter {k:?}"
        )));
    }
    let n = int("n")?.ok_or_else(|| CliError::Usage("spectrum: missing n".into()))?;
    let dim = pgcaps::Dim::new(u32::try_from(n).unwrap_or(u32::MAX))?;
    let slice = int("C")?.map(|c| c as usize);
    let mode = get("mode").unwrap_or(if slice.is_some() && dim.n() > MAX_EXHAUSTIVE_N {
        "structured"
    } else {
        "exhaustive"
    });
    let sp = match mode {
        "construct" => {
            let size = slice.ok_or_else(|| CliError::Usage("construct mode needs C".into()))?;
            construction_spectrum(dim, size)?
        }
        "exhaustive" | "structured" => {
            let mut c = SearchConstraints::new(dim);
            c.mode = if mode == "exhaustive" {
                SearchMode::Exhaustive
            } else {
                SearchMode::Structured
            };
            c.slice_size = slice;
            c.slice_span = int("span")?.map(|s| s as i32);
            c.min_size = int("min")?.map(|s| s as usize);
            c.max_size = int("max")?.map(|s| s as usize);
            c.periodic = flag("periodic")?;
            c.large = flag("large")?;
            spectrum(&c)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "spectrum: unknown mode {other:?} (expected exhaustive, structured or construct)"
            )))
        }
    };
    let style = style.unwrap_or_else(|| PointFormat::default_for(dim));
    let mut witnesses = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }
    for w in &sp.witnesses {
        let file = out.map(|dir| -> CliResult<String> {
            let name = format!("cap-{}.txt", w.size);
            let path: PathBuf = dir.join(&name);
            CapFile::new(w.cap.clone())
                .with("source", &w.source)
                .with("size", w.size)
                .write(&path, style)?;
            Ok(name)
        });
        witnesses.push(WitnessEntry {
            size: w.size,
            source: w.source.clone(),
            file: file.transpose()?,
        });
    }
    let report = SpectrumReport {
        n: dim.n(),
        mode: mode.to_string(),
        constraints: args.into_iter().collect(),
        sizes: sp.sizes.clone(),
        counts: sp.counts.clone(),
        not_produced: sp.not_produced.clone(),
        witnesses,
    };
    Ok(Outcome {
        ok: true,
        json: to_json(&report),
    })
}

pub fn examples() -> Outcome {
    let report = replay();
    Outcome {
        ok: report.ok,
        json: to_json(&report),
    }
}
