//! Batch runs of the two rounding algorithms over a manifest of instance
//! files, reported as CSV.

use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::average::{average_upper_bound, average_value};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::fractional::{evaluate_fractional, FractionalPoint};
use crate::heuristics::{half_start, round_x_optimize_y, round_y_optimize_x, type1_start, type2_start};
use crate::ilp::read_fractional_file;
use crate::instance::Instance;
use crate::oracle::Enumerator;
use crate::rational::QuarterRational;

pub const CSV_HEADER: &str =
    "instance,best,lp_obj,frac_obj,yx,xy,avg_plus,avg,t_start_ms,t_yx_ms,t_xy_ms,avg_exact,error";
pub const DEFAULT_ENUM_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartKind {
    Half,
    Type1,
    Type2,
    /// Read from the entry's `frac=<path>` annotation.
    File,
}

impl std::str::FromStr for StartKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(StartKind::Half),
            "type1" => Ok(StartKind::Type1),
            "type2" => Ok(StartKind::Type2),
            "file" => Ok(StartKind::File),
            _ => Err(Error::invalid(format!("unknown start {s:?}"))),
        }
    }
}

/// One manifest line: `path [best=<int>] [lp=<real>] [frac=<path>]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub best: Option<i64>,
    pub lp: Option<f64>,
    pub frac: Option<PathBuf>,
}

/// Parses a manifest. Relative paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut parts = content.split_whitespace();
        let Some(path) = parts.next() else { continue };
        let mut entry = ManifestEntry {
            path: base.join(path),
            best: None,
            lp: None,
            frac: None,
        };
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, got {part:?}")))?;
            let bad = || Error::parse(line, format!("bad value for {key}: {value:?}"));
            match key {
                "best" => entry.best = Some(value.parse().map_err(|_| bad())?),
                "lp" => entry.lp = Some(value.parse().map_err(|_| bad())?),
                "frac" => entry.frac = Some(base.join(value)),
                _ => return Err(Error::parse(line, format!("unknown annotation {key:?}"))),
            }
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<ManifestEntry>> {
    let path = path.as_ref();
    let base = path.parent().unwrap_or(Path::new(""));
    parse_manifest(&std::fs::read_to_string(path)?, base)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timings {
    pub start_ms: f64,
    pub yx_ms: f64,
    pub xy_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowValues {
    pub best: Option<i64>,
    pub lp_obj: Option<f64>,
    pub frac_obj: f64,
    /// Round-y optimize-x.
    pub yx: i64,
    /// Round-x optimize-y.
    pub xy: i64,
    pub avg_plus: i64,
    pub avg: QuarterRational,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub instance: String,
    pub outcome: std::result::Result<RowValues, String>,
}

#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub start: StartKind,
    pub seed: u64,
    pub enum_cap: usize,
    pub exec: Exec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            start: StartKind::Half,
            seed: 0,
            enum_cap: DEFAULT_ENUM_CAP,
            exec: Exec::default(),
        }
    }
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs one instance. The oracle runs sequentially since rows may already
/// be processed in parallel.
pub fn run_instance(
    inst: &Instance,
    entry: &ManifestEntry,
    cfg: &ExperimentConfig,
) -> Result<RowValues> {
    let t = Instant::now();
    let start: FractionalPoint = match cfg.start {
        StartKind::Half => half_start(inst.m(), inst.n()),
        StartKind::Type1 => type1_start(inst, cfg.seed),
        StartKind::Type2 => type2_start(inst, cfg.seed),
        StartKind::File => {
            let path = entry
                .frac
                .as_ref()
                .ok_or_else(|| Error::invalid("start=file needs a frac=<path> annotation"))?;
            read_fractional_file(inst, path)?
        }
    };
    let start_ms = millis(t);
    let t = Instant::now();
    let yx = round_y_optimize_x(inst, &start)?;
    let yx_ms = millis(t);
    let t = Instant::now();
    let xy = round_x_optimize_y(inst, &start)?;
    let xy_ms = millis(t);
    let best = if inst.m() + inst.n() <= cfg.enum_cap {
        Some(Enumerator::new(cfg.enum_cap, Exec::Sequential).optimum(inst)?.value)
    } else {
        entry.best
    };
    Ok(RowValues {
        best,
        lp_obj: entry.lp,
        frac_obj: evaluate_fractional(inst, &start)?,
        yx: yx.value,
        xy: xy.value,
        avg_plus: average_upper_bound(inst),
        avg: average_value(inst),
        timings: Timings {
            start_ms,
            yx_ms,
            xy_ms,
        },
    })
}

/// One row per entry, in manifest order. Failures are recorded per row.
pub fn run_experiment(entries: &[ManifestEntry], cfg: &ExperimentConfig) -> Vec<ExperimentRow> {
    exec::map_slice(cfg.exec, entries, |entry| {
        let fallback = entry
            .path
            .file_stem()
            .map_or_else(|| entry.path.display().to_string(), |s| s.to_string_lossy().into_owned());
        match Instance::read_file(&entry.path) {
            Ok(inst) => ExperimentRow {
                instance: inst.name().map_or(fallback, str::to_string),
                outcome: run_instance(&inst, entry, cfg).map_err(|e| e.to_string()),
            },
            Err(e) => ExperimentRow {
                instance: fallback,
                outcome: Err(e.to_string()),
            },
        }
    })
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the header and rows. Timing columns are left empty when
/// `timings` is false, making the output reproducible byte for byte.
pub fn write_csv(rows: &[ExperimentRow], out: &mut impl io::Write, timings: bool) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let name = csv_field(&row.instance);
        match &row.outcome {
            Ok(v) => {
                let t = |ms: f64| {
                    if timings {
                        format!("{ms:.3}")
                    } else {
                        String::new()
                    }
                };
                writeln!(
                    out,
                    "{name},{},{},{},{},{},{},{},{},{},{},{},",
                    opt(v.best),
                    opt(v.lp_obj),
                    v.frac_obj,
                    v.yx,
                    v.xy,
                    v.avg_plus,
                    v.avg.to_decimal_string(6),
                    t(v.timings.start_ms),
                    t(v.timings.yx_ms),
                    t(v.timings.xy_ms),
                    v.avg,
                )?;
            }
            Err(e) => writeln!(out, "{name},,,,,,,,,,,,{}", csv_field(e))?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let text = "# header\n\na.txt best=11 lp=12.5\nsub/b.txt frac=b.frac  # note\n";
        let entries = parse_manifest(text, Path::new("/data")).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].path, PathBuf::from("/data/a.txt"));
        assert_eq!((entries[0].best, entries[0].lp), (Some(11), Some(12.5)));
        assert_eq!(entries[1].frac, Some(PathBuf::from("/data/b.frac")));
        for bad in ["a.txt best", "a.txt best=x", "a.txt foo=1"] {
            assert!(matches!(parse_manifest(bad, Path::new("")), Err(Error::Parse { line: 1, .. })));
        }
    }

    #[test]
    fn start_kind_names() {
        assert_eq!("type2".parse::<StartKind>().unwrap(), StartKind::Type2);
        assert!("bogus".parse::<StartKind>().is_err());
    }

    #[test]
    fn tight_row() {
        let inst = Instance::homogeneous(&[vec![0, 0], vec![0, -1]]).unwrap();
        let entry = ManifestEntry {
            path: PathBuf::from("tight"),
            best: None,
            lp: None,
            frac: None,
        };
        let v = run_instance(&inst, &entry, &ExperimentConfig::default()).unwrap();
        assert_eq!(v.avg.to_decimal_string(6), "-0.25");
        assert_eq!(v.avg_plus, 0);
        assert!(v.xy >= 0 && v.yx >= 0);
        assert_eq!(v.best, Some(0));
        assert_eq!(v.frac_obj, -0.25);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ExperimentRow {
                instance: "a,b".into(),
                outcome: Err("boom".into()),
            },
            ExperimentRow {
                instance: "z".into(),
                outcome: Ok(RowValues {
                    best: Some(0),
                    lp_obj: None,
                    frac_obj: 0.0,
                    yx: 0,
                    xy: 0,
                    avg_plus: 0,
                    avg: QuarterRational::from_integer(0),
                    timings: Timings {
                        start_ms: 1.0,
                        yx_ms: 2.0,
                        xy_ms: 3.0,
                    },
                }),
            },
        ];
        let mut out = Vec::new();
        write_csv(&rows, &mut out, false).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "\"a,b\",,,,,,,,,,,,boom");
        assert_eq!(lines[2], "z,0,,0,0,0,0,0,,,,0,");
        for line in &lines {
            assert_eq!(line.matches(',').count(), 12 + line.matches("\"a,b\"").count());
        }
    }
}
