//! Per-run CSV artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::config::config_to_text;
use super::structure::STRUCTURE_FILE;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;
use crate::moead::{ExternalArchive, RunResult};

pub const METRICS_FILE: &str = "metrics.csv";
pub const FRONT_FILE: &str = "front.csv";
pub const CONFIG_FILE: &str = "run.cfg";

pub fn metrics_csv(trace: &[MetricsRecord]) -> String {
    let mut out = String::from("generation,evaluations,igd,true_count,archive_size\n");
    for r in trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.generation, r.evaluations, r.igd, r.true_count, r.archive_size
        );
    }
    out
}

pub fn emit_metrics_csv(trace: &[MetricsRecord], path: &Path) -> Result<()> {
    fs::write(path, metrics_csv(trace)).map_err(|e| Error::io(path, e))
}

/// Archive rows sorted by descending first objective, then genotype.
pub fn front_csv(archive: &ExternalArchive) -> String {
    let mut rows: Vec<_> = archive.entries().collect();
    rows.sort_by(|a, b| b.1 .0[0].total_cmp(&a.1 .0[0]).then_with(|| a.0.cmp(b.0)));
    let m = rows.first().map_or(2, |r| r.1.len());
    let mut out = (1..=m).map(|l| format!("f{l},")).collect::<String>();
    out.push_str("genotype\n");
    for (genotype, objectives) in rows {
        for v in objectives.values() {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(out, "{genotype}");
    }
    out
}

pub fn emit_front_csv(archive: &ExternalArchive, path: &Path) -> Result<()> {
    fs::write(path, front_csv(archive)).map_err(|e| Error::io(path, e))
}

/// Reads back the rows of a metrics file.
pub fn read_metrics_csv(path: &Path) -> Result<Vec<MetricsRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let malformed = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(malformed(format!("expected 5 fields in {line:?}")));
            }
            let bad = |e: &dyn std::fmt::Display| malformed(format!("{line:?}: {e}"));
            Ok(MetricsRecord {
                generation: f[0].parse().map_err(|e| bad(&e))?,
                evaluations: f[1].parse().map_err(|e| bad(&e))?,
                igd: f[2].parse().map_err(|e| bad(&e))?,
                true_count: f[3].parse().map_err(|e| bad(&e))?,
                archive_size: f[4].parse().map_err(|e| bad(&e))?,
            })
        })
        .collect()
}

/// Run directory for `seed` under `root`.
pub fn run_dir(root: &Path, seed: u64) -> PathBuf {
    root.join(format!("seed-{seed}"))
}

/// Writes the manifest, metrics, front and (when logged) structure files.
pub fn write_run_artifacts(config: &RunConfig, result: &RunResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut manifest = config_to_text(config);
    let _ = writeln!(manifest, "# rng = {}", result.rng_algorithm);
    let cfg_path = dir.join(CONFIG_FILE);
    fs::write(&cfg_path, manifest).map_err(|e| Error::io(&cfg_path, e))?;
    emit_metrics_csv(&result.trace, &dir.join(METRICS_FILE))?;
    emit_front_csv(&result.archive, &dir.join(FRONT_FILE))?;
    if let Some(log) = &result.structure {
        log.write_csv(&dir.join(STRUCTURE_FILE))?;
    }
    Ok(())
}
