//! Seeded multi-run execution. Runs are independent and, with the `parallel`
//! feature, spread over a rayon pool; results come back in seed order either way.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::output::{run_dir, write_run_artifacts};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::metrics::MetricsRecord;
use crate::moead::{run, RunResult};

/// Final metrics of one run, or why it failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOutcome {
    pub seed: u64,
    pub last: Option<MetricsRecord>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchSummary {
    pub runs: Vec<RunOutcome>,
    pub igd_mean: f64,
    pub igd_std: f64,
    pub true_count_mean: f64,
    pub true_count_std: f64,
}

/// Arithmetic mean and sample standard deviation (0 for a single value).
pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

impl BatchSummary {
    pub fn from_outcomes(runs: Vec<RunOutcome>) -> Self {
        let finals: Vec<&MetricsRecord> = runs.iter().filter_map(|r| r.last.as_ref()).collect();
        let igd: Vec<f64> = finals.iter().map(|r| r.igd).collect();
        let hits: Vec<f64> = finals.iter().map(|r| r.true_count as f64).collect();
        let (igd_mean, igd_std) = mean_and_std(&igd);
        let (true_count_mean, true_count_std) = mean_and_std(&hits);
        Self {
            runs,
            igd_mean,
            igd_std,
            true_count_mean,
            true_count_std,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &RunOutcome> {
        self.runs.iter().filter(|r| r.error.is_some())
    }

    pub fn runs_csv(&self) -> String {
        let mut out = String::from("seed,igd,true_count,archive_size,evaluations,error\n");
        for r in &self.runs {
            match (&r.last, &r.error) {
                (Some(m), _) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},",
                        r.seed, m.igd, m.true_count, m.archive_size, m.evaluations
                    );
                }
                (None, err) => {
                    let msg = err.as_deref().unwrap_or("").replace([',', '\n'], " ");
                    let _ = writeln!(out, "{},,,,,{msg}", r.seed);
                }
            }
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        format!(
            "metric,mean,std\nigd,{},{}\ntrue_count,{},{}\n",
            self.igd_mean, self.igd_std, self.true_count_mean, self.true_count_std
        )
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, body) in [
            ("runs.csv", self.runs_csv()),
            ("summary.csv", self.summary_csv()),
        ] {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

fn with_seed(config: &RunConfig, seed: u64) -> RunConfig {
    let mut c = config.clone();
    c.seed = seed;
    c
}

/// One run per seed, one after another.
pub fn run_seeds_sequential(config: &RunConfig, seeds: &[u64]) -> Vec<Result<RunResult>> {
    seeds.iter().map(|&s| run(&with_seed(config, s))).collect()
}

/// One run per seed; concurrent when the `parallel` feature is on.
pub fn run_seeds(config: &RunConfig, seeds: &[u64]) -> Vec<Result<RunResult>> {
    #[cfg(feature = "parallel")]
    {
        seeds
            .par_iter()
            .map(|&s| run(&with_seed(config, s)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_seeds_sequential(config, seeds)
    }
}

fn execute(config: &RunConfig, seed: u64) -> RunOutcome {
    let config = with_seed(config, seed);
    let outcome = run(&config).and_then(|result| {
        if let Some(root) = &config.output_dir {
            write_run_artifacts(&config, &result, &run_dir(root, seed))?;
        }
        Ok(result.final_record().clone())
    });
    match outcome {
        Ok(last) => RunOutcome {
            seed,
            last: Some(last),
            error: None,
        },
        Err(e) => RunOutcome {
            seed,
            last: None,
            error: Some(e.to_string()),
        },
    }
}

/// Runs every seed, writing per-run artifacts under `config.output_dir` when
/// set. A failing run is recorded in the summary; the others still run.
pub fn run_batch(config: &RunConfig, seeds: &[u64]) -> Result<BatchSummary> {
    if seeds.is_empty() {
        return Err(Error::Usage("a batch needs at least one seed".into()));
    }
    config.validate()?;
    #[cfg(feature = "parallel")]
    let outcomes: Vec<RunOutcome> = seeds.par_iter().map(|&s| execute(config, s)).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<RunOutcome> = seeds.iter().map(|&s| execute(config, s)).collect();
    finish(config, outcomes)
}

/// [`run_batch`] without the thread pool.
pub fn run_batch_sequential(config: &RunConfig, seeds: &[u64]) -> Result<BatchSummary> {
    if seeds.is_empty() {
        return Err(Error::Usage("a batch needs at least one seed".into()));
    }
    config.validate()?;
    let outcomes = seeds.iter().map(|&s| execute(config, s)).collect();
    finish(config, outcomes)
}

fn finish(config: &RunConfig, outcomes: Vec<RunOutcome>) -> Result<BatchSummary> {
    let summary = BatchSummary::from_outcomes(outcomes);
    if let Some(root) = &config.output_dir {
        summary.write(root)?;
    }
    Ok(summary)
}
