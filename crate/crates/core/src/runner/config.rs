//! Line-oriented `key = value` run manifests with flag overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::{Algorithm, RunConfig};
use crate::error::{Error, Result};
use crate::moead::Scalarization;

const KEYS: &[&str] = &[
    "problem",
    "n",
    "algorithm",
    "h",
    "ts",
    "tr",
    "nr",
    "scalarization",
    "ds",
    "max_generations",
    "seed",
    "structure_log",
    "structure_stride",
    "structure_subproblems",
    "output_dir",
    "crossover_rate",
    "mutation_rate",
    "alpha",
    "prior_r",
    "mi_prior_r",
    "mi_threshold",
];

fn canonical_key(key: &str) -> Option<&'static str> {
    let key = key.trim().to_ascii_lowercase().replace('-', "_");
    let key = match key.as_str() {
        "algo" => "algorithm",
        "t_s" => "ts",
        "t_r" => "tr",
        "n_r" => "nr",
        "generations" => "max_generations",
        "out" => "output_dir",
        "diversity_sampling" => "ds",
        other => other,
    };
    KEYS.iter().copied().find(|k| *k == key)
}

/// Reads `key = value` lines; `#` starts a comment. Later keys win.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!(
                "line {}: expected `key = value`, got {raw:?}",
                lineno + 1
            ))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn parse_value<T: std::str::FromStr>(field: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(field, format!("cannot parse {value:?}")))
}

fn parse_bool(field: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::config(
            field,
            format!("expected a boolean, got {value:?}"),
        )),
    }
}

fn parse_index_list(field: &str, value: &str) -> Result<Vec<usize>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(field, s))
        .collect()
}

/// Builds a validated config from manifest text followed by overrides.
pub fn parse_config(text: &str, overrides: &[(String, String)]) -> Result<RunConfig> {
    let mut pairs = parse_pairs(text)?;
    pairs.extend(overrides.iter().cloned());
    config_from_pairs(&pairs)
}

pub fn load_config(path: Option<&Path>, overrides: &[(String, String)]) -> Result<RunConfig> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?,
        None => String::new(),
    };
    parse_config(&text, overrides)
}

pub fn config_from_pairs(pairs: &[(String, String)]) -> Result<RunConfig> {
    let mut values: BTreeMap<&'static str, String> = BTreeMap::new();
    for (key, value) in pairs {
        let canonical =
            canonical_key(key).ok_or_else(|| Error::config(key, "unknown configuration key"))?;
        values.insert(canonical, value.clone());
    }

    let problem = values
        .get("problem")
        .ok_or_else(|| Error::Usage("missing `problem`".into()))?;
    let algorithm: Algorithm = values
        .get("algorithm")
        .ok_or_else(|| Error::Usage("missing `algorithm`".into()))?
        .parse()
        .map_err(|e: Error| Error::config("algorithm", e.to_string()))?;
    let n: usize = parse_value(
        "n",
        values
            .get("n")
            .ok_or_else(|| Error::Usage("missing problem size `n`".into()))?,
    )?;
    let mut config = RunConfig::new(problem, n, algorithm)
        .map_err(|e| Error::config("problem", e.to_string()))?;

    for (&key, value) in &values {
        match key {
            "problem" | "algorithm" | "n" => {}
            "h" => config.h = parse_value(key, value)?,
            "ts" => config.t_s = parse_value(key, value)?,
            "tr" => config.t_r = parse_value(key, value)?,
            "nr" => config.n_r = parse_value(key, value)?,
            "scalarization" => {
                config.scalarization = value
                    .parse::<Scalarization>()
                    .map_err(|e| Error::config(key, e.to_string()))?
            }
            "ds" => config.diversity_sampling = parse_bool(key, value)?,
            "max_generations" => config.max_generations = parse_value(key, value)?,
            "seed" => config.seed = parse_value(key, value)?,
            "structure_log" => config.structure_log = parse_bool(key, value)?,
            "structure_stride" => config.structure_stride = parse_value(key, value)?,
            "structure_subproblems" => {
                config.structure_subproblems = match value.as_str() {
                    "all" | "" => None,
                    list => Some(parse_index_list(key, list)?),
                }
            }
            "output_dir" => config.output_dir = Some(PathBuf::from(value)),
            "crossover_rate" => config.operator.crossover_rate = parse_value(key, value)?,
            "mutation_rate" => config.operator.mutation_rate = parse_value(key, value)?,
            "alpha" => config.operator.alpha = parse_value(key, value)?,
            "prior_r" => config.operator.prior_r = parse_value(key, value)?,
            "mi_prior_r" => config.operator.mi_prior_r = parse_value(key, value)?,
            "mi_threshold" => config.operator.mi_threshold = parse_value(key, value)?,
            _ => unreachable!("key list and match arms out of sync: {key}"),
        }
    }
    config.validate()?;
    Ok(config)
}

/// Renders a config as a manifest that [`parse_config`] reads back.
pub fn config_to_text(config: &RunConfig) -> String {
    let mut out = String::new();
    let op = &config.operator;
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    line("problem", config.problem.name.clone());
    line("n", config.problem.n.to_string());
    line("algorithm", op.kind.to_string());
    line("h", config.h.to_string());
    line("ts", config.t_s.to_string());
    line("tr", config.t_r.to_string());
    line("nr", config.n_r.to_string());
    line("scalarization", config.scalarization.to_string());
    line("ds", config.diversity_sampling.to_string());
    line("max_generations", config.max_generations.to_string());
    line("seed", config.seed.to_string());
    line("structure_log", config.structure_log.to_string());
    line("structure_stride", config.structure_stride.to_string());
    line(
        "structure_subproblems",
        match &config.structure_subproblems {
            None => "all".to_string(),
            Some(list) => list
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(","),
        },
    );
    line("crossover_rate", op.crossover_rate.to_string());
    line("mutation_rate", op.mutation_rate.to_string());
    line("alpha", op.alpha.to_string());
    line("prior_r", op.prior_r.to_string());
    line("mi_prior_r", op.mi_prior_r.to_string());
    line("mi_threshold", op.mi_threshold.to_string());
    out
}
