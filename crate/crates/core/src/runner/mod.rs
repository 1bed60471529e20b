//! Experiment plumbing: manifests, batches, CSV outputs and structure logs.

mod batch;
mod config;
mod output;
mod structure;

pub use batch::{
    mean_and_std, run_batch, run_batch_sequential, run_seeds, run_seeds_sequential, BatchSummary,
    RunOutcome,
};
pub use config::{config_from_pairs, config_to_text, load_config, parse_config, parse_pairs};
pub use output::{
    emit_front_csv, emit_metrics_csv, front_csv, metrics_csv, read_metrics_csv, run_dir,
    write_run_artifacts, CONFIG_FILE, FRONT_FILE, METRICS_FILE,
};
pub use structure::{
    aggregate_structure, find_structure_dirs, AggregateOptions, FrequencyMatrix, GenerationWindow,
    StructureLog, StructureRecord, STRUCTURE_FILE,
};
