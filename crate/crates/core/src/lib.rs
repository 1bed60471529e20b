//! MOEA/D with pluggable per-subproblem variation operators.
//!
//! A multi-objective problem is decomposed into `N` scalar subproblems, one per
//! weight vector. Each subproblem draws its offspring from a variation operator
//! fed by the current solutions of its selection neighborhood:
//!
//! * `GA`: uniform crossover of two neighbors followed by bit-flip mutation,
//! * `UMDA`: a univariate marginal model learned from the neighborhood,
//! * `PBIL`: a persistent probability vector nudged toward the neighborhood,
//! * `TREE`: a forest of pairwise dependencies (maximum mutual-information
//!   spanning tree) learned from the neighborhood.
//!
//! The crate ships the bi-objective deceptive Trap5 benchmark, IGD and
//! true-front hit counts, a batch runner and a structure-log aggregator.
//!
//! ```
//! use moeadgm::{run, Algorithm, RunConfig};
//!
//! let mut config = RunConfig::new("bitrap", 10, Algorithm::Tree).unwrap();
//! config.h = 20;
//! config.t_s = 10;
//! config.t_r = 10;
//! config.max_generations = 5;
//! let result = run(&config).unwrap();
//! assert_eq!(result.trace.len(), 6);
//! ```

pub mod config;
pub mod error;
pub mod metrics;
pub mod moead;
pub mod problems;
pub mod runner;
pub mod variation;

pub use config::{Algorithm, ProblemSpec, RunConfig};
pub use error::{Error, Result};
pub use metrics::MetricsRecord;
pub use moead::{run, RunResult, Scalarization};
pub use problems::{dominates, BiTrapProblem, Genotype, ObjectiveVector, ParetoFront, Problem};
