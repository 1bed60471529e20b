//! Run configuration shared by the engine and the experiment runner.

use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moead::{lattice_size, Scalarization};
use crate::problems::{BiTrapProblem, Problem};
pub use crate::variation::Algorithm;
use crate::variation::OperatorConfig;

/// Identifier of the pseudo-random generator, recorded with every run.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProblemSpec {
    pub name: String,
    pub n: usize,
}

impl ProblemSpec {
    pub fn build(&self) -> Result<Box<dyn Problem>> {
        match self.name.as_str() {
            "bitrap" => Ok(Box::new(BiTrapProblem::new(self.n)?)),
            other => Err(Error::config(
                "problem",
                format!("unknown problem {other:?} (available: bitrap)"),
            )),
        }
    }

    pub fn num_objectives(&self) -> usize {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub operator: OperatorConfig,
    /// Simplex-lattice divisions; `N = C(H + m - 1, m - 1)` subproblems.
    pub h: usize,
    /// Selection neighborhood size.
    pub t_s: usize,
    /// Replacement neighborhood size.
    pub t_r: usize,
    /// Maximum replacements per offspring.
    pub n_r: usize,
    pub scalarization: Scalarization,
    pub diversity_sampling: bool,
    pub max_generations: usize,
    pub seed: u64,
    pub structure_log: bool,
    /// Log tree structures every `structure_stride` generations.
    pub structure_stride: usize,
    /// Subproblems whose trees are logged; all when `None`.
    pub structure_subproblems: Option<Vec<usize>>,
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for the bi-objective setting: `H = 200`, `T_s = T_r = 20`,
    /// `n_r = 2`, Tchebycheff, diversity-preserving sampling, `5n` generations.
    pub fn new(problem: &str, n: usize, algorithm: Algorithm) -> Result<Self> {
        let problem = ProblemSpec {
            name: problem.to_ascii_lowercase(),
            n,
        };
        problem.build()?;
        Ok(Self {
            problem,
            operator: OperatorConfig::new(algorithm, n),
            h: 200,
            t_s: 20,
            t_r: 20,
            n_r: 2,
            scalarization: Scalarization::Tchebycheff,
            diversity_sampling: true,
            max_generations: 5 * n,
            seed: 1,
            structure_log: false,
            structure_stride: 1,
            structure_subproblems: None,
            output_dir: None,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.operator.kind
    }

    pub fn num_subproblems(&self) -> usize {
        lattice_size(self.h, self.problem.num_objectives())
    }

    pub fn validate(&self) -> Result<()> {
        self.problem.build()?;
        if self.h < 1 {
            return Err(Error::config("h", "must be >= 1"));
        }
        let n_sub = self.num_subproblems();
        if self.t_s < 1 || self.t_s > n_sub {
            return Err(Error::config(
                "ts",
                format!("{} must lie in [1, N = {n_sub}]", self.t_s),
            ));
        }
        if self.t_r < 1 || self.t_r > n_sub {
            return Err(Error::config(
                "tr",
                format!("{} must lie in [1, N = {n_sub}]", self.t_r),
            ));
        }
        if self.n_r < 1 || self.n_r > self.t_r {
            return Err(Error::config(
                "nr",
                format!("{} must lie in [1, T_r = {}]", self.n_r, self.t_r),
            ));
        }
        if matches!(self.algorithm(), Algorithm::Ga | Algorithm::Tree) && self.t_s < 2 {
            return Err(Error::config(
                "ts",
                format!(
                    "{} needs a selection neighborhood of at least 2",
                    self.algorithm()
                ),
            ));
        }
        if self.structure_stride < 1 {
            return Err(Error::config("structure_stride", "must be >= 1"));
        }
        if self.structure_log && self.algorithm() != Algorithm::Tree {
            return Err(Error::config(
                "structure_log",
                "structure logs are only produced by the tree model",
            ));
        }
        if let Some(subset) = &self.structure_subproblems {
            if let Some(bad) = subset.iter().find(|&&i| i >= n_sub) {
                return Err(Error::config(
                    "structure_subproblems",
                    format!("index {bad} is outside [0, {n_sub})"),
                ));
            }
        }
        self.operator.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::new("bitrap", 50, Algorithm::Tree).unwrap();
        assert_eq!((c.t_s, c.t_r, c.n_r, c.h), (20, 20, 2, 200));
        assert_eq!(c.max_generations, 250);
        assert_eq!(c.num_subproblems(), 201);
        assert!(c.diversity_sampling);
        c.validate().unwrap();
    }

    #[test]
    fn oversized_neighborhood_rejected() {
        let mut c = RunConfig::new("bitrap", 30, Algorithm::Tree).unwrap();
        c.t_s = 500;
        match c.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "ts"),
            other => panic!("unexpected {other:?}"),
        }
        c.t_s = 20;
        c.n_r = 21;
        assert!(c.validate().is_err());
    }

    #[test]
    fn unknown_problem_and_bad_size() {
        assert!(RunConfig::new("zdt1", 30, Algorithm::Ga).is_err());
        assert!(RunConfig::new("bitrap", 31, Algorithm::Ga).is_err());
    }
}
