//! Variation operators: the genetic operators, two univariate models and the
//! tree-structured dependency model, plus diversity-preserving sampling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::Genotype;

mod ga;
mod sampling;
mod tree;
mod univariate;

pub use ga::{choose_parents, ga_variation, recombine};
pub use sampling::diversity_preserving_sample;
pub use tree::{
    learn_tree, max_weight_spanning_forest, mutual_information_matrix, sample_tree, Edge,
    MutualInformationMatrix, TreeModel,
};
pub use univariate::{learn_univariate, pbil_update, sample_univariate, UnivariateModel};

/// Which operator a subproblem uses to produce offspring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    Ga,
    Umda,
    Pbil,
    Tree,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Ga,
        Algorithm::Umda,
        Algorithm::Pbil,
        Algorithm::Tree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ga => "ga",
            Algorithm::Umda => "umda",
            Algorithm::Pbil => "pbil",
            Algorithm::Tree => "tree",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ga" => Ok(Algorithm::Ga),
            "umda" => Ok(Algorithm::Umda),
            "pbil" => Ok(Algorithm::Pbil),
            "tree" | "tree-eda" => Ok(Algorithm::Tree),
            other => Err(Error::invalid(format!(
                "unknown algorithm {other:?} (expected ga, umda, pbil or tree)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorConfig {
    pub kind: Algorithm,
    /// Probability of applying uniform crossover; otherwise the first parent is copied.
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// PBIL learning rate.
    pub alpha: f64,
    /// Bayesian prior hyperparameter for UMDA and tree probabilities.
    pub prior_r: f64,
    /// Prior on the pairwise counts behind the tree structure. Any positive
    /// value makes constant positions look weakly dependent on each other,
    /// so the default learns the structure from raw frequencies.
    pub mi_prior_r: f64,
    /// Spanning-tree edges with mutual information at or below this are dropped.
    pub mi_threshold: f64,
}

impl OperatorConfig {
    pub fn new(kind: Algorithm, n: usize) -> Self {
        Self {
            kind,
            crossover_rate: 1.0,
            mutation_rate: if n == 0 { 0.0 } else { 1.0 / n as f64 },
            alpha: 0.05,
            prior_r: 1.0,
            mi_prior_r: 0.0,
            mi_threshold: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(
                "alpha",
                format!("{} is outside (0, 1)", self.alpha),
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::config(
                "mutation_rate",
                format!("{} is outside [0, 1]", self.mutation_rate),
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::config(
                "crossover_rate",
                format!("{} is outside [0, 1]", self.crossover_rate),
            ));
        }
        if !(self.prior_r >= 0.0 && self.prior_r.is_finite()) {
            return Err(Error::config(
                "prior_r",
                format!("{} must be >= 0", self.prior_r),
            ));
        }
        if !(self.mi_prior_r >= 0.0 && self.mi_prior_r.is_finite()) {
            return Err(Error::config(
                "mi_prior_r",
                format!("{} must be >= 0", self.mi_prior_r),
            ));
        }
        if !(self.mi_threshold >= 0.0 && self.mi_threshold.is_finite()) {
            return Err(Error::config(
                "mi_threshold",
                format!("{} must be >= 0", self.mi_threshold),
            ));
        }
        Ok(())
    }
}

/// What the learning step hands to the sampling step.
#[derive(Clone, Debug)]
pub enum LearnedModel {
    Parents(Genotype, Genotype),
    Univariate(UnivariateModel),
    Tree(TreeModel),
}

impl LearnedModel {
    pub fn sample<R: Rng + ?Sized>(&self, cfg: &OperatorConfig, rng: &mut R) -> Genotype {
        match self {
            LearnedModel::Parents(a, b) => recombine(a, b, cfg, rng),
            LearnedModel::Univariate(model) => sample_univariate(model, rng),
            LearnedModel::Tree(model) => sample_tree(model, rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_problem_size() {
        let cfg = OperatorConfig::new(Algorithm::Ga, 30);
        assert_eq!(cfg.mutation_rate, 1.0 / 30.0);
        assert_eq!(cfg.alpha, 0.05);
        assert_eq!(cfg.prior_r, 1.0);
        cfg.validate().unwrap();
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = OperatorConfig::new(Algorithm::Pbil, 10);
        cfg.alpha = 1.0;
        match cfg.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "alpha"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("cmaes".parse::<Algorithm>().is_err());
    }
}
