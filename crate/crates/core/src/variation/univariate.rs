use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::Genotype;

const SMALLEST_POSITIVE: f64 = f64::MIN_POSITIVE;
const LARGEST_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Independent per-position probabilities of a one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnivariateModel {
    pub probs: Vec<f64>,
}

impl UnivariateModel {
    /// Every position at 0.5, the PBIL starting point.
    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![0.5; n],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn log_likelihood(&self, x: &Genotype) -> f64 {
        self.probs
            .iter()
            .zip(x.bits())
            .map(|(&p, &b)| if b { p.ln() } else { (1.0 - p).ln() })
            .sum()
    }
}

/// Smoothed proportion of ones: `(m_j + r) / (l + 2r)`.
pub fn learn_univariate(solutions: &[&Genotype], prior_r: f64) -> Result<UnivariateModel> {
    let first = solutions
        .first()
        .ok_or_else(|| Error::invalid("cannot learn a model from an empty solution set"))?;
    let n = first.len();
    let mut ones = vec![0usize; n];
    for x in solutions {
        for (count, &b) in ones.iter_mut().zip(x.bits()) {
            *count += b as usize;
        }
    }
    let denom = solutions.len() as f64 + 2.0 * prior_r;
    Ok(UnivariateModel {
        probs: ones
            .into_iter()
            .map(|m| (m as f64 + prior_r) / denom)
            .collect(),
    })
}

pub fn sample_univariate<R: Rng + ?Sized>(model: &UnivariateModel, rng: &mut R) -> Genotype {
    Genotype::from_bits(model.probs.iter().map(|&p| rng.gen::<f64>() < p).collect())
}

/// Moves the vector toward each solution in turn by learning rate `alpha`.
pub fn pbil_update(
    state: &UnivariateModel,
    solutions: &[&Genotype],
    alpha: f64,
) -> Result<UnivariateModel> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "learning rate {alpha} outside (0, 1)"
        )));
    }
    let mut probs = state.probs.clone();
    for x in solutions {
        for (p, &b) in probs.iter_mut().zip(x.bits()) {
            let target = if b { 1.0 } else { 0.0 };
            let next = *p + alpha * (target - *p);
            // interior entries must not round onto 0 or 1
            *p = if *p > 0.0 && *p < 1.0 {
                next.clamp(SMALLEST_POSITIVE, LARGEST_BELOW_ONE)
            } else {
                next
            };
        }
    }
    Ok(UnivariateModel { probs })
}
