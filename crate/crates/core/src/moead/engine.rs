use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{build_neighborhoods, generate_weight_vectors, ExternalArchive, ReferencePoint};
use super::{Scalarization, Solution, WeightVector};
use crate::config::{RunConfig, RNG_ALGORITHM};
use crate::error::Result;
use crate::metrics::{count_true_pareto, igd, MetricsRecord};
use crate::problems::{Genotype, ParetoFront, Problem};
use crate::runner::{StructureLog, StructureRecord};
use crate::variation::{
    choose_parents, diversity_preserving_sample, learn_tree, learn_univariate, pbil_update,
    Algorithm, LearnedModel, UnivariateModel,
};

#[derive(Clone, Debug)]
pub struct Subproblem {
    pub index: usize,
    pub weight: WeightVector,
    /// `B(i)`: nearest first, self included.
    pub selection_neighbors: Vec<usize>,
    /// `R(i)`.
    pub replacement_neighbors: Vec<usize>,
    pub current: Solution,
    /// Persistent PBIL probability vector.
    pub model_state: Option<UnivariateModel>,
}

/// Everything that evolves during one run.
pub struct RunState {
    pub subproblems: Vec<Subproblem>,
    pub reference: ReferencePoint,
    pub archive: ExternalArchive,
    pub scalarization: Scalarization,
    pub generation: usize,
    pub evaluations: u64,
    pub rng: ChaCha8Rng,
}

impl RunState {
    /// Offers `y` to the replacement neighborhood of subproblem `i`, visited in
    /// a fresh random order. Each strictly improved neighbor takes a copy of
    /// `y`, up to `n_r` of them. Returns the number of replacements.
    pub fn update_population(&mut self, y: &Solution, i: usize, n_r: usize) -> Result<usize> {
        let mut order = self.subproblems[i].replacement_neighbors.clone();
        order.shuffle(&mut self.rng);
        let mut replaced = 0;
        for r in order {
            if replaced >= n_r {
                break;
            }
            let sub = &self.subproblems[r];
            let candidate =
                self.scalarization
                    .value(&y.objectives, &sub.weight, &self.reference)?;
            let incumbent =
                self.scalarization
                    .value(&sub.current.objectives, &sub.weight, &self.reference)?;
            if self.scalarization.improves(candidate, incumbent) {
                self.subproblems[r].current = y.clone();
                replaced += 1;
            }
        }
        Ok(replaced)
    }

    /// Scalarized value of each subproblem's current solution.
    pub fn scalarized_values(&self) -> Result<Vec<f64>> {
        self.subproblems
            .iter()
            .map(|s| {
                self.scalarization
                    .value(&s.current.objectives, &s.weight, &self.reference)
            })
            .collect()
    }

    fn record(&self, front: Option<&ParetoFront>) -> Result<MetricsRecord> {
        let points = self.archive.objective_points();
        let (igd, true_count) = match front {
            Some(front) => (igd(front, &points)?, count_true_pareto(front, &points)),
            None => (f64::NAN, 0),
        };
        Ok(MetricsRecord {
            generation: self.generation,
            evaluations: self.evaluations,
            igd,
            true_count,
            archive_size: self.archive.len(),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct RunResult {
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub population: Vec<Solution>,
    pub archive: ExternalArchive,
    pub trace: Vec<MetricsRecord>,
    pub structure: Option<StructureLog>,
    pub evaluations: u64,
}

impl RunResult {
    pub fn final_record(&self) -> &MetricsRecord {
        self.trace
            .last()
            .expect("trace always holds the initial record")
    }
}

fn evaluate(problem: &dyn Problem, state: &mut RunState, x: Genotype) -> Result<Solution> {
    let objectives = problem.evaluate(&x)?;
    state.evaluations += 1;
    state.reference.absorb(&objectives);
    Ok(Solution {
        genotype: x,
        objectives,
    })
}

/// Runs one seeded optimization to completion.
pub fn run(config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let problem = config.problem.build()?;
    let problem = problem.as_ref();
    let n = problem.num_variables();
    let front = problem.true_front();

    let weights = generate_weight_vectors(config.h, problem.num_objectives())?;
    let selection = build_neighborhoods(&weights, config.t_s)?;
    let replacement = build_neighborhoods(&weights, config.t_r)?;
    let n_sub = weights.len();

    let mut state = RunState {
        subproblems: Vec::with_capacity(n_sub),
        reference: ReferencePoint::unset(problem.num_objectives()),
        archive: ExternalArchive::new(),
        scalarization: config.scalarization,
        generation: 0,
        evaluations: 0,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
    };

    let operator = &config.operator;
    for (index, ((weight, b), r)) in weights
        .into_iter()
        .zip(selection)
        .zip(replacement)
        .enumerate()
    {
        let x = Genotype::from_bits((0..n).map(|_| state.rng.gen::<bool>()).collect());
        let current = evaluate(problem, &mut state, x)?;
        state.archive.update(&current.genotype, &current.objectives);
        let model_state = (operator.kind == Algorithm::Pbil).then(|| UnivariateModel::uniform(n));
        state.subproblems.push(Subproblem {
            index,
            weight,
            selection_neighbors: b,
            replacement_neighbors: r,
            current,
            model_state,
        });
    }

    let mut trace = Vec::with_capacity(config.max_generations + 1);
    trace.push(state.record(front.as_ref())?);

    let logged: Option<Vec<bool>> =
        config
            .structure_log
            .then(|| match &config.structure_subproblems {
                Some(subset) => (0..n_sub).map(|i| subset.contains(&i)).collect(),
                None => vec![true; n_sub],
            });
    let mut structure = logged.as_ref().map(|_| StructureLog::new(n));

    for generation in 1..=config.max_generations {
        state.generation = generation;
        let log_generation = generation % config.structure_stride == 0;
        for i in 0..n_sub {
            let (learned, next_state, y) = {
                let neighbors: Vec<&Genotype> = state.subproblems[i]
                    .selection_neighbors
                    .iter()
                    .map(|&k| &state.subproblems[k].current.genotype)
                    .collect();
                let mut next_state = None;
                let learned = match operator.kind {
                    Algorithm::Ga => {
                        let (a, b) = choose_parents(&neighbors, &mut state.rng)?;
                        LearnedModel::Parents(a.clone(), b.clone())
                    }
                    Algorithm::Umda => {
                        LearnedModel::Univariate(learn_univariate(&neighbors, operator.prior_r)?)
                    }
                    Algorithm::Pbil => {
                        let mut by_index = state.subproblems[i].selection_neighbors.clone();
                        by_index.sort_unstable();
                        let ordered: Vec<&Genotype> = by_index
                            .iter()
                            .map(|&k| &state.subproblems[k].current.genotype)
                            .collect();
                        let prior = state.subproblems[i]
                            .model_state
                            .as_ref()
                            .expect("PBIL state is initialized with the population");
                        let updated = pbil_update(prior, &ordered, operator.alpha)?;
                        next_state = Some(updated.clone());
                        LearnedModel::Univariate(updated)
                    }
                    Algorithm::Tree => LearnedModel::Tree(learn_tree(&neighbors, operator)?),
                };
                let rng = &mut state.rng;
                let y = if config.diversity_sampling {
                    diversity_preserving_sample(
                        |r| learned.sample(operator, r),
                        &neighbors,
                        config.t_s,
                        rng,
                    )
                } else {
                    learned.sample(operator, rng)
                };
                (learned, next_state, y)
            };
            if next_state.is_some() {
                state.subproblems[i].model_state = next_state;
            }
            if let (Some(log), Some(mask), LearnedModel::Tree(model)) =
                (structure.as_mut(), logged.as_ref(), &learned)
            {
                if log_generation && mask[i] {
                    log.records.push(StructureRecord {
                        generation,
                        subproblem: i,
                        edges: model.edges.clone(),
                    });
                }
            }

            let y = evaluate(problem, &mut state, y)?;
            state.update_population(&y, i, config.n_r)?;
            state.archive.update(&y.genotype, &y.objectives);
        }
        trace.push(state.record(front.as_ref())?);
    }

    let expected = (n_sub * (config.max_generations + 1)) as u64;
    assert_eq!(state.evaluations, expected, "evaluation budget mismatch");

    Ok(RunResult {
        seed: config.seed,
        rng_algorithm: RNG_ALGORITHM,
        population: state.subproblems.into_iter().map(|s| s.current).collect(),
        archive: state.archive,
        trace,
        structure,
        evaluations: state.evaluations,
    })
}
