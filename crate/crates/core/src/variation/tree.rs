use std::collections::VecDeque;

use rand::Rng;
use serde::Serialize;

use super::OperatorConfig;
use crate::error::{Error, Result};
use crate::problems::Genotype;

/// An undirected `(low, high)` pair in a spanning forest, or a directed
/// `(parent, child)` pair in an oriented tree model.
pub type Edge = (usize, usize);

/// Pairwise mutual information between positions; symmetric, zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct MutualInformationMatrix {
    n: usize,
    values: Vec<f64>,
}

impl MutualInformationMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = vec![0.0; n * n];
        for j in 0..n {
            for k in j + 1..n {
                let v = f(j, k).max(0.0);
                values[j * n + k] = v;
                values[k * n + j] = v;
            }
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.n + k]
    }
}

/// Ones per position and co-occurring ones per pair, counted on bit-packed
/// columns.
struct PairCounts {
    l: usize,
    n: usize,
    ones: Vec<usize>,
    both: Vec<usize>,
}

impl PairCounts {
    fn count(solutions: &[&Genotype]) -> Result<Self> {
        if solutions.len() < 2 {
            return Err(Error::invalid(format!(
                "pairwise statistics need at least 2 solutions, got {}",
                solutions.len()
            )));
        }
        let n = solutions[0].len();
        if solutions.iter().any(|x| x.len() != n) {
            return Err(Error::invalid("solutions differ in length"));
        }
        let l = solutions.len();
        let words = l.div_ceil(64);
        let mut columns = vec![0u64; n * words];
        for (s, x) in solutions.iter().enumerate() {
            let (w, mask) = (s / 64, 1u64 << (s % 64));
            for (j, &b) in x.bits().iter().enumerate() {
                if b {
                    columns[j * words + w] |= mask;
                }
            }
        }
        let column = |j: usize| &columns[j * words..(j + 1) * words];
        let ones: Vec<usize> = (0..n)
            .map(|j| column(j).iter().map(|w| w.count_ones() as usize).sum())
            .collect();
        let mut both = vec![0usize; n * n];
        for j in 0..n {
            for k in j + 1..n {
                let c: usize = column(j)
                    .iter()
                    .zip(column(k))
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                both[j * n + k] = c;
                both[k * n + j] = c;
            }
        }
        Ok(Self { l, n, ones, both })
    }

    fn both(&self, j: usize, k: usize) -> usize {
        self.both[j * self.n + k]
    }

    fn mutual_information(&self, prior_r: f64) -> MutualInformationMatrix {
        let l = self.l;
        let r = prior_r;
        let denom = l as f64 + 4.0 * r;
        let ln_denom = denom.ln();
        // ln of smoothed joint and marginal counts, indexed by raw count
        let ln_joint: Vec<f64> = (0..=l).map(|c| (c as f64 + r).ln()).collect();
        let ln_marginal: Vec<f64> = (0..=l).map(|c| (c as f64 + 2.0 * r).ln()).collect();

        let cell = |c_ab: usize, c_a: usize, c_b: usize| -> f64 {
            let joint = c_ab as f64 + r;
            if joint == 0.0 {
                return 0.0;
            }
            // exact independence gives exactly zero
            if joint * denom == (c_a as f64 + 2.0 * r) * (c_b as f64 + 2.0 * r) {
                return 0.0;
            }
            joint / denom * (ln_joint[c_ab] + ln_denom - ln_marginal[c_a] - ln_marginal[c_b])
        };

        MutualInformationMatrix::from_fn(self.n, |j, k| {
            let (j1, k1) = (self.ones[j], self.ones[k]);
            let (j0, k0) = (l - j1, l - k1);
            let c11 = self.both(j, k);
            let c10 = j1 - c11;
            let c01 = k1 - c11;
            let c00 = l + c11 - j1 - k1;
            cell(c11, j1, k1) + cell(c10, j1, k0) + cell(c01, j0, k1) + cell(c00, j0, k0)
        })
    }
}

/// Mutual information (natural log) from bivariate counts smoothed by `+r` per
/// cell; marginals are sums of the smoothed joint table.
pub fn mutual_information_matrix(
    solutions: &[&Genotype],
    prior_r: f64,
) -> Result<MutualInformationMatrix> {
    Ok(PairCounts::count(solutions)?.mutual_information(prior_r))
}

/// Greedy maximum-weight spanning tree over the complete graph, then every
/// edge with weight `<= threshold` is cut. Equal weights are taken in
/// ascending `(low, high)` order. Edges are returned in acceptance order.
pub fn max_weight_spanning_forest(mi: &MutualInformationMatrix, threshold: f64) -> Vec<Edge> {
    let n = mi.n();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 0..n {
        for k in j + 1..n {
            candidates.push((mi.get(j, k), j, k));
        }
    }
    candidates.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut sets = DisjointSets::new(n);
    let mut forest = Vec::with_capacity(n.saturating_sub(1));
    let mut joined = 0;
    for (w, j, k) in candidates {
        if joined + 1 >= n {
            break;
        }
        if sets.union(j, k) {
            joined += 1;
            if w > threshold {
                forest.push((j, k));
            }
        }
    }
    forest
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A forest-structured distribution `p(x) = prod_j p(x_j | x_parent(j))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeModel {
    /// Parent of each variable, `None` for roots.
    pub parent: Vec<Option<usize>>,
    /// `p(x_j = 1)`; used for roots.
    pub root_probs: Vec<f64>,
    /// `p(x_j = 1 | x_parent = v)` for `v` in `{0, 1}`; used for non-roots.
    pub cond_probs: Vec<[f64; 2]>,
    /// Oriented `(parent, child)` edges.
    pub edges: Vec<Edge>,
    /// Ancestral sampling order: every parent precedes its children.
    pub order: Vec<usize>,
}

impl TreeModel {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_none()).count()
    }

    /// Probability that `x_j = 1` given the rest of `x`.
    fn prob_one(&self, j: usize, x: &[bool]) -> f64 {
        match self.parent[j] {
            None => self.root_probs[j],
            Some(pa) => self.cond_probs[j][x[pa] as usize],
        }
    }

    pub fn log_likelihood(&self, x: &Genotype) -> f64 {
        let bits = x.bits();
        (0..self.n())
            .map(|j| {
                let p = self.prob_one(j, bits);
                if bits[j] {
                    p.ln()
                } else {
                    (1.0 - p).ln()
                }
            })
            .sum()
    }
}

/// Learns the forest structure and its parameters from `solutions`.
///
/// Each component is rooted at its lowest variable index. Conditionals are
/// `(count(x_j=1, x_pa=v) + r) / (count(x_pa=v) + 2r)`; a parent value never
/// observed with `r = 0` falls back to the child's marginal.
pub fn learn_tree(solutions: &[&Genotype], cfg: &OperatorConfig) -> Result<TreeModel> {
    let counts = PairCounts::count(solutions)?;
    let mi = counts.mutual_information(cfg.mi_prior_r);
    let forest = max_weight_spanning_forest(&mi, cfg.mi_threshold);
    Ok(parameterize(&counts, &forest, cfg.prior_r))
}

fn parameterize(counts: &PairCounts, forest: &[Edge], r: f64) -> TreeModel {
    let n = counts.n;
    let l = counts.l as f64;
    let smoothed = |hits: usize, total: f64| (hits as f64 + r) / (total + 2.0 * r);
    let root_probs: Vec<f64> = counts.ones.iter().map(|&m| smoothed(m, l)).collect();

    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in forest {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(forest.len());
    let mut queue = VecDeque::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &child in &adjacency[v] {
                if !visited[child] {
                    visited[child] = true;
                    parent[child] = Some(v);
                    edges.push((v, child));
                    queue.push_back(child);
                }
            }
        }
    }

    let cond_probs = (0..n)
        .map(|j| match parent[j] {
            None => [root_probs[j]; 2],
            Some(pa) => {
                let with_one = counts.both(j, pa);
                let parent_ones = counts.ones[pa];
                let parent_zeros = counts.l - parent_ones;
                let conditional = |hits: usize, total: usize| {
                    if total as f64 + 2.0 * r == 0.0 {
                        root_probs[j]
                    } else {
                        smoothed(hits, total as f64)
                    }
                };
                [
                    conditional(counts.ones[j] - with_one, parent_zeros),
                    conditional(with_one, parent_ones),
                ]
            }
        })
        .collect();

    TreeModel {
        parent,
        root_probs,
        cond_probs,
        edges,
        order,
    }
}

/// Ancestral sampling: roots first, then each child given its parent's value.
pub fn sample_tree<R: Rng + ?Sized>(model: &TreeModel, rng: &mut R) -> Genotype {
    let mut bits = vec![false; model.n()];
    for &j in &model.order {
        let p = model.prob_one(j, &bits);
        bits[j] = rng.gen::<f64>() < p;
    }
    Genotype::from_bits(bits)
}
