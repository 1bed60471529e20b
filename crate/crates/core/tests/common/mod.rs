#![allow(dead_code)]

use moeadgm::metrics::nondominated_filter;
use moeadgm::{BiTrapProblem, Genotype, ObjectiveVector};

/// Every genotype of length `n`, bit `j` taken from bit `j` of the counter.
pub fn all_genotypes(n: usize) -> impl Iterator<Item = Genotype> {
    (0u64..1 << n).map(move |v| Genotype::from_bits((0..n).map(|j| v >> j & 1 == 1).collect()))
}

/// Non-dominated objective points of bi-Trap5 by exhaustive enumeration,
/// sorted by ascending f1.
pub fn brute_force_front(n: usize) -> Vec<ObjectiveVector> {
    let problem = BiTrapProblem::new(n).unwrap();
    let mut points: Vec<ObjectiveVector> = all_genotypes(n)
        .map(|x| problem.evaluate_bitrap(&x).unwrap())
        .collect();
    points.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    points.dedup();
    let mut front = nondominated_filter(&points);
    front.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
    front
}

pub fn genotypes(rows: &[&str]) -> Vec<Genotype> {
    rows.iter().map(|r| r.parse().unwrap()).collect()
}

pub fn point(f1: f64, f2: f64) -> ObjectiveVector {
    ObjectiveVector(vec![f1, f2])
}
