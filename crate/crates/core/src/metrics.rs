//! Front-approximation quality: inverted generational distance and the number
//! of exact front points attained.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::{dominates_unchecked, ObjectiveVector, ParetoFront};

/// Per-generation snapshot of the external archive's quality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub generation: usize,
    pub evaluations: u64,
    pub igd: f64,
    pub true_count: usize,
    pub archive_size: usize,
}

/// Mean distance from each reference point to its nearest approximation point.
pub fn igd(p_star: &ParetoFront, p: &[ObjectiveVector]) -> Result<f64> {
    if p_star.is_empty() {
        return Err(Error::EmptyReference);
    }
    if p.is_empty() {
        return Err(Error::EmptyApproximation);
    }
    let total: f64 = p_star
        .points
        .iter()
        .map(|v| {
            p.iter()
                .map(|u| v.euclidean_distance(u))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / p_star.len() as f64)
}

/// Number of distinct reference points present exactly in `p`.
pub fn count_true_pareto(p_star: &ParetoFront, p: &[ObjectiveVector]) -> usize {
    let mut distinct: Vec<&ObjectiveVector> = Vec::new();
    for v in &p_star.points {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    distinct.into_iter().filter(|v| p.contains(v)).count()
}

/// The maximal mutually non-dominated subset of `points`, in input order.
/// Duplicate points are kept once.
pub fn nondominated_filter(points: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    let mut kept: Vec<ObjectiveVector> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let dominated = points
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && dominates_unchecked(q.values(), p.values()));
        if !dominated && !kept.contains(p) {
            kept.push(p.clone());
        }
    }
    kept
}
