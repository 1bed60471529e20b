use serde::Serialize;

use crate::error::{Error, Result};

/// A point on the unit simplex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightVector(pub Vec<f64>);

impl WeightVector {
    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn squared_distance(&self, other: &WeightVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

/// `C(h + m - 1, m - 1)`, the size of the simplex lattice.
pub fn lattice_size(h: usize, m: usize) -> usize {
    let k = m.saturating_sub(1);
    let top = h + k;
    (0..k).fold(1usize, |acc, i| acc * (top - i) / (i + 1))
}

/// Every `(k_1/h, ..., k_m/h)` with non-negative integer `k` summing to `h`,
/// in lexicographic order.
pub fn generate_weight_vectors(h: usize, m: usize) -> Result<Vec<WeightVector>> {
    if h < 1 {
        return Err(Error::invalid(format!(
            "lattice divisions H must be >= 1, got {h}"
        )));
    }
    if m < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 objectives, got {m}"
        )));
    }
    let mut out = Vec::with_capacity(lattice_size(h, m));
    let mut prefix = Vec::with_capacity(m);
    compositions(h, m, &mut prefix, &mut |ks| {
        out.push(WeightVector(
            ks.iter().map(|&k| k as f64 / h as f64).collect(),
        ));
    });
    Ok(out)
}

fn compositions(
    remaining: usize,
    parts: usize,
    prefix: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if parts == 1 {
        prefix.push(remaining);
        emit(prefix);
        prefix.pop();
        return;
    }
    for k in 0..=remaining {
        prefix.push(k);
        compositions(remaining - k, parts - 1, prefix, emit);
        prefix.pop();
    }
}

/// Distances closer than this are treated as equal, so that lattice
/// symmetries fall back to index order despite rounding.
const DISTANCE_TIE: f64 = 1e-12;

/// For each weight vector, the indices of its `t` nearest vectors (itself
/// first), by Euclidean distance with ties broken by ascending index.
pub fn build_neighborhoods(weights: &[WeightVector], t: usize) -> Result<Vec<Vec<usize>>> {
    let n = weights.len();
    if t < 1 || t > n {
        return Err(Error::invalid(format!(
            "neighborhood size {t} must lie in [1, {n}]"
        )));
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let distances: Vec<f64> = weights.iter().map(|o| w.squared_distance(o)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                let (da, db) = (distances[a], distances[b]);
                if (da - db).abs() <= DISTANCE_TIE {
                    a.cmp(&b)
                } else {
                    da.total_cmp(&db)
                }
            });
            // self sits at distance 0 but a coincident vector with a lower
            // index could precede it
            if order[0] != i {
                let pos = order.iter().position(|&x| x == i).unwrap();
                order[..=pos].rotate_right(1);
            }
            order.truncate(t);
            order
        })
        .collect())
}
