use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::WeightVector;
use crate::error::{Error, Result};
use crate::problems::ObjectiveVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scalarization {
    /// Maximized `sum_l w_l f_l`.
    WeightedSum,
    /// Minimized `max_l w_l |f_l - z*_l|`.
    Tchebycheff,
}

impl Scalarization {
    pub fn value(
        self,
        obj: &ObjectiveVector,
        weight: &WeightVector,
        z: &ReferencePoint,
    ) -> Result<f64> {
        match self {
            Scalarization::WeightedSum => weighted_sum(obj, weight),
            Scalarization::Tchebycheff => tchebycheff(obj, weight, z),
        }
    }

    /// Whether `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Scalarization::WeightedSum => candidate > incumbent,
            Scalarization::Tchebycheff => candidate < incumbent,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scalarization::WeightedSum => "weighted_sum",
            Scalarization::Tchebycheff => "tchebycheff",
        }
    }
}

impl fmt::Display for Scalarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scalarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "tchebycheff" | "te" => Ok(Scalarization::Tchebycheff),
            "weighted_sum" | "ws" => Ok(Scalarization::WeightedSum),
            other => Err(Error::invalid(format!(
                "unknown scalarization {other:?} (expected tchebycheff or weighted_sum)"
            ))),
        }
    }
}

/// Best value seen so far for each objective.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferencePoint(pub Vec<f64>);

impl ReferencePoint {
    /// Starts at negative infinity so the first evaluation seeds it.
    pub fn unset(m: usize) -> Self {
        Self(vec![f64::NEG_INFINITY; m])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

pub fn update_reference_point(z: &ReferencePoint, obj: &ObjectiveVector) -> Result<ReferencePoint> {
    check_dims(obj.len(), z.0.len())?;
    Ok(ReferencePoint(
        z.0.iter()
            .zip(obj.values())
            .map(|(a, b)| a.max(*b))
            .collect(),
    ))
}

impl ReferencePoint {
    pub fn absorb(&mut self, obj: &ObjectiveVector) {
        for (z, &f) in self.0.iter_mut().zip(obj.values()) {
            if f > *z {
                *z = f;
            }
        }
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::invalid(format!("dimension mismatch: {a} vs {b}")));
    }
    Ok(())
}

pub fn weighted_sum(obj: &ObjectiveVector, lambda: &WeightVector) -> Result<f64> {
    check_dims(obj.len(), lambda.len())?;
    Ok(obj
        .values()
        .iter()
        .zip(lambda.components())
        .map(|(f, w)| f * w)
        .sum())
}

pub fn tchebycheff(
    obj: &ObjectiveVector,
    lambda: &WeightVector,
    z: &ReferencePoint,
) -> Result<f64> {
    check_dims(obj.len(), lambda.len())?;
    check_dims(obj.len(), z.0.len())?;
    Ok(obj
        .values()
        .iter()
        .zip(lambda.components())
        .zip(z.values())
        .map(|((f, w), z)| w * (f - z).abs())
        .fold(0.0, f64::max))
}
