//! Binary decision vectors, objective vectors, Pareto dominance and the
//! bi-objective deceptive Trap5 benchmark.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of bits in one building block of the trap functions.
pub const BLOCK_SIZE: usize = 5;

/// A fixed-length binary decision vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genotype {
    bits: Vec<bool>,
}

impl Genotype {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn ones(n: usize) -> Self {
        Self {
            bits: vec![true; n],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn get(&self, j: usize) -> bool {
        self.bits[j]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

impl fmt::Display for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Genotype({self})")
    }
}

impl FromStr for Genotype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("genotype character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl Serialize for Genotype {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Objective values `F(x)`; every objective is maximized.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObjectiveVector(pub Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn euclidean_distance(&self, other: &ObjectiveVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Pareto dominance under maximization: `a` is no worse everywhere and
/// strictly better somewhere.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "objective dimensions differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates_unchecked(a.values(), b.values()))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strictly = true;
        }
    }
    strictly
}

/// A set of mutually non-dominated objective points, each optionally paired
/// with a representative genotype.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParetoFront {
    pub points: Vec<ObjectiveVector>,
    pub representatives: Vec<Option<Genotype>>,
}

impl ParetoFront {
    pub fn from_points(points: Vec<ObjectiveVector>) -> Self {
        let representatives = vec![None; points.len()];
        Self {
            points,
            representatives,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A benchmark over binary decision vectors.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;
    fn num_variables(&self) -> usize;
    fn num_objectives(&self) -> usize;
    fn evaluate(&self, x: &Genotype) -> Result<ObjectiveVector>;
    /// The exact Pareto front, when it is known.
    fn true_front(&self) -> Option<ParetoFront> {
        None
    }
}

pub fn trap5_block(u: usize) -> Result<u32> {
    match u {
        5 => Ok(5),
        0..=4 => Ok(4 - u as u32),
        _ => Err(Error::invalid(format!(
            "block ones-count {u} outside [0, 5]"
        ))),
    }
}

pub fn inv_trap5_block(u: usize) -> Result<u32> {
    match u {
        0 => Ok(5),
        1..=5 => Ok(u as u32 - 1),
        _ => Err(Error::invalid(format!(
            "block ones-count {u} outside [0, 5]"
        ))),
    }
}

/// `(f_trap5, f_inv_trap5)` over fixed 5-bit blocks.
///
/// Blocks are contiguous by default. [`BiTrapProblem::with_layout`] installs a
/// permutation so that block `k` reads positions `layout[5k..5k+5]`.
#[derive(Clone, Debug)]
pub struct BiTrapProblem {
    n: usize,
    layout: Option<Vec<usize>>,
}

impl BiTrapProblem {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(BLOCK_SIZE) {
            return Err(Error::invalid(format!(
                "bi-Trap needs a positive multiple of {BLOCK_SIZE} variables, got {n}"
            )));
        }
        Ok(Self { n, layout: None })
    }

    pub fn with_layout(n: usize, layout: Vec<usize>) -> Result<Self> {
        let mut problem = Self::new(n)?;
        let mut seen = vec![false; n];
        if layout.len() != n {
            return Err(Error::invalid("layout length must equal n"));
        }
        for &p in &layout {
            if p >= n || seen[p] {
                return Err(Error::invalid("layout must be a permutation of 0..n"));
            }
            seen[p] = true;
        }
        problem.layout = Some(layout);
        Ok(problem)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> usize {
        self.n / BLOCK_SIZE
    }

    fn position(&self, j: usize) -> usize {
        match &self.layout {
            Some(layout) => layout[j],
            None => j,
        }
    }

    fn block_ones(&self, x: &Genotype, k: usize) -> usize {
        (k * BLOCK_SIZE..(k + 1) * BLOCK_SIZE)
            .filter(|&j| x.get(self.position(j)))
            .count()
    }

    pub fn evaluate_bitrap(&self, x: &Genotype) -> Result<ObjectiveVector> {
        if x.len() != self.n {
            return Err(Error::invalid(format!(
                "genotype length {} does not match n = {}",
                x.len(),
                self.n
            )));
        }
        let (mut trap, mut inv) = (0u32, 0u32);
        for k in 0..self.blocks() {
            let u = self.block_ones(x, k);
            trap += trap5_block(u)?;
            inv += inv_trap5_block(u)?;
        }
        Ok(ObjectiveVector(vec![trap as f64, inv as f64]))
    }

    /// The `l + 1` front points `(4l + k, 5l - k)`, each realized by `k`
    /// all-ones blocks followed by all-zeros blocks.
    pub fn true_pareto_front(&self) -> ParetoFront {
        let l = self.blocks();
        let mut points = Vec::with_capacity(l + 1);
        let mut representatives = Vec::with_capacity(l + 1);
        for k in 0..=l {
            points.push(ObjectiveVector(vec![
                (4 * l + k) as f64,
                (5 * l - k) as f64,
            ]));
            let mut g = Genotype::zeros(self.n);
            for j in 0..k * BLOCK_SIZE {
                g.bits_mut()[self.position(j)] = true;
            }
            representatives.push(Some(g));
        }
        ParetoFront {
            points,
            representatives,
        }
    }
}

impl Problem for BiTrapProblem {
    fn name(&self) -> &str {
        "bitrap"
    }

    fn num_variables(&self) -> usize {
        self.n
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &Genotype) -> Result<ObjectiveVector> {
        self.evaluate_bitrap(x)
    }

    fn true_front(&self) -> Option<ParetoFront> {
        Some(self.true_pareto_front())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genotype {
        s.parse().unwrap()
    }

    fn ov(a: f64, b: f64) -> ObjectiveVector {
        ObjectiveVector(vec![a, b])
    }

    #[test]
    fn block_functions() {
        assert_eq!(trap5_block(5).unwrap(), 5);
        assert_eq!(trap5_block(0).unwrap(), 4);
        assert_eq!(trap5_block(3).unwrap(), 1);
        assert_eq!(inv_trap5_block(0).unwrap(), 5);
        assert_eq!(inv_trap5_block(5).unwrap(), 4);
        assert_eq!(inv_trap5_block(1).unwrap(), 0);
        assert!(trap5_block(6).is_err());
        assert!(inv_trap5_block(6).is_err());
    }

    #[test]
    fn evaluate_small_instances() {
        let p = BiTrapProblem::new(10).unwrap();
        assert_eq!(
            p.evaluate_bitrap(&Genotype::ones(10)).unwrap(),
            ov(10.0, 8.0)
        );
        assert_eq!(
            p.evaluate_bitrap(&Genotype::zeros(10)).unwrap(),
            ov(8.0, 10.0)
        );
        assert_eq!(p.evaluate_bitrap(&g("1111100000")).unwrap(), ov(9.0, 9.0));
        assert!(p.evaluate_bitrap(&Genotype::ones(9)).is_err());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(BiTrapProblem::new(0).is_err());
        assert!(BiTrapProblem::new(12).is_err());
        assert!(BiTrapProblem::with_layout(5, vec![0, 1, 2, 3, 3]).is_err());
    }

    #[test]
    fn permuted_layout_reads_scattered_blocks() {
        // block 0 = positions {0,2,4,6,8}, block 1 = {1,3,5,7,9}
        let p = BiTrapProblem::with_layout(10, vec![0, 2, 4, 6, 8, 1, 3, 5, 7, 9]).unwrap();
        assert_eq!(p.evaluate_bitrap(&g("1010101010")).unwrap(), ov(9.0, 9.0));
        let front = p.true_pareto_front();
        for (point, rep) in front.points.iter().zip(&front.representatives) {
            assert_eq!(&p.evaluate_bitrap(rep.as_ref().unwrap()).unwrap(), point);
        }
    }

    #[test]
    fn front_sizes() {
        for (n, size) in [(30, 7), (50, 11), (100, 21)] {
            assert_eq!(
                BiTrapProblem::new(n).unwrap().true_pareto_front().len(),
                size
            );
        }
        let front = BiTrapProblem::new(10).unwrap().true_pareto_front();
        assert_eq!(
            front.points,
            vec![ov(8.0, 10.0), ov(9.0, 9.0), ov(10.0, 8.0)]
        );
        assert_eq!(front.representatives[1], Some(g("1111100000")));
    }

    #[test]
    fn dominance_cases() {
        assert!(dominates(&ov(26.0, 26.0), &ov(25.0, 25.0)).unwrap());
        assert!(!dominates(&ov(24.0, 30.0), &ov(30.0, 24.0)).unwrap());
        assert!(!dominates(&ov(30.0, 24.0), &ov(24.0, 30.0)).unwrap());
        assert!(!dominates(&ov(25.0, 25.0), &ov(25.0, 25.0)).unwrap());
        assert!(dominates(&ov(1.0, 2.0), &ObjectiveVector(vec![1.0])).is_err());
    }

    #[test]
    fn genotype_text_round_trip() {
        let x = g("0110");
        assert_eq!(x.to_string(), "0110");
        assert_eq!(x.complement().to_string(), "1001");
        assert!("01a".parse::<Genotype>().is_err());
    }
}
