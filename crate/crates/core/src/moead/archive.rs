use std::collections::HashSet;

use serde::Serialize;

use crate::problems::{dominates_unchecked, Genotype, ObjectiveVector};

/// A genotype with its objective values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub genotype: Genotype,
    pub objectives: ObjectiveVector,
}

/// Genotypes that share one objective point.
#[derive(Clone, Debug, PartialEq, Serialize)]
struct ArchivePoint {
    objectives: ObjectiveVector,
    genotypes: Vec<Genotype>,
}

/// Unbounded set of mutually non-dominated solutions, unique by genotype.
///
/// Entries are grouped by objective point, so dominance checks scale with
/// the number of distinct points rather than the number of genotypes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExternalArchive {
    points: Vec<ArchivePoint>,
    #[serde(skip)]
    members: HashSet<Genotype>,
}

impl ExternalArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of stored genotypes.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, genotype: &Genotype) -> bool {
        self.members.contains(genotype)
    }

    /// Distinct objective points, in insertion order.
    pub fn objective_points(&self) -> Vec<ObjectiveVector> {
        self.points.iter().map(|p| p.objectives.clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Genotype, &ObjectiveVector)> + '_ {
        self.points
            .iter()
            .flat_map(|p| p.genotypes.iter().map(move |g| (g, &p.objectives)))
    }

    pub fn solutions(&self) -> Vec<Solution> {
        self.entries()
            .map(|(g, o)| Solution {
                genotype: g.clone(),
                objectives: o.clone(),
            })
            .collect()
    }

    /// Drops every entry dominated by `y`, then inserts `y` unless an entry
    /// dominates it or already holds its genotype. Returns whether `y` went in.
    pub fn update(&mut self, y: &Genotype, fy: &ObjectiveVector) -> bool {
        if self.members.contains(y) {
            return false;
        }
        if self
            .points
            .iter()
            .any(|p| dominates_unchecked(p.objectives.values(), fy.values()))
        {
            return false;
        }
        let members = &mut self.members;
        self.points.retain(|p| {
            let dominated = dominates_unchecked(fy.values(), p.objectives.values());
            if dominated {
                for g in &p.genotypes {
                    members.remove(g);
                }
            }
            !dominated
        });
        match self.points.iter_mut().find(|p| &p.objectives == fy) {
            Some(point) => point.genotypes.push(y.clone()),
            None => self.points.push(ArchivePoint {
                objectives: fy.clone(),
                genotypes: vec![y.clone()],
            }),
        }
        self.members.insert(y.clone());
        true
    }
}

pub fn update_archive(archive: &mut ExternalArchive, y: &Genotype, fy: &ObjectiveVector) -> bool {
    archive.update(y, fy)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::problems::dominates;

    fn ov(a: f64, b: f64) -> ObjectiveVector {
        ObjectiveVector(vec![a, b])
    }

    fn g(s: &str) -> Genotype {
        s.parse().unwrap()
    }

    #[test]
    fn incomparable_points_coexist() {
        let mut a = ExternalArchive::new();
        assert!(a.update(&g("01"), &ov(24.0, 30.0)));
        assert!(a.update(&g("10"), &ov(30.0, 24.0)));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn dominating_point_evicts() {
        let mut a = ExternalArchive::new();
        a.update(&g("01"), &ov(25.0, 25.0));
        assert!(a.update(&g("11"), &ov(26.0, 26.0)));
        assert_eq!(a.objective_points(), vec![ov(26.0, 26.0)]);
        assert!(!a.contains(&g("01")));
        assert!(!a.update(&g("00"), &ov(25.0, 26.0)));
    }

    #[test]
    fn duplicate_genotype_rejected() {
        let mut a = ExternalArchive::new();
        a.update(&g("01"), &ov(1.0, 2.0));
        assert!(!a.update(&g("01"), &ov(1.0, 2.0)));
        assert_eq!(a.len(), 1);
        // same point, new genotype
        assert!(a.update(&g("10"), &ov(1.0, 2.0)));
        assert_eq!(a.len(), 2);
        assert_eq!(a.objective_points().len(), 1);
    }

    proptest! {
        #[test]
        fn invariants_hold_after_every_update(
            inserts in prop::collection::vec((0u8..16, 0u8..6, 0u8..6), 1..80)
        ) {
            let mut a = ExternalArchive::new();
            for (bits, f1, f2) in inserts {
                let y = g(&format!("{bits:04b}"));
                a.update(&y, &ov(f1 as f64, f2 as f64));
                let entries: Vec<_> = a.entries().collect();
                for (i, (gi, oi)) in entries.iter().enumerate() {
                    for (j, (gj, oj)) in entries.iter().enumerate() {
                        if i != j {
                            prop_assert!(!dominates(oi, oj).unwrap());
                            prop_assert_ne!(gi, gj);
                        }
                    }
                }
                prop_assert_eq!(entries.len(), a.len());
            }
        }
    }
}
