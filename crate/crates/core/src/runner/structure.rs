//! Tree-structure logs and their aggregation into edge-frequency heat maps.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::variation::Edge;

pub const STRUCTURE_FILE: &str = "structure.csv";

/// Oriented edges of one learned tree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureRecord {
    pub generation: usize,
    pub subproblem: usize,
    pub edges: Vec<Edge>,
}

/// Every tree logged during one run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StructureLog {
    pub n: usize,
    pub records: Vec<StructureRecord>,
}

impl StructureLog {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            records: Vec::new(),
        }
    }

    pub fn last_generation(&self) -> usize {
        self.records.iter().map(|r| r.generation).max().unwrap_or(0)
    }

    /// `generation,subproblem,parent,child`, one row per edge.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("generation,subproblem,parent,child\n");
        for r in &self.records {
            for &(parent, child) in &r.edges {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.generation, r.subproblem, parent, child
                ));
            }
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path, n: usize) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let malformed = |message: String| Error::Parse {
            path: path.to_path_buf(),
            message,
        };
        let mut log = StructureLog::new(n);
        for (lineno, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<usize> = line
                .split(',')
                .map(|f| f.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| malformed(format!("line {}: {e}", lineno + 1)))?;
            let [generation, subproblem, parent, child] = fields[..] else {
                return Err(malformed(format!("line {}: expected 4 fields", lineno + 1)));
            };
            if parent >= n || child >= n {
                return Err(malformed(format!(
                    "line {}: variable index out of range",
                    lineno + 1
                )));
            }
            match log.records.last_mut() {
                Some(r) if r.generation == generation && r.subproblem == subproblem => {
                    r.edges.push((parent, child))
                }
                _ => log.records.push(StructureRecord {
                    generation,
                    subproblem,
                    edges: vec![(parent, child)],
                }),
            }
        }
        Ok(log)
    }
}

/// Which generations enter the aggregate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenerationWindow {
    All,
    /// The last `ceil(fraction * G)` generations of a `G`-generation run.
    FinalFraction(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateOptions {
    /// Subproblem indices to include; all when `None`.
    pub subproblems: Option<Vec<usize>>,
    pub window: GenerationWindow,
    /// Generations per run, used by [`GenerationWindow::FinalFraction`].
    pub max_generations: usize,
}

/// Symmetric edge counts over variable pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrequencyMatrix {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl FrequencyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            counts: vec![0; n * n],
        }
    }

    pub fn get(&self, j: usize, k: usize) -> u64 {
        self.counts[j * self.n + k]
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.counts[a * self.n + b] += 1;
        self.counts[b * self.n + a] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Share of the mass inside the `block x block` diagonal blocks.
    pub fn intra_block_fraction(&self, block: usize) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let mut intra = 0;
        for j in 0..self.n {
            for k in 0..self.n {
                if j / block == k / block {
                    intra += self.get(j, k);
                }
            }
        }
        intra as f64 / total as f64
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for j in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|k| self.get(j, k).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    /// Binary 8-bit PGM; the largest count maps to white.
    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        let max = self.max();
        let mut bytes = format!("P5\n{} {}\n255\n", self.n, self.n).into_bytes();
        bytes.extend(self.counts.iter().map(|&c| {
            if max == 0 {
                0
            } else {
                ((c as f64 / max as f64) * 255.0).round() as u8
            }
        }));
        let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(&bytes).map_err(|e| Error::io(path, e))
    }
}

/// Sums symmetrized adjacency indicators over the selected subproblems,
/// generations and runs.
pub fn aggregate_structure(
    logs: &[StructureLog],
    options: &AggregateOptions,
) -> Result<FrequencyMatrix> {
    let first = logs
        .first()
        .ok_or_else(|| Error::MissingStructureLogs("no runs were given".into()))?;
    let n = first.n;
    if logs.iter().any(|l| l.n != n) {
        return Err(Error::invalid(
            "structure logs disagree on the number of variables",
        ));
    }
    if logs.iter().all(|l| l.records.is_empty()) {
        return Err(Error::MissingStructureLogs(
            "the runs logged no tree structures; enable structure_log with the tree algorithm"
                .into(),
        ));
    }
    let first_generation = match options.window {
        GenerationWindow::All => 0,
        GenerationWindow::FinalFraction(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::invalid(format!("final fraction {f} outside (0, 1]")));
            }
            let g = options.max_generations;
            let kept = (f * g as f64).ceil() as usize;
            g.saturating_sub(kept) + 1
        }
    };

    let mut matrix = FrequencyMatrix::zeros(n);
    for log in logs {
        for record in &log.records {
            if record.generation < first_generation {
                continue;
            }
            if let Some(subset) = &options.subproblems {
                if !subset.contains(&record.subproblem) {
                    continue;
                }
            }
            for &(a, b) in &record.edges {
                matrix.add_edge(a, b);
            }
        }
    }
    Ok(matrix)
}

/// Directories under `root` (or `root` itself) that hold a structure log.
pub fn find_structure_dirs(root: &Path) -> Result<Vec<PathBuf>> {
    if root.join(STRUCTURE_FILE).is_file() {
        return Ok(vec![root.to_path_buf()]);
    }
    let mut dirs: Vec<PathBuf> = fs::read_dir(root)
        .map_err(|e| Error::io(root, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.join(STRUCTURE_FILE).is_file())
        .collect();
    dirs.sort();
    if dirs.is_empty() {
        return Err(Error::MissingStructureLogs(format!(
            "no {STRUCTURE_FILE} in {} or its run directories",
            root.display()
        )));
    }
    Ok(dirs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_with(records: Vec<(usize, usize, Vec<Edge>)>, n: usize) -> StructureLog {
        StructureLog {
            n,
            records: records
                .into_iter()
                .map(|(generation, subproblem, edges)| StructureRecord {
                    generation,
                    subproblem,
                    edges,
                })
                .collect(),
        }
    }

    fn all() -> AggregateOptions {
        AggregateOptions {
            subproblems: None,
            window: GenerationWindow::All,
            max_generations: 10,
        }
    }

    #[test]
    fn single_edge_is_symmetrized() {
        let m = aggregate_structure(&[log_with(vec![(1, 0, vec![(0, 1)])], 3)], &all()).unwrap();
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.total(), 2);
        for j in 0..3 {
            assert_eq!(m.get(j, j), 0);
        }
    }

    #[test]
    fn filters_by_subproblem_and_window() {
        let log = log_with(
            vec![
                (1, 0, vec![(0, 1)]),
                (9, 0, vec![(1, 2)]),
                (10, 1, vec![(0, 2)]),
                (10, 0, vec![(0, 2)]),
            ],
            3,
        );
        let options = AggregateOptions {
            subproblems: Some(vec![0]),
            window: GenerationWindow::FinalFraction(0.2),
            max_generations: 10,
        };
        let m = aggregate_structure(&[log], &options).unwrap();
        assert_eq!(m.get(0, 1), 0);
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.get(0, 2), 1);
    }

    #[test]
    fn absent_logs_explained() {
        assert!(matches!(
            aggregate_structure(&[], &all()),
            Err(Error::MissingStructureLogs(_))
        ));
        assert!(matches!(
            aggregate_structure(&[StructureLog::new(4)], &all()),
            Err(Error::MissingStructureLogs(_))
        ));
    }

    #[test]
    fn intra_block_share() {
        let log = log_with(vec![(1, 0, vec![(0, 1), (1, 2), (4, 5)])], 10);
        let m = aggregate_structure(&[log], &all()).unwrap();
        assert!((m.intra_block_fraction(5) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trip_and_pgm() {
        let dir = tempfile::tempdir().unwrap();
        let log = log_with(vec![(1, 0, vec![(0, 1), (0, 2)]), (2, 5, vec![(2, 1)])], 3);
        let path = dir.path().join(STRUCTURE_FILE);
        log.write_csv(&path).unwrap();
        assert_eq!(StructureLog::read_csv(&path, 3).unwrap(), log);

        let m = aggregate_structure(&[log], &all()).unwrap();
        let pgm = dir.path().join("m.pgm");
        m.write_pgm(&pgm).unwrap();
        let bytes = std::fs::read(&pgm).unwrap();
        assert!(bytes.starts_with(b"P5\n3 3\n255\n"));
        assert_eq!(bytes.len(), "P5\n3 3\n255\n".len() + 9);
        assert_eq!(*bytes.iter().skip(11).max().unwrap(), 255);
        assert_eq!(
            find_structure_dirs(dir.path()).unwrap(),
            vec![dir.path().to_path_buf()]
        );
    }
}
