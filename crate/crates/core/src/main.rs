use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use moeadgm::runner::{
    aggregate_structure, find_structure_dirs, front_csv, load_config, parse_pairs, run_batch,
    run_dir, AggregateOptions, GenerationWindow, StructureLog, CONFIG_FILE, STRUCTURE_FILE,
};
use moeadgm::{BiTrapProblem, Error, Result};

#[derive(Parser)]
#[command(
    name = "moeadgm",
    version,
    about = "MOEA/D with probabilistic-model variation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single seed.
    Run(RunArgs),
    /// Run a list of seeds with identical settings.
    Batch {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', conflicts_with = "runs")]
        seeds: Vec<u64>,
        /// Number of consecutive seeds starting at --seed-start.
        #[arg(long)]
        runs: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed_start: u64,
    },
    /// Print the exact Pareto front of a problem as CSV.
    Front {
        #[arg(long, default_value = "bitrap")]
        problem: String,
        #[arg(long)]
        n: usize,
        /// Print only the number of front points.
        #[arg(long)]
        count: bool,
    },
    /// Merge tree-structure logs into an edge-frequency matrix and heat map.
    AggregateStructure {
        /// Run directories, or batch directories holding run directories.
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated 0-based subproblem indices (default: all).
        #[arg(long, value_delimiter = ',')]
        subproblems: Vec<usize>,
        /// Only merge the last fraction of generations, e.g. 0.1.
        #[arg(long)]
        final_fraction: Option<f64>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` manifest; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    ts: Option<usize>,
    #[arg(long)]
    tr: Option<usize>,
    #[arg(long)]
    nr: Option<usize>,
    #[arg(long)]
    scalarization: Option<String>,
    /// Diversity-preserving sampling on.
    #[arg(long, conflicts_with = "no_ds")]
    ds: bool,
    /// Diversity-preserving sampling off.
    #[arg(long)]
    no_ds: bool,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    structure_log: bool,
    #[arg(long)]
    structure_stride: Option<usize>,
    #[arg(long)]
    structure_subproblems: Option<String>,
    #[arg(long)]
    crossover_rate: Option<f64>,
    #[arg(long)]
    mutation_rate: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    prior_r: Option<f64>,
    #[arg(long)]
    mi_prior_r: Option<f64>,
    #[arg(long)]
    mi_threshold: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Vec<(String, String)> {
        let mut kv = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                kv.push((k.to_string(), v));
            }
        };
        push("problem", self.problem.clone());
        push("n", self.n.map(|v| v.to_string()));
        push("algorithm", self.algo.clone());
        push("h", self.h.map(|v| v.to_string()));
        push("ts", self.ts.map(|v| v.to_string()));
        push("tr", self.tr.map(|v| v.to_string()));
        push("nr", self.nr.map(|v| v.to_string()));
        push("scalarization", self.scalarization.clone());
        push("ds", self.ds.then(|| "true".into()));
        push("ds", self.no_ds.then(|| "false".into()));
        push("max_generations", self.generations.map(|v| v.to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("structure_log", self.structure_log.then(|| "true".into()));
        push(
            "structure_stride",
            self.structure_stride.map(|v| v.to_string()),
        );
        push("structure_subproblems", self.structure_subproblems.clone());
        push("crossover_rate", self.crossover_rate.map(|v| v.to_string()));
        push("mutation_rate", self.mutation_rate.map(|v| v.to_string()));
        push("alpha", self.alpha.map(|v| v.to_string()));
        push("prior_r", self.prior_r.map(|v| v.to_string()));
        push("mi_prior_r", self.mi_prior_r.map(|v| v.to_string()));
        push("mi_threshold", self.mi_threshold.map(|v| v.to_string()));
        push(
            "output_dir",
            self.out.as_ref().map(|p| p.display().to_string()),
        );
        kv
    }
}

fn run_dir_config(dir: &Path) -> Result<(usize, usize)> {
    let path = dir.join(CONFIG_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
        path: path.clone(),
        source: e,
    })?;
    let get = |key: &str| -> Result<usize> {
        parse_pairs(&text)?
            .into_iter()
            .find(|(k, _)| k == key)
            .and_then(|(_, v)| v.parse().ok())
            .ok_or_else(|| Error::Parse {
                path: path.clone(),
                message: format!("missing `{key}`"),
            })
    };
    Ok((get("n")?, get("max_generations")?))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = load_config(args.config.as_deref(), &args.overrides())?;
            let summary = run_batch(&config, &[config.seed])?;
            report(&summary)?;
            if let Some(root) = &config.output_dir {
                eprintln!("artifacts in {}", run_dir(root, config.seed).display());
            }
        }
        Command::Batch {
            run,
            seeds,
            runs,
            seed_start,
        } => {
            let config = load_config(run.config.as_deref(), &run.overrides())?;
            let seeds = match runs {
                Some(k) => (seed_start..seed_start + k).collect(),
                None if !seeds.is_empty() => seeds,
                None => return Err(Error::Usage("batch needs --seeds or --runs".into())),
            };
            let summary = run_batch(&config, &seeds)?;
            report(&summary)?;
        }
        Command::Front { problem, n, count } => {
            if problem != "bitrap" {
                return Err(Error::Usage(format!(
                    "unknown problem {problem:?} (available: bitrap)"
                )));
            }
            let front = BiTrapProblem::new(n)?.true_pareto_front();
            if count {
                println!("{}", front.len());
            } else {
                let mut archive = moeadgm::moead::ExternalArchive::new();
                for (point, rep) in front.points.iter().zip(&front.representatives) {
                    if let Some(g) = rep {
                        archive.update(g, point);
                    }
                }
                print!("{}", front_csv(&archive));
            }
        }
        Command::AggregateStructure {
            inputs,
            out,
            subproblems,
            final_fraction,
        } => {
            let mut logs = Vec::new();
            let mut max_generations = 0;
            for input in &inputs {
                for dir in find_structure_dirs(input)? {
                    let (n, generations) = run_dir_config(&dir)?;
                    max_generations = max_generations.max(generations);
                    logs.push(StructureLog::read_csv(&dir.join(STRUCTURE_FILE), n)?);
                }
            }
            let options = AggregateOptions {
                subproblems: (!subproblems.is_empty()).then_some(subproblems),
                window: final_fraction
                    .map_or(GenerationWindow::All, GenerationWindow::FinalFraction),
                max_generations,
            };
            let matrix = aggregate_structure(&logs, &options)?;
            std::fs::create_dir_all(&out).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })?;
            matrix.write_csv(&out.join("frequency.csv"))?;
            matrix.write_pgm(&out.join("frequency.pgm"))?;
            println!(
                "runs={} total_mass={} intra_block_fraction={}",
                logs.len(),
                matrix.total(),
                matrix.intra_block_fraction(5)
            );
        }
    }
    Ok(())
}

fn report(summary: &moeadgm::runner::BatchSummary) -> Result<()> {
    print!("{}", summary.runs_csv());
    println!(
        "# mean igd {} (std {}), mean true_count {} (std {})",
        summary.igd_mean, summary.igd_std, summary.true_count_mean, summary.true_count_std
    );
    let failed = summary.failures().count();
    if failed > 0 {
        return Err(Error::Usage(format!(
            "{failed} of {} runs failed",
            summary.runs.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            // keep the diagnostic to one line; the usage block follows it
            let text = e.to_string();
            eprintln!(
                "{}",
                text.lines().next().unwrap_or("error: invalid arguments")
            );
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
