use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use distcut::decomposition::{self, DecompositionParams, Shifts};
use distcut::sim::ModelMode;
use distcut::{cut_eval, oracle};
use distcut_harness::config::read_graph;
use distcut_harness::experiment::{csv_string, to_json};
use distcut_harness::{run_experiment, solve, summary_csv, summary_table, Algorithm, ExperimentConfig, ExperimentRecord, GraphSpec, Mode, Params};

#[derive(Parser)]
#[command(name = "distcut", version, about = "Distributed Max-Cut / Max-Dicut experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Run an experiment config; exits non-zero on any guarantee violation.
    Run(RunArgs),
    /// Solve a graph exactly by enumeration.
    Oracle {
        graph: PathBuf,
        /// Witness assignment as `vertex,side` CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarise experiment JSON reports.
    Table {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Run one algorithm on one graph.
    Solve(SolveArgs),
    /// Run only the decomposition and write `vertex,center,delta`.
    Decompose(DecomposeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gnp,
    Bipartite,
    EvenCycle,
    Cycle,
    Complete,
    Star,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    directed: bool,
    #[arg(long, default_value_t = 5)]
    n1: usize,
    #[arg(long, default_value_t = 5)]
    n2: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct RunArgs {
    config: PathBuf,
    /// Directory for `<name>.csv` and `<name>.json`.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, value_enum)]
    algorithm: Option<Algorithm>,
    /// Number of seeds, starting at `--seed-base`.
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long)]
    seed_base: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    exact_cap: Option<usize>,
    #[arg(long)]
    oracle_cap: Option<usize>,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = distcut::DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    /// Assignment as `vertex,side` CSV; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Execution metrics as JSON.
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// Per-round message counts as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Cluster report as JSON (decomposition-based algorithms).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DecomposeArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 0.2)]
    beta: f64,
    #[arg(long, default_value_t = 3.0)]
    k: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Congest)]
    mode: Mode,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let spec = match a.kind {
        Kind::Gnp => GraphSpec::Gnp { n: a.n, p: a.p, directed: a.directed },
        Kind::Bipartite => GraphSpec::Bipartite { n1: a.n1, n2: a.n2, p: a.p },
        Kind::EvenCycle => GraphSpec::EvenCycle { n: a.n },
        Kind::Cycle => GraphSpec::Cycle { n: a.n, directed: a.directed },
        Kind::Complete => GraphSpec::Complete { n: a.n },
        Kind::Star => GraphSpec::Star { leaves: a.n, directed: a.directed },
    };
    let g = spec.build(a.seed)?;
    emit(a.out.as_deref(), &g.to_edge_list())
}

fn run(a: RunArgs) -> Result<bool> {
    let mut cfg = ExperimentConfig::load(&a.config)?;
    if let Some(alg) = a.algorithm {
        cfg.algorithm = alg;
    }
    if let Some(count) = a.seeds {
        cfg.seeds.list = None;
        cfg.seeds.count = count;
    }
    if let Some(base) = a.seed_base {
        cfg.seeds.list = None;
        cfg.seeds.base = base;
    }
    let p = &mut cfg.params;
    p.epsilon = a.epsilon.unwrap_or(p.epsilon);
    p.k = a.k.unwrap_or(p.k);
    p.c = a.c.unwrap_or(p.c);
    p.exact_cap = a.exact_cap.unwrap_or(p.exact_cap);
    p.oracle_cap = a.oracle_cap.unwrap_or(p.oracle_cap);
    cfg.validate()?;

    let record = run_experiment(&cfg)?;
    fs::create_dir_all(&a.out_dir)?;
    fs::write(a.out_dir.join(format!("{}.csv", cfg.name)), csv_string(&record))?;
    fs::write(a.out_dir.join(format!("{}.json", cfg.name)), to_json(&record))?;
    print!("{}", summary_table(std::slice::from_ref(&record)));
    if !record.passed() {
        eprintln!("{} guarantee violation(s)", record.violations);
    }
    Ok(record.passed())
}

fn oracle_cmd(graph: &Path, out: Option<&Path>) -> Result<()> {
    let g = read_graph(graph)?;
    let r = oracle::brute_force(&g)?;
    println!("opt_value={} enumerated={}", r.opt_value, r.enumerated);
    if let Some(path) = out {
        fs::write(path, r.witness.to_csv())?;
    }
    Ok(())
}

fn table(reports: &[PathBuf], csv: bool) -> Result<bool> {
    let mut records = Vec::new();
    for path in reports {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let record: ExperimentRecord =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        records.push(record);
    }
    print!("{}", if csv { summary_csv(&records) } else { summary_table(&records) });
    Ok(records.iter().all(ExperimentRecord::passed))
}

fn solve_cmd(a: SolveArgs) -> Result<()> {
    let g = read_graph(&a.graph)?;
    let params = Params { epsilon: a.epsilon, exact_cap: a.exact_cap, ..Params::default() };
    let solved = solve(a.algorithm, &g, a.seed, &params)?;
    emit(a.out.as_deref(), &solved.assignment.to_csv())?;
    eprintln!("value={} rounds={}", cut_eval::value(&g, solved.assignment.sides()), solved.metrics.rounds_used);
    if let Some(path) = &a.metrics {
        fs::write(path, serde_json::to_string_pretty(&solved.metrics)?)?;
    }
    if let Some(path) = &a.trace {
        let mut lines = String::new();
        for t in &solved.metrics.per_round {
            lines.push_str(&serde_json::to_string(t)?);
            lines.push('\n');
        }
        fs::write(path, lines)?;
    }
    if let Some(path) = &a.report {
        match &solved.report {
            Some(r) => fs::write(path, r.to_json())?,
            None => bail!("{} produces no cluster report", a.algorithm),
        }
    }
    Ok(())
}

fn decompose_cmd(a: DecomposeArgs) -> Result<()> {
    let g = read_graph(&a.graph)?;
    let params = DecompositionParams::new(a.beta, a.k)?;
    let mode = match a.mode {
        Mode::Local => ModelMode::Local,
        Mode::Congest => ModelMode::congest(),
    };
    let (centers, metrics) = decomposition::decompose(&g, &params, mode, a.seed, &Shifts::Sampled)?;
    emit(a.out.as_deref(), &centers.to_csv())?;
    eprintln!(
        "clusters={} exterior_edges={} rounds={}",
        centers.clusters().len(),
        decomposition::exterior_edges(&g, &centers).len(),
        metrics.rounds_used
    );
    Ok(())
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().command {
        Command::Gen(a) => gen(a).map(|_| true),
        Command::Run(a) => run(a),
        Command::Oracle { graph, out } => oracle_cmd(&graph, out.as_deref()).map(|_| true),
        Command::Table { reports, csv } => table(&reports, csv),
        Command::Solve(a) => solve_cmd(a).map(|_| true),
        Command::Decompose(a) => decompose_cmd(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
