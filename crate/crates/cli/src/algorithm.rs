//! Name-based dispatch over every solver in the core crate.

use serde::{Deserialize, Serialize};

use distcut::clustering::{self, ClusterOptions};
use distcut::decomposition::exterior_edges;
use distcut::greedy::{self, FastOptions, LowView};
use distcut::{oracle, ClusterSolveReport, CutAssignment, ExecutionMetrics, Graph, Objective};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Algorithm {
    RandomCut,
    SequentialGreedyMaxcut,
    SequentialGreedyMaxdicut,
    GreedyMaxcut,
    GreedyMaxdicut,
    RandomizedMaxdicut,
    FastGreedyMaxcut,
    FastGreedyMaxdicut,
    BipartiteMaxcut,
    DecompositionMaxcut,
    DecompositionMaxdicut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Mode {
    Local,
    Congest,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Local => "LOCAL",
            Mode::Congest => "CONGEST",
        }
    }
}

/// Approximation guarantee as stated for an algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Guarantee {
    /// `num/den` of the optimum.
    Fraction(u64, u64),
    /// `1 − ε` of the optimum.
    OneMinusEpsilon,
}

impl Guarantee {
    pub fn label(self) -> String {
        match self {
            Guarantee::Fraction(n, d) => format!("{n}/{d}"),
            Guarantee::OneMinusEpsilon => "1−ε".to_string(),
        }
    }

    pub fn ratio(self, epsilon: f64) -> f64 {
        match self {
            Guarantee::Fraction(n, d) => n as f64 / d as f64,
            Guarantee::OneMinusEpsilon => 1.0 - epsilon,
        }
    }
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Algorithm::RandomCut,
        Algorithm::SequentialGreedyMaxcut,
        Algorithm::SequentialGreedyMaxdicut,
        Algorithm::GreedyMaxcut,
        Algorithm::GreedyMaxdicut,
        Algorithm::RandomizedMaxdicut,
        Algorithm::FastGreedyMaxcut,
        Algorithm::FastGreedyMaxdicut,
        Algorithm::BipartiteMaxcut,
        Algorithm::DecompositionMaxcut,
        Algorithm::DecompositionMaxdicut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RandomCut => "random_cut",
            Algorithm::SequentialGreedyMaxcut => "sequential_greedy_maxcut",
            Algorithm::SequentialGreedyMaxdicut => "sequential_greedy_maxdicut",
            Algorithm::GreedyMaxcut => "greedy_maxcut",
            Algorithm::GreedyMaxdicut => "greedy_maxdicut",
            Algorithm::RandomizedMaxdicut => "randomized_maxdicut",
            Algorithm::FastGreedyMaxcut => "fast_greedy_maxcut",
            Algorithm::FastGreedyMaxdicut => "fast_greedy_maxdicut",
            Algorithm::BipartiteMaxcut => "bipartite_maxcut",
            Algorithm::DecompositionMaxcut => "decomposition_maxcut",
            Algorithm::DecompositionMaxdicut => "decomposition_maxdicut",
        }
    }

    /// The model the algorithm is written for. Sequential references report
    /// LOCAL since they are not message-passing programs at all.
    pub fn mode(self) -> Mode {
        match self {
            Algorithm::RandomCut
            | Algorithm::GreedyMaxcut
            | Algorithm::GreedyMaxdicut
            | Algorithm::RandomizedMaxdicut
            | Algorithm::BipartiteMaxcut => Mode::Congest,
            _ => Mode::Local,
        }
    }

    /// `None` when the algorithm accepts either orientation.
    pub fn objective(self) -> Option<Objective> {
        match self {
            Algorithm::RandomCut => None,
            Algorithm::SequentialGreedyMaxcut
            | Algorithm::GreedyMaxcut
            | Algorithm::FastGreedyMaxcut
            | Algorithm::BipartiteMaxcut
            | Algorithm::DecompositionMaxcut => Some(Objective::Cut),
            _ => Some(Objective::Dicut),
        }
    }

    /// True when the guarantee holds on every run rather than in expectation
    /// or with high probability.
    pub fn deterministic(self) -> bool {
        matches!(
            self,
            Algorithm::SequentialGreedyMaxcut
                | Algorithm::SequentialGreedyMaxdicut
                | Algorithm::GreedyMaxcut
                | Algorithm::GreedyMaxdicut
                | Algorithm::FastGreedyMaxcut
                | Algorithm::FastGreedyMaxdicut
        )
    }

    pub fn guarantee(self, objective: Objective) -> Guarantee {
        match self {
            Algorithm::RandomCut if objective == Objective::Dicut => Guarantee::Fraction(1, 4),
            Algorithm::BipartiteMaxcut | Algorithm::DecompositionMaxcut | Algorithm::DecompositionMaxdicut => {
                Guarantee::OneMinusEpsilon
            }
            Algorithm::SequentialGreedyMaxdicut | Algorithm::GreedyMaxdicut | Algorithm::FastGreedyMaxdicut => {
                Guarantee::Fraction(1, 3)
            }
            _ => Guarantee::Fraction(1, 2),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Tunables shared by all algorithms; each reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub epsilon: f64,
    /// Decomposition exponent.
    pub k: f64,
    /// CONGEST budget multiplier: messages may use `c · ⌈log2 n⌉` bits plus
    /// one fixed-point field.
    pub c: u32,
    /// Largest cluster or component solved exhaustively by a leader.
    pub exact_cap: usize,
    /// Largest graph handed to the brute-force oracle.
    pub oracle_cap: usize,
    pub low_view: LowView,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            epsilon: 0.3,
            k: 3.0,
            c: 4,
            exact_cap: distcut::DEFAULT_EXACT_CAP,
            oracle_cap: oracle::ORACLE_CAP,
            low_view: LowView::Undecided,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub assignment: CutAssignment,
    pub metrics: ExecutionMetrics,
    pub report: Option<ClusterSolveReport>,
    /// Edges between clusters, for the decomposition-based algorithms.
    pub exterior_edges: Option<u64>,
}

impl Solved {
    fn plain(assignment: CutAssignment, metrics: ExecutionMetrics) -> Self {
        Solved { assignment, metrics, report: None, exterior_edges: None }
    }
}

/// Runs `alg` on `g`. Sequential references process vertices in id order.
pub fn solve(alg: Algorithm, g: &Graph, seed: u64, params: &Params) -> distcut::Result<Solved> {
    let ids: Vec<usize> = g.vertices().collect();
    let cluster_opts = ClusterOptions { k: params.k, exact_cap: params.exact_cap };
    let fast_opts = FastOptions { exact_cap: params.exact_cap, low_view: params.low_view };
    Ok(match alg {
        Algorithm::RandomCut => {
            let (a, m) = oracle::random_cut(g, seed)?;
            Solved::plain(a, m)
        }
        Algorithm::SequentialGreedyMaxcut => {
            Solved::plain(oracle::sequential_greedy_maxcut(g, &ids)?, ExecutionMetrics::default())
        }
        Algorithm::SequentialGreedyMaxdicut => {
            Solved::plain(greedy::sequential_greedy_maxdicut(g, &ids)?, ExecutionMetrics::default())
        }
        Algorithm::GreedyMaxcut => {
            let (a, m) = greedy::distributed_greedy_maxcut(g, seed)?;
            Solved::plain(a, m)
        }
        Algorithm::GreedyMaxdicut => {
            let (a, m) = greedy::distributed_greedy_maxdicut(g, seed)?;
            Solved::plain(a, m)
        }
        Algorithm::RandomizedMaxdicut => {
            let (a, m) = greedy::distributed_randomized_maxdicut(g, seed)?;
            Solved::plain(a, m)
        }
        Algorithm::FastGreedyMaxcut | Algorithm::FastGreedyMaxdicut => {
            check_orientation(alg, g)?;
            let run = greedy::fast_greedy(g, seed, &fast_opts)?;
            Solved::plain(run.assignment, run.metrics)
        }
        Algorithm::BipartiteMaxcut => {
            let run = clustering::bipartite_run(g, params.epsilon, seed, &cluster_opts)?;
            let f = exterior_edges(g, &run.centers).len() as u64;
            Solved { assignment: run.assignment, metrics: run.metrics, report: Some(run.report), exterior_edges: Some(f) }
        }
        Algorithm::DecompositionMaxcut | Algorithm::DecompositionMaxdicut => {
            check_orientation(alg, g)?;
            let run = clustering::decomposition_run(g, params.epsilon, seed, &cluster_opts)?;
            let f = exterior_edges(g, &run.centers).len() as u64;
            Solved { assignment: run.assignment, metrics: run.metrics, report: Some(run.report), exterior_edges: Some(f) }
        }
    })
}

fn check_orientation(alg: Algorithm, g: &Graph) -> distcut::Result<()> {
    match (alg.objective(), g.is_directed()) {
        (Some(Objective::Cut), true) => Err(distcut::Error::ExpectedUndirected),
        (Some(Objective::Dicut), false) => Err(distcut::Error::ExpectedDirected),
        _ => Ok(()),
    }
}
