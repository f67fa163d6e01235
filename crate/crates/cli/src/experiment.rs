//! Batch runs: one graph and one algorithm execution per seed, scored
//! against the exact optimum when the graph is small enough.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use distcut::{cut_eval, oracle, sim, Objective};

use crate::algorithm::{solve, Algorithm, Guarantee, Mode};
use crate::config::ExperimentConfig;
use crate::HarnessError;

/// One seed of an experiment. Everything here is a pure function of the
/// config, so the CSV built from these rows is reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub achieved: u64,
    pub opt: Option<u64>,
    pub ratio: Option<f64>,
    /// Exterior edges of the decomposition, where there is one.
    pub exterior_edges: Option<u64>,
    pub rounds_used: usize,
    pub total_messages: u64,
    pub max_message_bits: u64,
    /// Largest message allowed by the configured CONGEST budget.
    pub congest_limit_bits: u64,
    /// `None` when this run carries no per-run guarantee.
    pub guarantee_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub name: String,
    pub algorithm: Algorithm,
    pub graph_class: String,
    pub objective: Objective,
    pub mode: Mode,
    pub deterministic: bool,
    pub guarantee: String,
    pub guarantee_ratio: f64,
    pub runs: Vec<RunRecord>,
    pub mean_value: f64,
    pub mean_ratio: Option<f64>,
    pub min_ratio: Option<f64>,
    /// Standard error of the mean ratio.
    pub ratio_std_error: Option<f64>,
    /// Randomised guarantees only: mean ratio is at least the guarantee less
    /// three standard errors.
    pub mean_ok: Option<bool>,
    pub violations: usize,
    pub mean_rounds: f64,
    pub max_rounds: usize,
    /// Wall-clock milliseconds per run. Kept out of the CSV.
    pub wall_ms: Vec<f64>,
}

impl ExperimentRecord {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Checks the per-run guarantee, if the algorithm has one.
///
/// Deterministic algorithms must reach their fraction of `OPT` on every run;
/// cut algorithms additionally reach `m/2` and dicut ones the fraction of the
/// `m/4` lower bound on `OPT` when the oracle is skipped. The bipartite
/// algorithm must cut every edge inside a cluster.
fn run_guarantee(alg: Algorithm, guarantee: Guarantee, achieved: u64, m: u64, opt: Option<u64>, exterior: Option<u64>) -> Option<bool> {
    if alg == Algorithm::BipartiteMaxcut {
        return exterior.map(|f| achieved + f >= m);
    }
    if !alg.deterministic() {
        return None;
    }
    let Guarantee::Fraction(num, den) = guarantee else { return None };
    let ok = match (alg.objective()?, opt) {
        (_, Some(opt)) if den * achieved < num * opt => false,
        (Objective::Cut, _) => 2 * achieved >= m,
        (Objective::Dicut, None) => 4 * den * achieved >= num * m,
        (Objective::Dicut, Some(_)) => true,
    };
    Some(ok)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len().max(1) as f64
}

/// Sample standard error of the mean.
pub fn std_error(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let mu = mean(xs);
    let var = xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (var / xs.len() as f64).sqrt()
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentRecord, HarnessError> {
    cfg.validate()?;
    let alg = cfg.algorithm;
    let mut runs = Vec::new();
    let mut wall_ms = Vec::new();
    let mut objective = None;
    for seed in cfg.seeds.values() {
        let g = cfg.graph.build(seed)?;
        let obj = Objective::for_graph(&g);
        objective.get_or_insert(obj);
        let started = Instant::now();
        let solved = solve(alg, &g, seed, &cfg.params)?;
        wall_ms.push(started.elapsed().as_secs_f64() * 1e3);

        let achieved = cut_eval::value(&g, solved.assignment.sides());
        let opt = if g.n() <= cfg.params.oracle_cap {
            let r = oracle::brute_force(&g)?;
            assert!(r.meets_folklore_floor(&g), "oracle optimum below the m/2 or m/4 floor");
            Some(r.opt_value)
        } else {
            None
        };
        let m = g.m() as u64;
        let ratio = opt.map(|o| if o == 0 { 1.0 } else { achieved as f64 / o as f64 });
        let guarantee_ok = run_guarantee(alg, alg.guarantee(obj), achieved, m, opt, solved.exterior_edges);
        let budget = sim::CongestBudget { c: cfg.params.c, fixed_point_fields: 1 };
        runs.push(RunRecord {
            seed,
            n: g.n(),
            m: g.m(),
            achieved,
            opt,
            ratio,
            exterior_edges: solved.exterior_edges,
            rounds_used: solved.metrics.rounds_used,
            total_messages: solved.metrics.total_messages,
            max_message_bits: solved.metrics.max_message_bits,
            congest_limit_bits: budget.limit(&[sim::Field::Fixed], g.n()),
            guarantee_ok,
        });
    }
    let objective = objective.unwrap_or(Objective::Cut);
    let guarantee = alg.guarantee(objective);
    let guarantee_ratio = guarantee.ratio(cfg.params.epsilon);
    let ratios: Vec<f64> = runs.iter().filter_map(|r| r.ratio).collect();
    let (mean_ratio, min_ratio, se) = if ratios.is_empty() {
        (None, None, None)
    } else {
        (Some(mean(&ratios)), ratios.iter().copied().reduce(f64::min), Some(std_error(&ratios)))
    };
    let mean_ok = match (alg.deterministic(), mean_ratio, se) {
        (false, Some(mu), Some(se)) => Some(mu >= guarantee_ratio - 3.0 * se),
        _ => None,
    };
    let rounds: Vec<f64> = runs.iter().map(|r| r.rounds_used as f64).collect();
    Ok(ExperimentRecord {
        name: cfg.name.clone(),
        algorithm: alg,
        graph_class: cfg.graph.label(),
        objective,
        mode: alg.mode(),
        deterministic: alg.deterministic(),
        guarantee: guarantee.label(),
        guarantee_ratio,
        mean_value: mean(&runs.iter().map(|r| r.achieved as f64).collect::<Vec<_>>()),
        mean_ratio,
        min_ratio,
        ratio_std_error: se,
        mean_ok,
        violations: runs.iter().filter(|r| r.guarantee_ok == Some(false)).count(),
        mean_rounds: mean(&rounds),
        max_rounds: runs.iter().map(|r| r.rounds_used).max().unwrap_or(0),
        runs,
        wall_ms,
    })
}

/// Per-run rows as CSV. Contains no timing, so equal configs give equal bytes.
pub fn write_csv<W: Write>(record: &ExperimentRecord, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for r in &record.runs {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| HarnessError::Io("csv".into(), e))?;
    Ok(())
}

pub fn csv_string(record: &ExperimentRecord) -> String {
    let mut buf = Vec::new();
    write_csv(record, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn to_json(record: &ExperimentRecord) -> String {
    serde_json::to_string_pretty(record).expect("record serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guarantee_checks() {
        let half = Guarantee::Fraction(1, 2);
        let third = Guarantee::Fraction(1, 3);
        assert_eq!(run_guarantee(Algorithm::GreedyMaxcut, half, 3, 6, Some(6), None), Some(true));
        assert_eq!(run_guarantee(Algorithm::GreedyMaxcut, half, 2, 6, None, None), Some(false));
        assert_eq!(run_guarantee(Algorithm::GreedyMaxdicut, third, 1, 6, Some(4), None), Some(false));
        assert_eq!(run_guarantee(Algorithm::GreedyMaxdicut, third, 1, 12, None, None), Some(true));
        assert_eq!(run_guarantee(Algorithm::RandomCut, half, 0, 6, Some(6), None), None);
        assert_eq!(run_guarantee(Algorithm::BipartiteMaxcut, Guarantee::OneMinusEpsilon, 5, 6, None, Some(0)), Some(false));
    }

    #[test]
    fn standard_error() {
        assert_eq!(std_error(&[1.0]), 0.0);
        assert!((std_error(&[1.0, 3.0]) - 1.0).abs() < 1e-12);
    }
}
