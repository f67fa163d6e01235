//! Summary tables: one row per (algorithm, graph class).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::experiment::ExperimentRecord;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub graph_class: String,
    pub runs: usize,
    pub mean_rounds: f64,
    pub max_rounds: usize,
    pub deterministic: bool,
    pub mode: String,
    pub worst_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub guarantee: String,
    pub violations: usize,
}

/// Rows sorted by algorithm name, then graph class. Records sharing both are
/// merged.
pub fn summary_rows(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, String), Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.algorithm.name().to_string(), r.graph_class.clone())).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((algorithm, graph_class), recs)| {
            let runs: Vec<_> = recs.iter().flat_map(|r| &r.runs).collect();
            let ratios: Vec<f64> = runs.iter().filter_map(|r| r.ratio).collect();
            let first = recs[0];
            SummaryRow {
                algorithm,
                graph_class,
                runs: runs.len(),
                mean_rounds: runs.iter().map(|r| r.rounds_used as f64).sum::<f64>() / runs.len().max(1) as f64,
                max_rounds: runs.iter().map(|r| r.rounds_used).max().unwrap_or(0),
                deterministic: first.deterministic,
                mode: first.mode.label().to_string(),
                worst_ratio: ratios.iter().copied().reduce(f64::min),
                mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                guarantee: first.guarantee.clone(),
                violations: recs.iter().map(|r| r.violations).sum(),
            }
        })
        .collect()
}

fn ratio_cell(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.3}"))
}

/// Plain-text table with aligned columns.
pub fn summary_table(records: &[ExperimentRecord]) -> String {
    let header = ["algorithm", "graph", "runs", "rounds(mean/max)", "det", "model", "worst", "mean", "guarantee", "violations"];
    let rows: Vec<[String; 10]> = summary_rows(records)
        .into_iter()
        .map(|r| {
            [
                r.algorithm,
                r.graph_class,
                r.runs.to_string(),
                format!("{:.1}/{}", r.mean_rounds, r.max_rounds),
                if r.deterministic { "yes" } else { "no" }.to_string(),
                r.mode,
                ratio_cell(r.worst_ratio),
                ratio_cell(r.mean_ratio),
                r.guarantee,
                r.violations.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header.map(String::from));
    for row in &rows {
        line(row);
    }
    out
}

pub fn summary_csv(records: &[ExperimentRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in summary_rows(records) {
        w.serialize(row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}
