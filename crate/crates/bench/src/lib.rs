//! Shared fixtures for the benchmarks.

use distcut::graph::{self, Graph};

/// Sparse random graph with average degree near `avg_degree`.
pub fn sparse(n: usize, avg_degree: f64, seed: u64, directed: bool) -> Graph {
    let p = (avg_degree / (n.max(2) - 1) as f64).min(1.0);
    let p = if directed { p / 2.0 } else { p };
    graph::gen_gnp(n, p, seed, directed).expect("probability in range")
}
