//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every optimum comes from the brute-force oracle and every
//! cut value is recounted here from the edge list.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use distcut::clustering::{self, ClusterOptions};
use distcut::decomposition::{self, DecompositionParams};
use distcut::graph::{self, Graph};
use distcut::greedy::{self, FastOptions, GreedyRule};
use distcut::sim::{self, CongestBudget, Field};
use distcut::{cut_eval, oracle, SolveMethod};
use distcut_harness::experiment::csv_string;
use distcut_harness::{run_experiment, ExperimentConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Deterministic stream for corpus construction.
struct Stream(u64);

impl Stream {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        sim::mix64(self.0)
    }

    fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }

    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn mask(&mut self, n: usize) -> Vec<bool> {
        (0..n).map(|_| self.next() & 1 == 1).collect()
    }
}

/// Objective counted straight from the edge list.
fn count(edges: &[(usize, usize)], directed: bool, s: &[bool]) -> u64 {
    edges.iter().filter(|&&(u, v)| if directed { s[u] && !s[v] } else { s[u] != s[v] }).count() as u64
}

fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

fn opt(g: &Graph) -> u64 {
    oracle::brute_force(g).expect("oracle-sized graph").opt_value
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn std_error(xs: &[f64]) -> f64 {
    let mu = mean(xs);
    let var = xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (var / xs.len() as f64).sqrt()
}

fn verdict(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Err(format!("{} failure(s): {}", failures.len(), shown.join("; ")))
    }
}

/// Prints the largest round count per key and whether it never decreases.
fn envelope(label: &str, points: &[(usize, usize)]) {
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for &(x, r) in points {
        let e = best.entry(x).or_default();
        *e = (*e).max(r);
    }
    let cells: Vec<String> = best.iter().map(|(x, r)| format!("{x}:{r}")).collect();
    let monotone = best.values().zip(best.values().skip(1)).all(|(a, b)| a <= b);
    println!("INFO {label} max rounds [{}] monotone={monotone}", cells.join(" "));
}

fn greedy_maxcut_guarantee() -> Outcome {
    let mut failures = Vec::new();
    let mut rounds = Vec::new();
    for i in 0..200u64 {
        let n = 4 + (i % 13) as usize;
        let p = [0.2, 0.5, 0.8][(i % 3) as usize];
        let g = graph::gen_gnp(n, p, 1_000 + i, false).unwrap();
        let (a, metrics) = greedy::distributed_greedy_maxcut(&g, i).unwrap();
        let cut = count(&edge_list(&g), false, a.sides());
        let best = opt(&g);
        if 2 * cut < g.m() as u64 || 2 * cut < best {
            failures.push(format!("graph {i}: cut {cut}, m {}, OPT {best}", g.m()));
        }
        rounds.push((g.max_degree(), metrics.rounds_used));
    }
    envelope("greedy_maxcut by max degree", &rounds);
    verdict(failures, "200 graphs, cut >= max(m, OPT)/2 on every run".into())
}

fn greedy_maxdicut_guarantee() -> Outcome {
    let mut failures = Vec::new();
    let mut mismatches = 0;
    for i in 0..200u64 {
        let n = 3 + (i % 12) as usize;
        let p = [0.2, 0.4, 0.6][(i % 3) as usize];
        let g = graph::gen_gnp(n, p, 2_000 + i, true).unwrap();
        let run = greedy::greedy_trace(&g, i, GreedyRule::Dicut).unwrap();
        let dicut = count(&edge_list(&g), true, run.assignment.sides());
        let best = opt(&g);
        if 3 * dicut < best {
            failures.push(format!("graph {i}: dicut {dicut}, OPT {best}"));
        }
        let (_, steps) = greedy::sequential_double_greedy(&g, &run.coloring.induced_order()).unwrap();
        for s in steps {
            let d = run.decisions[s.vertex];
            if (d.side, d.a, d.b) != (s.joined, s.a, s.b) {
                mismatches += 1;
                failures.push(format!("graph {i} vertex {}: ({}, {}, {}) vs ({}, {}, {})", s.vertex, d.side, d.a, d.b, s.joined, s.a, s.b));
            }
        }
    }
    verdict(failures, format!("200 digraphs, dicut >= OPT/3, {mismatches} decisions differ from the sequential order"))
}

fn randomized_maxdicut_expectation() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for i in 0..10u64 {
        let n = 8 + (i % 5) as usize;
        let g = graph::gen_gnp(n, 0.3, 3_000 + i, true).unwrap();
        let edges = edge_list(&g);
        let best = opt(&g) as f64;
        let values: Vec<f64> = (0..400)
            .map(|seed| {
                let (a, _) = greedy::distributed_randomized_maxdicut(&g, seed).unwrap();
                count(&edges, true, a.sides()) as f64
            })
            .collect();
        let (mu, se) = (mean(&values), std_error(&values));
        let slack = mu - (0.5 * best - 3.0 * se);
        worst = worst.min(slack);
        if slack < 0.0 {
            failures.push(format!("digraph {i}: mean {mu:.3}, OPT {best}, SE {se:.3}"));
        }
    }
    verdict(failures, format!("10 digraphs x 400 seeds, smallest margin over OPT/2 - 3SE is {worst:.3}"))
}

fn decomposition_quality() -> Outcome {
    let params = DecompositionParams::new(0.2, 3.0).unwrap();
    let n = 200;
    let r = params.rounds(n);
    let mut failures = Vec::new();
    let mut fractions = Vec::new();
    let mut disconnected = 0;
    for seed in 0..100u64 {
        let g = graph::gen_gnp(n, 0.05, 4_000 + seed, false).unwrap();
        let (centers, metrics) = decomposition::distributed_decomposition(&g, &params, seed).unwrap();
        let exterior = edge_list(&g).iter().filter(|&&(u, v)| centers.center[u] != centers.center[v]).count();
        fractions.push(exterior as f64 / g.m() as f64);
        if metrics.rounds_used != r {
            failures.push(format!("seed {seed}: {} rounds, expected {r}", metrics.rounds_used));
        }
        for d in decomposition::cluster_diameters(&g, &centers) {
            if d.weak > r {
                failures.push(format!("seed {seed}: cluster {} weak diameter {}", d.center, d.weak));
            }
            if d.strong.is_none() {
                disconnected += 1;
                failures.push(format!("seed {seed}: cluster {} disconnected", d.center));
            }
        }
    }
    let f = mean(&fractions);
    if f > 0.2 + 0.05 {
        failures.push(format!("mean |F|/m = {f:.4}"));
    }
    verdict(failures, format!("100 seeds, mean |F|/m = {f:.4}, R = {r}, {disconnected} disconnected clusters"))
}

fn bipartite_one_minus_epsilon() -> Outcome {
    let eps = 0.3;
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for p in [0.2, 0.5] {
        let mut ratios = Vec::new();
        for seed in 0..50u64 {
            let g = graph::gen_random_bipartite(25, 25, p, 5_000 + seed).unwrap().graph;
            let run = clustering::bipartite_run(&g, eps, seed, &ClusterOptions::default()).unwrap();
            let edges = edge_list(&g);
            let cut = count(&edges, false, run.assignment.sides());
            let f = edges.iter().filter(|&&(u, v)| run.centers.center[u] != run.centers.center[v]).count() as u64;
            if cut + f < g.m() as u64 {
                failures.push(format!("p={p} seed {seed}: cut {cut} + |F| {f} < m {}", g.m()));
            }
            let limit = CongestBudget::default().limit(&[Field::Fixed], g.n());
            if run.metrics.max_message_bits > limit {
                failures.push(format!("p={p} seed {seed}: {} bits over limit {limit}", run.metrics.max_message_bits));
            }
            ratios.push(cut as f64 / g.m().max(1) as f64);
        }
        let mu = mean(&ratios);
        if mu < 1.0 - eps {
            failures.push(format!("p={p}: mean cut/m = {mu:.4}"));
        }
        summary.push(format!("p={p} mean cut/m {mu:.4}"));
    }
    verdict(failures, format!("2 x 50 seeds, {}", summary.join(", ")))
}

fn decomposition_one_minus_epsilon() -> Outcome {
    let eps = 0.4;
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for directed in [false, true] {
        let mut ratios = Vec::new();
        for seed in 0..30u64 {
            let n = 8 + (seed % 7) as usize;
            let g = graph::gen_gnp(n, 0.35, 6_000 + seed, directed).unwrap();
            let run = clustering::decomposition_run(&g, eps, seed, &ClusterOptions::default()).unwrap();
            let achieved = count(&edge_list(&g), directed, run.assignment.sides());
            let best = opt(&g);
            ratios.push(if best == 0 { 1.0 } else { achieved as f64 / best as f64 });
            if run.report.clusters.iter().all(|c| c.method == SolveMethod::Exact) {
                let cluster_opts: u64 = run
                    .centers
                    .clusters()
                    .values()
                    .map(|members| {
                        let keep: Vec<bool> = g.vertices().map(|v| members.contains(&v)).collect();
                        opt(&g.induced(&keep).0)
                    })
                    .sum();
                if achieved < cluster_opts {
                    failures.push(format!("directed={directed} seed {seed}: {achieved} < cluster optima {cluster_opts}"));
                }
            }
        }
        let mu = mean(&ratios);
        if mu < 1.0 - eps {
            failures.push(format!("directed={directed}: mean ratio {mu:.4}"));
        }
        summary.push(format!("{} mean ratio {mu:.4}", if directed { "dicut" } else { "cut" }));
    }
    verdict(failures, format!("2 x 30 seeds, {}", summary.join(", ")))
}

/// Sparse background plus a few hubs adjacent to most vertices.
fn hub_graph(rng: &mut Stream, n: usize, hubs: usize, directed: bool) -> Graph {
    let mut pairs = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u < hubs { 0.8 } else { 0.15 };
            if rng.unit() < p {
                pairs.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = pairs.into_iter().map(|(u, v)| if directed && rng.next() & 1 == 1 { (v, u) } else { (u, v) }).collect();
    Graph::from_edges(n, directed, &edges).unwrap()
}

fn fast_hybrid() -> Outcome {
    let mut rng = Stream(7);
    let mut failures = Vec::new();
    let mut with_highs = 0;
    let mut max_distance = 0;
    let mut rounds = Vec::new();
    for i in 0..120u64 {
        let n = 5 + (i % 12) as usize;
        let hubs = 1 + (i % 4) as usize;
        let directed = i % 2 == 1;
        let g = hub_graph(&mut rng, n, hubs, directed);
        let run = greedy::fast_greedy(&g, i, &FastOptions::default()).unwrap();
        let value = count(&edge_list(&g), directed, run.assignment.sides());
        let best = opt(&g);
        let factor = if directed { 3 } else { 2 };
        if factor * value < best {
            failures.push(format!("instance {i}: value {value}, OPT {best}, directed={directed}"));
        }
        let split = greedy::degree_split(&g);
        with_highs += usize::from(!split.high_ids.is_empty());
        let audit = greedy::audit_high_distances(&g, &split);
        max_distance = max_distance.max(audit.max_distance);
        if audit.max_distance > 3 * greedy::degree_threshold(n) {
            failures.push(format!("instance {i}: high distance {}", audit.max_distance));
        }
        rounds.push((greedy::degree_threshold(n), run.metrics.rounds_used));
    }
    envelope("fast_greedy by ceil(sqrt n)", &rounds);
    verdict(
        failures,
        format!("120 instances ({with_highs} with high-degree vertices), largest high distance {max_distance}"),
    )
}

fn kernel_identities() -> Outcome {
    let mut rng = Stream(11);
    let mut failures = Vec::new();
    for i in 0..1000 {
        let n = 2 + rng.below(9) as usize;
        let directed = i % 2 == 1;
        let g = graph::gen_gnp(n, rng.unit(), rng.next(), directed).unwrap();
        let edges = edge_list(&g);
        let (s, t) = (rng.mask(n), rng.mask(n));
        let union: Vec<bool> = s.iter().zip(&t).map(|(a, b)| *a || *b).collect();
        let inter: Vec<bool> = s.iter().zip(&t).map(|(a, b)| *a && *b).collect();
        let f = |x: &[bool]| cut_eval::value(&g, x);
        for x in [&s, &t, &union, &inter] {
            if f(x) != count(&edges, directed, x) {
                failures.push(format!("pair {i}: value disagrees with a direct count"));
            }
        }
        if f(&s) + f(&t) < f(&union) + f(&inter) {
            failures.push(format!("pair {i}: submodularity"));
        }
        let split = rng.mask(edges.len());
        let part = |keep: bool| {
            let e: Vec<_> = edges.iter().zip(&split).filter(|(_, k)| **k == keep).map(|(e, _)| *e).collect();
            Graph::from_edges(n, directed, &e).unwrap()
        };
        let (g1, g2) = (part(true), part(false));
        if cut_eval::value(&g1, &s) + cut_eval::value(&g2, &s) != f(&s) {
            failures.push(format!("pair {i}: additivity over disjoint edge sets"));
        }
        let complement: Vec<bool> = s.iter().map(|b| !b).collect();
        let mirrored = if directed {
            let reversed: Vec<_> = edges.iter().map(|&(u, v)| (v, u)).collect();
            cut_eval::value(&Graph::from_edges(n, true, &reversed).unwrap(), &complement)
        } else {
            f(&complement)
        };
        if mirrored != f(&s) {
            failures.push(format!("pair {i}: symmetry"));
        }
    }
    for i in 0..200 {
        let n = 2 + rng.below(9) as usize;
        let directed = i % 2 == 1;
        let g = graph::gen_gnp(n, rng.unit(), rng.next(), directed).unwrap();
        let v = rng.below(n as u64) as usize;
        let mut x = rng.mask(n);
        x[v] = false;
        let local: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| x[u]).collect();
        let mut with = x.clone();
        with[v] = true;
        let edges = edge_list(&g);
        let global = count(&edges, directed, &with) as i64 - count(&edges, directed, &x) as i64;
        if cut_eval::local_marginal_add(&g, &local, v).unwrap() != global {
            failures.push(format!("triple {i}: local marginal differs"));
        }
    }
    verdict(failures, "1000 set pairs and 200 marginal triples".into())
}

fn random_cut_baseline() -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (directed, share) in [(false, 0.5), (true, 0.25)] {
        let g = graph::gen_gnp(30, 0.3, 9_000, directed).unwrap();
        let edges = edge_list(&g);
        let values: Vec<f64> = (0..2000)
            .map(|seed| count(&edges, directed, oracle::random_cut(&g, seed).unwrap().0.sides()) as f64)
            .collect();
        let (mu, se) = (mean(&values), std_error(&values));
        let target = share * g.m() as f64;
        if (mu - target).abs() > 3.0 * se {
            failures.push(format!("directed={directed}: mean {mu:.3}, target {target}, SE {se:.3}"));
        }
        summary.push(format!("mean {mu:.2} vs {target:.2}"));
    }
    verdict(failures, format!("2000 seeds, {}", summary.join(", ")))
}

fn reproducible_csv() -> Outcome {
    let configs = [
        ("greedy_maxcut", "kind = \"gnp\"\nn = 12\np = 0.5"),
        ("randomized_maxdicut", "kind = \"gnp\"\nn = 10\np = 0.3\ndirected = true"),
        ("bipartite_maxcut", "kind = \"bipartite\"\nn1 = 8\nn2 = 8\np = 0.4"),
        ("decomposition_maxdicut", "kind = \"gnp\"\nn = 10\np = 0.3\ndirected = true"),
        ("fast_greedy_maxcut", "kind = \"star\"\nleaves = 12"),
    ];
    let mut failures = Vec::new();
    for (alg, graph) in configs {
        let text = format!("version = 1\nname = \"{alg}\"\nalgorithm = \"{alg}\"\n[graph]\n{graph}\n[seeds]\ncount = 5\n");
        let cfg = ExperimentConfig::from_toml(&text).unwrap();
        let first = csv_string(&run_experiment(&cfg).unwrap());
        let second = csv_string(&run_experiment(&cfg).unwrap());
        if first != second {
            failures.push(format!("{alg}: CSV differs between runs"));
        }
    }
    verdict(failures, format!("{} configs, identical CSV bytes on repeat", configs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("greedy max-cut half guarantee", greedy_maxcut_guarantee),
        ("greedy max-dicut third guarantee", greedy_maxdicut_guarantee),
        ("randomized max-dicut half in expectation", randomized_maxdicut_expectation),
        ("decomposition quality", decomposition_quality),
        ("bipartite one minus epsilon", bipartite_one_minus_epsilon),
        ("decomposition-based one minus epsilon", decomposition_one_minus_epsilon),
        ("fast hybrid guarantees", fast_hybrid),
        ("objective identities", kernel_identities),
        ("random cut baseline", random_cut_baseline),
        ("reproducible csv", reproducible_csv),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
