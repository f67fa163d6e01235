//! Exact solvers and baselines used to score the distributed algorithms.

use rand::Rng;

use crate::cut_eval::{self, CutAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::sim::{self, Envelope, ExecutionMetrics, ModelMode, Outbox, RunConfig, VertexContext, VertexProgram};

/// Largest graph the exhaustive oracle accepts.
pub const ORACLE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub opt_value: u64,
    /// Lexicographically smallest optimal assignment (`false < true`, vertex 0 first).
    pub witness: CutAssignment,
    /// Number of subsets examined.
    pub enumerated: u64,
}

impl OracleResult {
    /// `OPT ≥ m/2` for cuts and `OPT ≥ m/4` for dicuts.
    pub fn meets_folklore_floor(&self, g: &Graph) -> bool {
        let m = g.m() as u64;
        if g.is_directed() {
            4 * self.opt_value >= m
        } else {
            2 * self.opt_value >= m
        }
    }
}

/// Exact maximum cut. Vertex 0 stays outside `S`, which halves the search.
pub fn brute_force_maxcut(g: &Graph) -> Result<OracleResult> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    gray_search(g, 1)
}

/// Exact maximum dicut over all `2^n` subsets.
pub fn brute_force_maxdicut(g: &Graph) -> Result<OracleResult> {
    if !g.is_directed() {
        return Err(Error::ExpectedDirected);
    }
    gray_search(g, 0)
}

/// Exact optimum for the objective matching the graph's orientation.
pub fn brute_force(g: &Graph) -> Result<OracleResult> {
    if g.is_directed() {
        brute_force_maxdicut(g)
    } else {
        brute_force_maxcut(g)
    }
}

/// Gray-code walk over the subsets of vertices `first..n`, updating the value
/// incrementally on each single flip.
fn gray_search(g: &Graph, first: usize) -> Result<OracleResult> {
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::OverCap { n, cap: ORACLE_CAP });
    }
    let free = n.saturating_sub(first);
    let mut side = vec![false; n];
    let mut value: i64 = 0;
    // lexicographic key: vertex v sits at bit n - 1 - v
    let mut key: u64 = 0;
    let mut best = (0i64, 0u64);
    let total: u64 = 1 << free;
    for step in 1..total {
        let v: VertexId = first + step.trailing_zeros() as usize;
        value += flip_gain(g, &side, v);
        side[v] = !side[v];
        key ^= 1 << (n - 1 - v);
        if value > best.0 || (value == best.0 && key < best.1) {
            best = (value, key);
        }
    }
    let witness = (0..n).map(|v| best.1 >> (n - 1 - v) & 1 == 1).collect();
    Ok(OracleResult { opt_value: best.0 as u64, witness: CutAssignment(witness), enumerated: total })
}

/// Change of the objective when `v` switches side.
fn flip_gain(g: &Graph, side: &[bool], v: VertexId) -> i64 {
    if g.is_directed() {
        let into_s = cut_eval::add_gain(g.out_neighbors(v), g.in_neighbors(v), |w| side[w]);
        if side[v] {
            -into_s
        } else {
            into_s
        }
    } else {
        g.neighbors(v).iter().map(|&w| if side[w] == side[v] { 1 } else { -1 }).sum()
    }
}

struct CoinFlip;

impl VertexProgram for CoinFlip {
    type Message = ();
    type Output = bool;

    fn init(&mut self, ctx: &mut VertexContext<'_>) -> Option<bool> {
        Some(ctx.rng().gen_bool(0.5))
    }

    fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}

    fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<bool> {
        None
    }
}

/// Every vertex joins `S` with probability 1/2, without communicating.
pub fn random_cut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    let cfg = RunConfig::new(ModelMode::congest(), seed, g.n());
    let (sides, metrics) = sim::run(g, &cfg, |_| CoinFlip)?.complete(cfg.max_rounds)?;
    Ok((CutAssignment(sides), metrics.named("random")))
}

pub(crate) fn check_permutation(n: usize, order: &[VertexId]) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::InvalidParameter("order must be a permutation of the vertices".into()));
    }
    Ok(())
}

/// Greedy max-cut in the given order: each vertex joins `S` iff at most half
/// of its already placed neighbours are in `S`.
pub fn sequential_greedy_maxcut(g: &Graph, order: &[VertexId]) -> Result<CutAssignment> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    check_permutation(g.n(), order)?;
    let mut placed: Vec<Option<bool>> = vec![None; g.n()];
    for &v in order {
        let (in_s, out_s) = g.neighbors(v).iter().fold((0, 0), |(a, b), &w| match placed[w] {
            Some(true) => (a + 1, b),
            Some(false) => (a, b + 1),
            None => (a, b),
        });
        placed[v] = Some(in_s <= out_s);
    }
    Ok(CutAssignment(placed.into_iter().map(Option::unwrap).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut_eval::value;
    use crate::graph::{complete, cycle, gen_gnp, gen_random_bipartite, path};

    /// Plain enumeration with full recomputation.
    fn naive(g: &Graph) -> u64 {
        (0u32..1 << g.n())
            .map(|mask| {
                let s: Vec<bool> = (0..g.n()).map(|v| mask >> v & 1 == 1).collect();
                value(g, &s)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn maxcut_examples() {
        assert_eq!(brute_force_maxcut(&complete(3)).unwrap().opt_value, 2);
        assert_eq!(brute_force_maxcut(&cycle(5, false).unwrap()).unwrap().opt_value, 4);
        let k33 = gen_random_bipartite(3, 3, 1.0, 0).unwrap().graph;
        let r = brute_force_maxcut(&k33).unwrap();
        assert_eq!(r.opt_value, 9);
        assert_eq!(r.witness.0, vec![false, false, false, true, true, true]);
        assert_eq!(r.enumerated, 32);
    }

    #[test]
    fn maxdicut_examples() {
        assert_eq!(brute_force_maxdicut(&path(2, true)).unwrap().opt_value, 1);
        assert_eq!(brute_force_maxdicut(&cycle(3, true).unwrap()).unwrap().opt_value, 1);
        let anti = Graph::from_edges(2, true, &[(0, 1), (1, 0)]).unwrap();
        let r = brute_force_maxdicut(&anti).unwrap();
        assert_eq!(r.opt_value, 1);
        assert_eq!(r.witness.0, vec![false, true]);
        assert_eq!(r.enumerated, 4);
    }

    #[test]
    fn trivial_sizes_and_errors() {
        assert_eq!(brute_force_maxcut(&Graph::empty(0, false)).unwrap().opt_value, 0);
        assert_eq!(brute_force_maxcut(&Graph::empty(1, false)).unwrap().witness.0, vec![false]);
        assert_eq!(brute_force_maxcut(&path(2, true)), Err(Error::ExpectedUndirected));
        assert_eq!(brute_force_maxdicut(&path(2, false)), Err(Error::ExpectedDirected));
        assert_eq!(brute_force(&Graph::empty(25, false)), Err(Error::OverCap { n: 25, cap: 24 }));
    }

    #[test]
    fn gray_walk_matches_naive_enumeration() {
        for seed in 0..60u64 {
            let n = 1 + (seed as usize % 12);
            let g = gen_gnp(n, 0.2 + (seed % 5) as f64 * 0.15, seed, seed % 2 == 0).unwrap();
            let r = brute_force(&g).unwrap();
            assert_eq!(r.opt_value, naive(&g), "seed {seed}");
            assert_eq!(value(&g, r.witness.sides()), r.opt_value);
            assert!(r.meets_folklore_floor(&g));
            // no lexicographically smaller optimum exists
            for mask in 0u32..1 << n {
                let s: Vec<bool> = (0..n).map(|v| mask >> (n - 1 - v) & 1 == 1).collect();
                if s < r.witness.0 {
                    assert!(value(&g, &s) < r.opt_value);
                }
            }
        }
    }

    #[test]
    fn random_cut_uses_no_rounds() {
        let g = complete(6);
        let (c, m) = random_cut(&g, 4).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(m.rounds_used, 0);
        assert_eq!(m.total_messages, 0);
        let (e, _) = random_cut(&Graph::empty(5, false), 1).unwrap();
        assert_eq!(value(&Graph::empty(5, false), e.sides()), 0);
    }

    #[test]
    fn greedy_cut_is_at_least_half() {
        let g = path(2, false);
        assert_eq!(value(&g, sequential_greedy_maxcut(&g, &[0, 1]).unwrap().sides()), 1);
        // every order of small graphs
        for seed in 0..15u64 {
            let g = gen_gnp(6, 0.5, seed, false).unwrap();
            let mut order: Vec<usize> = (0..6).collect();
            permutohedron_walk(&mut order, &mut |o| {
                let c = sequential_greedy_maxcut(&g, o).unwrap();
                assert!(2 * value(&g, c.sides()) >= g.m() as u64);
            });
        }
        assert!(sequential_greedy_maxcut(&g, &[0, 0]).is_err());
    }

    /// Heap's algorithm.
    fn permutohedron_walk(a: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        fn go(k: usize, a: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
            if k == 1 {
                f(a);
                return;
            }
            for i in 0..k {
                go(k - 1, a, f);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                a.swap(j, k - 1);
            }
        }
        let k = a.len();
        go(k, a, f);
    }
}
