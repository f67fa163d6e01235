//! Centralised solves performed by a single leader vertex on gathered topology.
//!
//! An instance has `k` free vertices, edges among them, and edges from free
//! vertices to outside vertices whose sides are already fixed.

use serde::{Deserialize, Serialize};

use crate::cut_eval::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    /// Exhaustive enumeration.
    Exact,
    /// Sequential greedy in local index order, used above the size cap.
    Greedy,
    /// Two-colouring by BFS parity from the cluster root.
    Parity,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FixedEdge {
    pub free: usize,
    pub fixed_side: bool,
    /// Directed only: the arc leaves the free vertex.
    pub free_is_tail: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct LocalInstance {
    objective: Objective,
    k: usize,
    /// Undirected edges once each, or arcs `(tail, head)`.
    inner: Vec<(usize, usize)>,
    fixed: Vec<FixedEdge>,
}

impl LocalInstance {
    pub fn new(objective: Objective, k: usize) -> Self {
        LocalInstance { objective, k, inner: Vec::new(), fixed: Vec::new() }
    }

    pub fn add_inner(&mut self, u: usize, v: usize) {
        self.inner.push((u, v));
    }

    pub fn add_fixed(&mut self, e: FixedEdge) {
        self.fixed.push(e);
    }

    pub fn value(&self, sides: &[bool]) -> u64 {
        let inner = self.objective.count(self.inner.iter().copied(), |v| sides[v]);
        let fixed = self.fixed.iter().filter(|e| self.fixed_counts(e, sides[e.free])).count() as u64;
        inner + fixed
    }

    fn fixed_counts(&self, e: &FixedEdge, free_side: bool) -> bool {
        match self.objective {
            Objective::Cut => free_side != e.fixed_side,
            Objective::Dicut if e.free_is_tail => free_side && !e.fixed_side,
            Objective::Dicut => e.fixed_side && !free_side,
        }
    }

    /// Exact optimum when `k ≤ cap`, greedy otherwise.
    pub fn solve(&self, cap: usize) -> (Vec<bool>, SolveMethod) {
        if self.k <= cap && self.k < 32 {
            (self.exhaustive(), SolveMethod::Exact)
        } else {
            (self.greedy(), SolveMethod::Greedy)
        }
    }

    /// First maximiser in ascending mask order, vertex `i` at bit `i`.
    fn exhaustive(&self) -> Vec<bool> {
        let k = self.k;
        let mut succ = vec![0u32; k];
        for &(u, v) in &self.inner {
            succ[u] |= 1 << v;
            if self.objective == Objective::Cut {
                succ[v] |= 1 << u;
            }
        }
        // value contributed by the fixed edges of v when v is in / out of S
        let mut gain_in = vec![0u32; k];
        let mut gain_out = vec![0u32; k];
        for e in &self.fixed {
            gain_in[e.free] += u32::from(self.fixed_counts(e, true));
            gain_out[e.free] += u32::from(self.fixed_counts(e, false));
        }
        let mut best = (0u32, 0u32);
        for mask in 0u32..(1u32 << k) {
            let mut val = 0;
            for v in 0..k {
                if mask >> v & 1 == 1 {
                    val += (succ[v] & !mask).count_ones() + gain_in[v];
                } else {
                    val += gain_out[v];
                }
            }
            if val > best.0 || mask == 0 {
                best = (val, mask);
            }
        }
        (0..k).map(|v| best.1 >> v & 1 == 1).collect()
    }

    /// Vertex `i` is placed at step `i`. For cuts it takes the side opposite
    /// the majority of placed neighbours; for dicuts it runs the double greedy
    /// with unplaced vertices counted as undecided.
    fn greedy(&self) -> Vec<bool> {
        // (other endpoint, other is free, this vertex is the tail)
        let mut arcs: Vec<Vec<(usize, bool, bool)>> = vec![Vec::new(); self.k];
        for &(u, v) in &self.inner {
            arcs[u].push((v, true, true));
            arcs[v].push((u, true, false));
        }
        let mut fixed_sides = Vec::new();
        for e in &self.fixed {
            arcs[e.free].push((fixed_sides.len(), false, e.free_is_tail));
            fixed_sides.push(e.fixed_side);
        }
        let mut placed: Vec<Option<bool>> = vec![None; self.k];
        for v in 0..self.k {
            let status = |&(w, free, _): &(usize, bool, bool)| if free { placed[w] } else { Some(fixed_sides[w]) };
            let side = match self.objective {
                Objective::Cut => {
                    let in_s = arcs[v].iter().filter(|a| status(a) == Some(true)).count();
                    let out_s = arcs[v].iter().filter(|a| status(a) == Some(false)).count();
                    in_s <= out_s
                }
                Objective::Dicut => {
                    let (mut a, mut b) = (0i64, 0i64);
                    for arc in &arcs[v] {
                        let st = status(arc);
                        let (in_x, in_y) = (st == Some(true), st != Some(false));
                        if arc.2 {
                            a += i64::from(!in_x);
                            b -= i64::from(!in_y);
                        } else {
                            a -= i64::from(in_x);
                            b += i64::from(in_y);
                        }
                    }
                    a >= b
                }
            };
            placed[v] = Some(side);
        }
        placed.into_iter().map(Option::unwrap).collect()
    }
}
