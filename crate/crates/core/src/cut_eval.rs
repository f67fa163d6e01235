//! The cut and dicut objectives and their marginal gains.
//!
//! Whole-set evaluation ([`cut_value`], [`dicut_value`], [`marginal_add`],
//! [`marginal_remove`]) recomputes from scratch and serves as the reference.
//! [`local_marginal_add`] and [`add_gain`] look only at one vertex's incident
//! edges; they are what the distributed algorithms run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Final per-vertex outputs: `true` means the vertex is in `S` (outputs 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutAssignment(pub Vec<bool>);

impl CutAssignment {
    pub fn sides(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertices in `S`, ascending.
    pub fn members(&self) -> Vec<VertexId> {
        self.0.iter().enumerate().filter(|(_, &s)| s).map(|(v, _)| v).collect()
    }

    /// `vertex,side` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex,side\n");
        for (v, &side) in self.0.iter().enumerate() {
            s.push_str(&format!("{v},{}\n", u8::from(side)));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Edges with exactly one endpoint in `S`.
    Cut,
    /// Arcs leaving `S`.
    Dicut,
}

impl Objective {
    pub fn for_graph(g: &Graph) -> Objective {
        if g.is_directed() {
            Objective::Dicut
        } else {
            Objective::Cut
        }
    }

    /// Counts the edges this objective scores, treating `in_s` as `S`.
    pub fn count(self, edges: impl IntoIterator<Item = (VertexId, VertexId)>, in_s: impl Fn(VertexId) -> bool) -> u64 {
        edges
            .into_iter()
            .filter(|&(u, v)| match self {
                Objective::Cut => in_s(u) != in_s(v),
                Objective::Dicut => in_s(u) && !in_s(v),
            })
            .count() as u64
    }
}

/// `f(S)` for the objective matching the graph's orientation.
pub fn value(g: &Graph, s: &[bool]) -> u64 {
    Objective::for_graph(g).count(g.edges(), |v| s[v])
}

/// Number of undirected edges with exactly one endpoint in `S`.
pub fn cut_value(g: &Graph, s: &[bool]) -> Result<u64> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    Ok(value(g, s))
}

/// Number of arcs `(u, v)` with `u ∈ S` and `v ∉ S`.
pub fn dicut_value(g: &Graph, s: &[bool]) -> Result<u64> {
    if !g.is_directed() {
        return Err(Error::ExpectedDirected);
    }
    Ok(value(g, s))
}

/// `f(X + v) − f(X)`, by recomputation.
pub fn marginal_add(g: &Graph, x: &[bool], v: VertexId) -> Result<i64> {
    if x[v] {
        return Err(Error::AlreadyInSet(v));
    }
    let mut with = x.to_vec();
    with[v] = true;
    Ok(value(g, &with) as i64 - value(g, x) as i64)
}

/// `f(Y − v) − f(Y)`, by recomputation.
pub fn marginal_remove(g: &Graph, y: &[bool], v: VertexId) -> Result<i64> {
    if !y[v] {
        return Err(Error::NotInSet(v));
    }
    let mut without = y.to_vec();
    without[v] = false;
    Ok(value(g, &without) as i64 - value(g, y) as i64)
}

/// Gain of adding `v` to a set, from `v`'s incident edges only.
///
/// Undirected: neighbours outside the set become cut, those inside stop being
/// cut. Directed: out-arcs to vertices outside the set start counting, in-arcs
/// from the set stop counting.
///
/// For undirected graphs pass the neighbour list as both `out` and `inc`.
pub fn add_gain(out: &[VertexId], inc: &[VertexId], in_set: impl Fn(VertexId) -> bool) -> i64 {
    let outside = out.iter().filter(|&&w| !in_set(w)).count() as i64;
    let inside = inc.iter().filter(|&&w| in_set(w)).count() as i64;
    outside - inside
}

/// `f(X_local + v) − f(X_local)` where `X_local ⊆ N(v)`, using only the edges
/// incident to `v`. Equals [`marginal_add`] for any `X` with
/// `X ∩ N(v) = X_local`.
pub fn local_marginal_add(g: &Graph, x_local: &[VertexId], v: VertexId) -> Result<i64> {
    let nbrs = g.neighbors(v);
    for &u in x_local {
        if u == v {
            return Err(Error::AlreadyInSet(v));
        }
        if nbrs.binary_search(&u).is_err() {
            return Err(Error::NotANeighbor { vertex: u, of: v });
        }
    }
    let in_set = |w: VertexId| x_local.contains(&w);
    Ok(add_gain(g.out_neighbors(v), g.in_neighbors(v), in_set))
}
