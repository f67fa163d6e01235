//! Static simple graphs with dense vertex ids, generators and the edge-list
//! text format.
//!
//! Vertex ids are `0..n`, so "lowest id" is plain integer comparison. Directed
//! graphs keep out- and in-adjacency plus the undirected neighbour union, which
//! is the communication topology seen by vertex programs.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    m: usize,
    /// Undirected: the adjacency. Directed: out-arcs.
    out: Vec<Vec<VertexId>>,
    /// Directed only: in-arcs.
    inc: Vec<Vec<VertexId>>,
    /// Directed only: sorted union of out- and in-neighbours.
    nbrs: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge (or arc) list. Errors report the 1-based
    /// position of the offending pair.
    pub fn from_edges(n: usize, directed: bool, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        let mut out = vec![Vec::new(); n];
        let mut inc = if directed { vec![Vec::new(); n] } else { Vec::new() };
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 1;
            check_pair(n, u, v, line)?;
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line, u: key.0, v: key.1 });
            }
            out[u].push(v);
            if directed {
                inc[v].push(u);
            } else {
                out[v].push(u);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        let nbrs = if directed {
            out.iter()
                .zip(&inc)
                .map(|(o, i)| {
                    let mut all: Vec<VertexId> = o.iter().chain(i).copied().collect();
                    all.sort_unstable();
                    all.dedup();
                    all
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Graph { directed, m: edges.len(), out, inc, nbrs })
    }

    pub fn empty(n: usize, directed: bool) -> Graph {
        Graph::from_edges(n, directed, &[]).expect("empty graph is valid")
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    /// Sorted communication neighbours (in- and out- for digraphs).
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        if self.directed {
            &self.nbrs[v]
        } else {
            &self.out[v]
        }
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        if self.directed {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    /// Number of incident edges; in-degree plus out-degree for digraphs.
    pub fn degree(&self, v: VertexId) -> usize {
        if self.directed {
            self.out[v].len() + self.inc[v].len()
        } else {
            self.out[v].len()
        }
    }

    /// Maximum degree Δ (total degree for digraphs).
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Every edge once: `u < v` pairs when undirected, arcs `u -> v` when
    /// directed. Ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let directed = self.directed;
        self.out.iter().enumerate().flat_map(move |(u, list)| {
            list.iter().filter(move |&&v| directed || u < v).map(move |&v| (u, v))
        })
    }

    /// Subgraph induced by the vertices with `keep[v]`, relabelled densely in
    /// id order. Returns the graph and the new-to-old id map.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<VertexId>) {
        let old_of: Vec<VertexId> = self.vertices().filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (new_of[u], new_of[v]))
            .collect();
        let g = Graph::from_edges(old_of.len(), self.directed, &edges)
            .expect("induced subgraph of a simple graph is simple");
        (g, old_of)
    }

    /// Serializes to the edge-list format accepted by [`Graph::from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# n={} directed={}\n", self.n(), u8::from(self.directed));
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Parses the line-oriented edge-list format: a header `# n=<int>
    /// directed=<0|1>`, then one `u v` pair per line. Other `#` lines and
    /// blank lines are ignored.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, bool)> = None;
        let mut edges = Vec::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                if header.is_none() {
                    if let Some(h) = parse_header(rest, line)? {
                        header = Some(h);
                    }
                }
                continue;
            }
            let (n, _) = header.ok_or_else(|| Error::Parse {
                line,
                message: "edge before `# n=<int> directed=<0|1>` header".into(),
            })?;
            let mut parts = t.split_whitespace();
            let mut field = |name: &str| -> Result<VertexId> {
                parts
                    .next()
                    .ok_or_else(|| Error::Parse { line, message: format!("missing {name}") })?
                    .parse()
                    .map_err(|e| Error::Parse { line, message: format!("bad {name}: {e}") })
            };
            let u = field("source")?;
            let v = field("target")?;
            if parts.next().is_some() {
                return Err(Error::Parse { line, message: "expected exactly two ids".into() });
            }
            check_pair(n, u, v, line)?;
            edges.push((u, v));
            lines.push(line);
        }
        let (n, directed) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing `# n=<int> directed=<0|1>` header".into(),
        })?;
        Graph::from_edges(n, directed, &edges).map_err(|e| match e {
            Error::DuplicateEdge { line, u, v } => Error::DuplicateEdge { line: lines[line - 1], u, v },
            other => other,
        })
    }
}

fn check_pair(n: usize, u: VertexId, v: VertexId, line: usize) -> Result<()> {
    if u == v {
        return Err(Error::SelfLoop { line, vertex: u });
    }
    if u >= n || v >= n {
        return Err(Error::Parse { line, message: format!("vertex id out of range for n={n}") });
    }
    Ok(())
}

fn parse_header(rest: &str, line: usize) -> Result<Option<(usize, bool)>> {
    let mut n = None;
    let mut directed = None;
    for tok in rest.split_whitespace() {
        let Some((key, value)) = tok.split_once('=') else { continue };
        let bad = |what: &str| Error::Parse { line, message: format!("bad header {what}: {value}") };
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad("n"))?),
            "directed" => {
                directed = Some(match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad("directed")),
                })
            }
            _ => {}
        }
    }
    match (n, directed) {
        (Some(n), Some(d)) => Ok(Some((n, d))),
        (None, None) => Ok(None),
        _ => Err(Error::Parse { line, message: "header needs both n= and directed=".into() }),
    }
}

/// Erdős–Rényi graph: each unordered (or ordered, when `directed`) pair is an
/// edge independently with probability `p`.
pub fn gen_gnp(n: usize, p: f64, seed: u64, directed: bool) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let candidate = if directed { u != v } else { u < v };
            if candidate && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, directed, &edges)
}

/// The cycle 0-1-…-(n-1)-0 on an even number of vertices.
pub fn gen_even_cycle(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("even cycle needs even n >= 4, got {n}")));
    }
    cycle(n, false)
}

/// A random bipartite graph together with its hidden bipartition (`true` for
/// the first side). The sides are for assertions only.
#[derive(Debug, Clone)]
pub struct BipartiteInstance {
    pub graph: Graph,
    pub left: Vec<bool>,
}

/// Vertices `0..n1` form one side and `n1..n1+n2` the other; each cross pair is
/// an edge with probability `p`.
pub fn gen_random_bipartite(n1: usize, n2: usize, p: f64, seed: u64) -> Result<BipartiteInstance> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParameter("both sides need at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in n1..n1 + n2 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n1 + n2, false, &edges)?;
    let left = (0..n1 + n2).map(|v| v < n1).collect();
    Ok(BipartiteInstance { graph, left })
}

/// Cycle on `n >= 3` vertices; oriented `i -> i+1` when directed.
pub fn cycle(n: usize, directed: bool) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, directed, &edges)
}

pub fn path(n: usize, directed: bool) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, directed, &edges).expect("path is simple")
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, false, &edges).expect("clique is simple")
}

/// Star K(1, leaves) with centre 0; arcs point away from the centre when
/// directed.
pub fn star(leaves: usize, directed: bool) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, directed, &edges).expect("star is simple")
}

/// Hop distances from `src` over communication edges; `None` if unreachable.
pub fn bfs_distances(g: &Graph, src: VertexId) -> Vec<Option<usize>> {
    bfs_within(g, src, |_| true)
}

/// BFS restricted to vertices accepted by `allowed` (the source always is).
pub fn bfs_within(g: &Graph, src: VertexId, allowed: impl Fn(VertexId) -> bool) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have a distance");
        for &w in g.neighbors(u) {
            if dist[w].is_none() && allowed(w) {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Maximal connected vertex sets of the underlying undirected graph, each
/// sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    let mut parts = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        let mut part = Vec::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            part.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// A proper 2-colouring of the underlying undirected graph, or an edge that
/// closes an odd cycle.
pub fn two_coloring(g: &Graph) -> std::result::Result<Vec<bool>, (VertexId, VertexId)> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return Err((u.min(w), u.max(w))),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap()).collect())
}
