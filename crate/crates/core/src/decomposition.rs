//! Low-diameter decomposition by exponentially shifted distances.
//!
//! Every vertex draws a shift `δ_v ~ Exp(β)` and then, for exactly
//! `⌈k · log2 n / β⌉` rounds, relaxes the pair (shifted distance, centre) it
//! has heard of: a neighbour's pair `(d, c)` is adopted as `(d + 1, c)` when
//! that is lexicographically smaller than the current one. Shifted distances
//! are carried as 32.32 fixed point.
//!
//! The measurement helpers below (exterior edges, diameters, ideal centres)
//! are centralized and only used for analysis.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, bfs_within, Graph, VertexId};
use crate::sim::{self, Envelope, ExecutionMetrics, Field, ModelMode, Outbox, Payload, RunConfig, VertexContext, VertexProgram};

const FRAC_BITS: u32 = 32;
/// One hop in fixed point.
pub const HOP: i64 = 1 << FRAC_BITS;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DecompositionParams {
    pub beta: f64,
    pub k: f64,
}

impl DecompositionParams {
    pub fn new(beta: f64, k: f64) -> Result<Self> {
        let p = DecompositionParams { beta, k };
        p.validate()?;
        Ok(p)
    }

    /// `k = 3`.
    pub fn with_beta(beta: f64) -> Result<Self> {
        Self::new(beta, 3.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidParameter(format!("beta must lie in (0, 1), got {}", self.beta)));
        }
        if self.k <= 2.0 || !self.k.is_finite() {
            return Err(Error::InvalidParameter(format!("k must exceed 2, got {}", self.k)));
        }
        Ok(())
    }

    /// `⌈k · log2 n / β⌉`; zero for `n <= 1`.
    pub fn rounds(&self, n: usize) -> usize {
        if n <= 1 {
            return 0;
        }
        (self.k * (n as f64).log2() / self.beta).ceil() as usize
    }
}

/// Inverse-CDF sample of `Exp(beta)` for `u ∈ (0, 1]`.
pub fn sample_exponential(beta: f64, u: f64) -> f64 {
    -u.ln() / beta
}

/// Draws `Exp(beta)` from `rng`.
pub fn sample_exponential_rng<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    let u = 1.0 - rng.gen::<f64>();
    sample_exponential(beta, u)
}

pub fn to_fixed(x: f64) -> i64 {
    (x * HOP as f64).round().clamp(0.0, (i64::MAX / 4) as f64) as i64
}

pub fn from_fixed(x: i64) -> f64 {
    x as f64 / HOP as f64
}

/// `(hops − δ_center, center)` in fixed point. Ordered lexicographically, so a
/// smaller shifted distance wins and ties go to the smaller centre id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShiftedDistance {
    pub value: i64,
    pub center: VertexId,
}

impl ShiftedDistance {
    fn one_hop_further(self) -> Self {
        ShiftedDistance { value: self.value + HOP, center: self.center }
    }
}

impl Payload for ShiftedDistance {
    fn fields(&self) -> Vec<Field> {
        vec![Field::Fixed, Field::Id]
    }
}

/// Where the shifts come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Shifts {
    /// Each vertex samples `Exp(β)` from its private stream.
    Sampled,
    /// Fixed per-vertex shifts (test hook).
    Given(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompOutput {
    pub center: VertexId,
    pub delta: i64,
    pub distance: ShiftedDistance,
}

/// Vertex program of the decomposition.
pub struct Decompose {
    rounds: usize,
    beta: f64,
    given: Option<f64>,
    delta: i64,
    best: ShiftedDistance,
}

impl Decompose {
    pub fn new(params: &DecompositionParams, n: usize, given: Option<f64>) -> Self {
        Decompose {
            rounds: params.rounds(n),
            beta: params.beta,
            given,
            delta: 0,
            best: ShiftedDistance { value: 0, center: 0 },
        }
    }

    fn output(&self) -> DecompOutput {
        DecompOutput { center: self.best.center, delta: self.delta, distance: self.best }
    }
}

impl VertexProgram for Decompose {
    type Message = ShiftedDistance;
    type Output = DecompOutput;

    fn init(&mut self, ctx: &mut VertexContext<'_>) -> Option<DecompOutput> {
        let delta = match self.given {
            Some(d) => d,
            None => sample_exponential_rng(self.beta, ctx.rng()),
        };
        self.delta = to_fixed(delta);
        self.best = ShiftedDistance { value: -self.delta, center: ctx.id() };
        (self.rounds == 0).then(|| self.output())
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, ShiftedDistance>) {
        if ctx.round() <= self.rounds {
            out.broadcast(self.best);
        }
    }

    fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<ShiftedDistance>]) -> Option<DecompOutput> {
        for e in inbox {
            let candidate = e.msg.one_hop_further();
            if candidate < self.best {
                self.best = candidate;
            }
        }
        (ctx.round() == self.rounds).then(|| self.output())
    }
}

/// Vertex → centre map plus the shifts that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterAssignment {
    pub center: Vec<VertexId>,
    /// Shifts in 32.32 fixed point.
    pub delta: Vec<i64>,
}

impl CenterAssignment {
    pub fn delta(&self, v: VertexId) -> f64 {
        from_fixed(self.delta[v])
    }

    /// Members of each cluster, keyed by centre.
    pub fn clusters(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut map: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (v, &c) in self.center.iter().enumerate() {
            map.entry(c).or_default().push(v);
        }
        map
    }

    /// `vertex,center,delta` CSV.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex,center,delta\n");
        for (v, &c) in self.center.iter().enumerate() {
            let _ = writeln!(s, "{v},{c},{:.9}", self.delta(v));
        }
        s
    }
}

/// Runs the decomposition under `mode` with the given shift source.
pub fn decompose(
    g: &Graph,
    params: &DecompositionParams,
    mode: ModelMode,
    seed: u64,
    shifts: &Shifts,
) -> Result<(CenterAssignment, ExecutionMetrics)> {
    params.validate()?;
    if let Shifts::Given(d) = shifts {
        if d.len() != g.n() || d.iter().any(|x| x.is_nan() || *x < 0.0) {
            return Err(Error::InvalidParameter("given shifts must be n non-negative values".into()));
        }
    }
    let rounds = params.rounds(g.n());
    let cfg = RunConfig::new(mode, seed, g.n()).with_max_rounds(rounds.max(1));
    let exec = sim::run(g, &cfg, |ctx| {
        let given = match shifts {
            Shifts::Sampled => None,
            Shifts::Given(d) => Some(d[ctx.id()]),
        };
        Decompose::new(params, ctx.n(), given)
    })?;
    let (outs, metrics) = exec.complete(cfg.max_rounds)?;
    let assignment = CenterAssignment {
        center: outs.iter().map(|o| o.center).collect(),
        delta: outs.iter().map(|o| o.delta).collect(),
    };
    Ok((assignment, metrics.named("decomposition")))
}

/// The decomposition with sampled shifts under the default CONGEST budget.
pub fn distributed_decomposition(
    g: &Graph,
    params: &DecompositionParams,
    seed: u64,
) -> Result<(CenterAssignment, ExecutionMetrics)> {
    decompose(g, params, ModelMode::congest(), seed, &Shifts::Sampled)
}

/// Edges whose endpoints have different centres.
pub fn exterior_edges(g: &Graph, a: &CenterAssignment) -> Vec<(VertexId, VertexId)> {
    g.edges().filter(|&(u, v)| a.center[u] != a.center[v]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterDiameter {
    pub center: VertexId,
    pub size: usize,
    /// Largest distance in `G` between two members (`usize::MAX` if some
    /// pair is disconnected in `G`).
    pub weak: usize,
    /// Largest distance inside the induced subgraph; `None` if it is disconnected.
    pub strong: Option<usize>,
}

/// Weak and strong diameter of every cluster, ordered by centre.
pub fn cluster_diameters(g: &Graph, a: &CenterAssignment) -> Vec<ClusterDiameter> {
    a.clusters()
        .into_iter()
        .map(|(center, members)| {
            let mut weak = 0;
            let mut strong = Some(0);
            for &s in &members {
                let all = bfs_distances(g, s);
                let inside = bfs_within(g, s, |w| a.center[w] == center);
                for &t in &members {
                    weak = weak.max(all[t].unwrap_or(usize::MAX));
                    strong = match (strong, inside[t]) {
                        (Some(x), Some(d)) => Some(x.max(d)),
                        _ => None,
                    };
                }
            }
            ClusterDiameter { center, size: members.len(), weak, strong }
        })
        .collect()
}

/// Number of clusters whose induced subgraph is disconnected.
pub fn disconnected_clusters(g: &Graph, a: &CenterAssignment) -> usize {
    a.clusters()
        .into_iter()
        .filter(|(center, members)| {
            let reach = bfs_within(g, members[0], |w| a.center[w] == *center);
            members.iter().any(|&t| reach[t].is_none())
        })
        .count()
}

/// Ideal centre of every vertex: the global minimiser of
/// `(dist(w, v) − δ_w, w)` over all `w` reachable from `v`.
pub fn ideal_centers(g: &Graph, delta: &[i64]) -> Vec<VertexId> {
    let mut best: Vec<ShiftedDistance> =
        g.vertices().map(|v| ShiftedDistance { value: -delta[v], center: v }).collect();
    for w in g.vertices() {
        for (v, d) in bfs_distances(g, w).into_iter().enumerate() {
            if let Some(d) = d {
                let cand = ShiftedDistance { value: d as i64 * HOP - delta[w], center: w };
                if cand < best[v] {
                    best[v] = cand;
                }
            }
        }
    }
    best.into_iter().map(|b| b.center).collect()
}

/// Result of comparing an assignment with the ideal centres.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdealAudit {
    /// Vertices that did not adopt their ideal centre.
    pub non_ideal: Vec<VertexId>,
    /// Vertices with the ideal centre but `dist(center, v) > δ_center`.
    pub shift_bound_violations: Vec<VertexId>,
}

pub fn audit_ideal(g: &Graph, a: &CenterAssignment) -> IdealAudit {
    let ideal = ideal_centers(g, &a.delta);
    let mut audit = IdealAudit::default();
    let mut dist_from: BTreeMap<VertexId, Vec<Option<usize>>> = BTreeMap::new();
    for v in g.vertices() {
        let c = a.center[v];
        if c != ideal[v] {
            audit.non_ideal.push(v);
            continue;
        }
        let d = dist_from.entry(c).or_insert_with(|| bfs_distances(g, c))[v].expect("centre reaches member");
        if d as i64 * HOP > a.delta[c] {
            audit.shift_bound_violations.push(v);
        }
    }
    audit
}
