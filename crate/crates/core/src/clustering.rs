//! Decomposition-based approximation: cut each cluster well and accept
//! whatever happens on the few edges between clusters.
//!
//! [`bipartite_maxcut`] two-colours every cluster by BFS parity from its
//! lowest id (CONGEST). [`decomposition_maxcut`] and [`decomposition_maxdicut`]
//! gather each cluster at its lowest id, which solves it exactly and floods
//! the result back (LOCAL).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;

use crate::cut_eval::{value, CutAssignment, Objective};
use crate::decomposition::{self, cluster_diameters, CenterAssignment, DecompositionParams, Shifts};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::local_solve::{LocalInstance, SolveMethod};
use crate::sim::{self, derive_seed, Envelope, ExecutionMetrics, Field, ModelMode, Outbox, Payload, RunConfig, VertexContext, VertexProgram};

/// One connected group of vertices that shared a leader.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterRecord {
    pub center: VertexId,
    pub leader: VertexId,
    pub size: usize,
    /// Of the whole cluster in `G`; `None` if its members are disconnected in `G`.
    pub weak_diameter: Option<usize>,
    /// Of the cluster's induced subgraph; `None` if that is disconnected.
    pub strong_diameter: Option<usize>,
    pub method: SolveMethod,
    pub internal_edges: u64,
    /// Objective restricted to edges inside the group.
    pub internal_value: u64,
    /// Round of the solve phase in which the leader fixed the assignment.
    pub solved_round: usize,
    /// Round of the solve phase in which the last member output.
    pub finished_round: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSolveReport {
    pub objective: Objective,
    pub epsilon: f64,
    pub beta: f64,
    pub decomposition_rounds: usize,
    pub clusters: Vec<ClusterRecord>,
    /// Clusters whose induced subgraph is disconnected.
    pub disconnected_clusters: usize,
    pub m: u64,
    pub exterior_edges: u64,
    /// Objective restricted to exterior edges.
    pub exterior_value: u64,
    pub achieved: u64,
    pub opt: Option<u64>,
    pub ratio: Option<f64>,
}

impl ClusterSolveReport {
    /// Records the optimum and the achieved ratio.
    pub fn with_opt(mut self, opt: u64) -> Self {
        self.opt = Some(opt);
        self.ratio = Some(if opt == 0 { 1.0 } else { self.achieved as f64 / opt as f64 });
        self
    }

    pub fn internal_total(&self) -> u64 {
        self.clusters.iter().map(|c| c.internal_value).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ClusterOptions {
    /// Decomposition exponent, `k > 2`.
    pub k: f64,
    /// Largest group a leader solves exhaustively.
    pub exact_cap: usize,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions { k: 3.0, exact_cap: crate::DEFAULT_EXACT_CAP }
    }
}

#[derive(Debug, Clone)]
pub struct ClusterRun {
    pub assignment: CutAssignment,
    pub centers: CenterAssignment,
    pub report: ClusterSolveReport,
    pub metrics: ExecutionMetrics,
}

/// A finished group as seen after the solve phase.
struct Group {
    leader: VertexId,
    members: Vec<VertexId>,
    method: SolveMethod,
    solved_round: usize,
    finished_round: usize,
}

fn build_report(
    g: &Graph,
    epsilon: f64,
    params: &DecompositionParams,
    centers: &CenterAssignment,
    sides: &[bool],
    groups: Vec<Group>,
) -> ClusterSolveReport {
    let objective = Objective::for_graph(g);
    let diameters: BTreeMap<VertexId, _> = cluster_diameters(g, centers).into_iter().map(|d| (d.center, d)).collect();
    let mut group_of = vec![usize::MAX; g.n()];
    for (i, grp) in groups.iter().enumerate() {
        for &v in &grp.members {
            group_of[v] = i;
        }
    }
    let mut internal = vec![(0u64, 0u64); groups.len()];
    let mut exterior = (0u64, 0u64);
    for (u, v) in g.edges() {
        let scored = objective.count([(u, v)], |w| sides[w]);
        if centers.center[u] != centers.center[v] {
            exterior.0 += 1;
            exterior.1 += scored;
        } else if group_of[u] == group_of[v] {
            internal[group_of[u]].0 += 1;
            internal[group_of[u]].1 += scored;
        }
    }
    let clusters = groups
        .into_iter()
        .zip(internal)
        .map(|(grp, (edges, val))| {
            let center = centers.center[grp.leader];
            let d = &diameters[&center];
            ClusterRecord {
                center,
                leader: grp.leader,
                size: grp.members.len(),
                weak_diameter: (d.weak != usize::MAX).then_some(d.weak),
                strong_diameter: d.strong,
                method: grp.method,
                internal_edges: edges,
                internal_value: val,
                solved_round: grp.solved_round,
                finished_round: grp.finished_round,
            }
        })
        .collect();
    ClusterSolveReport {
        objective,
        epsilon,
        beta: params.beta,
        decomposition_rounds: params.rounds(g.n()),
        clusters,
        disconnected_clusters: decomposition::disconnected_clusters(g, centers),
        m: g.m() as u64,
        exterior_edges: exterior.0,
        exterior_value: exterior.1,
        achieved: value(g, sides),
        opt: None,
        ratio: None,
    }
}

/// `(centre, root, side)`: the sender's cluster, the smallest id it has heard
/// of in that cluster, and its side relative to that root.
#[derive(Debug, Clone, Copy)]
pub struct ParityMsg {
    pub center: VertexId,
    pub root: VertexId,
    pub side: bool,
}

impl Payload for ParityMsg {
    fn fields(&self) -> Vec<Field> {
        vec![Field::Id, Field::Id, Field::Flag]
    }
}

#[derive(Debug, Clone, Copy)]
struct ParityOut {
    side: bool,
    root: VertexId,
    conflict: Option<VertexId>,
}

struct Parity {
    center: VertexId,
    window: usize,
    root: VertexId,
    side: bool,
    changed: bool,
}

impl VertexProgram for Parity {
    type Message = ParityMsg;
    type Output = ParityOut;

    fn init(&mut self, ctx: &mut VertexContext<'_>) -> Option<ParityOut> {
        self.root = ctx.id();
        self.side = ctx.rng().gen_bool(0.5);
        None
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, ParityMsg>) {
        if self.changed || ctx.round() == self.window + 1 {
            self.changed = false;
            out.broadcast(ParityMsg { center: self.center, root: self.root, side: self.side });
        }
    }

    fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<ParityMsg>]) -> Option<ParityOut> {
        let ours = inbox.iter().filter(|e| e.msg.center == self.center);
        if ctx.round() <= self.window {
            if let Some(best) = ours.min_by_key(|e| e.msg.root) {
                if best.msg.root < self.root {
                    self.root = best.msg.root;
                    self.side = !best.msg.side;
                    self.changed = true;
                }
            }
            return None;
        }
        let conflict = ours.filter(|e| e.msg.root == self.root && e.msg.side == self.side).map(|e| e.from).next();
        Some(ParityOut { side: self.side, root: self.root, conflict })
    }
}

/// Bipartite max-cut with `β = ε`: decompose, then two-colour each cluster by
/// parity from its lowest id. Every internal edge is cut, so the cut is at
/// least `m − |exterior edges|`. Fails with [`Error::OddCycle`] when a
/// cluster turns out not to be bipartite.
pub fn bipartite_maxcut(g: &Graph, epsilon: f64, seed: u64) -> Result<(CutAssignment, ExecutionMetrics, ClusterSolveReport)> {
    let run = bipartite_run(g, epsilon, seed, &ClusterOptions::default())?;
    Ok((run.assignment, run.metrics, run.report))
}

pub fn bipartite_run(g: &Graph, epsilon: f64, seed: u64, opts: &ClusterOptions) -> Result<ClusterRun> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    let params = DecompositionParams::new(epsilon, opts.k)?;
    let mode = ModelMode::congest();
    let (centers, mut metrics) =
        decomposition::decompose(g, &params, mode, derive_seed(seed, "decomposition"), &Shifts::Sampled)?;
    // groups have strong diameter at most 2R once the decomposition settles
    let window = 2 * params.rounds(g.n()) + 1;
    let cfg = RunConfig::new(mode, derive_seed(seed, "parity"), g.n()).with_max_rounds(window + 1);
    let exec = sim::run(g, &cfg, |ctx| Parity {
        center: centers.center[ctx.id()],
        window,
        root: ctx.id(),
        side: false,
        changed: true,
    })?;
    let (outs, parity_metrics) = exec.complete(cfg.max_rounds)?;
    metrics.append("parity", parity_metrics);
    if let Some((u, o)) = outs.iter().enumerate().find(|(_, o)| o.conflict.is_some()) {
        let v = o.conflict.expect("found above");
        return Err(Error::OddCycle { u: u.min(v), v: u.max(v) });
    }
    let sides: Vec<bool> = outs.iter().map(|o| o.side).collect();
    let mut by_root: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (v, o) in outs.iter().enumerate() {
        by_root.entry(o.root).or_default().push(v);
    }
    let groups = by_root
        .into_iter()
        .map(|(leader, members)| Group {
            leader,
            members,
            method: SolveMethod::Parity,
            solved_round: window + 1,
            finished_round: window + 1,
        })
        .collect();
    let report = build_report(g, epsilon, &params, &centers, &sides, groups);
    Ok(ClusterRun { assignment: CutAssignment(sides), centers, report, metrics })
}

/// What every vertex floods about itself inside its cluster.
#[derive(Debug)]
struct Topology {
    id: VertexId,
    center: VertexId,
    out: Vec<VertexId>,
    inc: Vec<VertexId>,
}

#[derive(Debug)]
struct ClusterDecision {
    center: VertexId,
    leader: VertexId,
    sides: Vec<(VertexId, bool)>,
}

#[derive(Debug, Clone)]
enum GatherMsg {
    Topology(Vec<Rc<Topology>>),
    Decision(Rc<ClusterDecision>),
}

impl Payload for GatherMsg {
    fn fields(&self) -> Vec<Field> {
        let bytes = match self {
            GatherMsg::Topology(ts) => ts.iter().map(|t| 8 + 4 * (t.out.len() + t.inc.len())).sum(),
            GatherMsg::Decision(d) => 8 + 5 * d.sides.len(),
        };
        vec![Field::Blob(bytes)]
    }
}

#[derive(Debug, Clone)]
struct GatherOut {
    side: bool,
    leader: VertexId,
    round: usize,
    /// Set on leaders: the group they solved and how.
    solved: Option<(Vec<VertexId>, SolveMethod)>,
}

struct Gather {
    center: VertexId,
    window: usize,
    objective: Objective,
    cap: usize,
    known: BTreeMap<VertexId, Rc<Topology>>,
    fresh: Vec<Rc<Topology>>,
    forward: Option<Rc<ClusterDecision>>,
    decided: bool,
}

impl Gather {
    /// The members reachable from `me` through gathered same-cluster records.
    fn group(&self, me: VertexId) -> Vec<VertexId> {
        let mut seen = BTreeSet::from([me]);
        let mut queue = VecDeque::from([me]);
        while let Some(u) = queue.pop_front() {
            let t = &self.known[&u];
            for &w in t.out.iter().chain(&t.inc) {
                if self.known.contains_key(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn solve(&mut self, me: VertexId, round: usize) -> Option<GatherOut> {
        let members = self.group(me);
        if members[0] != me {
            return None;
        }
        let index: BTreeMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut inst = LocalInstance::new(self.objective, members.len());
        for (i, v) in members.iter().enumerate() {
            for w in &self.known[v].out {
                if let Some(&j) = index.get(w) {
                    if self.objective == Objective::Dicut || i < j {
                        inst.add_inner(i, j);
                    }
                }
            }
        }
        let (sides, method) = inst.solve(self.cap);
        self.decided = true;
        self.forward = Some(Rc::new(ClusterDecision {
            center: self.center,
            leader: me,
            sides: members.iter().copied().zip(sides.iter().copied()).collect(),
        }));
        Some(GatherOut { side: sides[0], leader: me, round, solved: Some((members, method)) })
    }
}

impl VertexProgram for Gather {
    type Message = GatherMsg;
    type Output = GatherOut;

    fn init(&mut self, ctx: &mut VertexContext<'_>) -> Option<GatherOut> {
        let me = Rc::new(Topology {
            id: ctx.id(),
            center: self.center,
            out: ctx.out_neighbors().to_vec(),
            inc: ctx.in_neighbors().to_vec(),
        });
        self.known.insert(ctx.id(), Rc::clone(&me));
        self.fresh.push(me);
        if self.window == 0 {
            return self.solve(ctx.id(), 0);
        }
        None
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, GatherMsg>) {
        if ctx.round() <= self.window {
            if !self.fresh.is_empty() {
                out.broadcast(GatherMsg::Topology(std::mem::take(&mut self.fresh)));
            }
        } else if let Some(d) = self.forward.take() {
            out.broadcast(GatherMsg::Decision(d));
        }
    }

    fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<GatherMsg>]) -> Option<GatherOut> {
        let me = ctx.id();
        let mut output = None;
        for e in inbox {
            match &e.msg {
                GatherMsg::Topology(ts) => {
                    for t in ts.iter().filter(|t| t.center == self.center) {
                        if let Entry::Vacant(slot) = self.known.entry(t.id) {
                            slot.insert(Rc::clone(t));
                            self.fresh.push(Rc::clone(t));
                        }
                    }
                }
                GatherMsg::Decision(d) if d.center == self.center && !self.decided => {
                    if let Some(&(_, side)) = d.sides.iter().find(|(v, _)| *v == me) {
                        self.decided = true;
                        self.forward = Some(Rc::clone(d));
                        output = Some(GatherOut { side, leader: d.leader, round: ctx.round(), solved: None });
                    }
                }
                GatherMsg::Decision(_) => {}
            }
        }
        if ctx.round() == self.window {
            self.fresh.clear();
            if !self.decided {
                output = self.solve(me, ctx.round());
            }
        }
        output
    }
}

/// Max-cut with `β = ε/2`: each cluster is solved exactly by its lowest id.
pub fn decomposition_maxcut(g: &Graph, epsilon: f64, seed: u64) -> Result<(CutAssignment, ExecutionMetrics, ClusterSolveReport)> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    let run = decomposition_run(g, epsilon, seed, &ClusterOptions::default())?;
    Ok((run.assignment, run.metrics, run.report))
}

/// Max-dicut with `β = ε/4`: each cluster is solved exactly by its lowest id.
pub fn decomposition_maxdicut(g: &Graph, epsilon: f64, seed: u64) -> Result<(CutAssignment, ExecutionMetrics, ClusterSolveReport)> {
    if !g.is_directed() {
        return Err(Error::ExpectedDirected);
    }
    let run = decomposition_run(g, epsilon, seed, &ClusterOptions::default())?;
    Ok((run.assignment, run.metrics, run.report))
}

/// Decomposition-based solve for the objective matching `g`'s orientation.
/// Runs in LOCAL: topology records are unbounded.
pub fn decomposition_run(g: &Graph, epsilon: f64, seed: u64, opts: &ClusterOptions) -> Result<ClusterRun> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let objective = Objective::for_graph(g);
    let beta = match objective {
        Objective::Cut => epsilon / 2.0,
        Objective::Dicut => epsilon / 4.0,
    };
    let params = DecompositionParams::new(beta, opts.k)?;
    let (centers, mut metrics) =
        decomposition::decompose(g, &params, ModelMode::Local, derive_seed(seed, "decomposition"), &Shifts::Sampled)?;
    let window = 2 * params.rounds(g.n());
    let cfg = RunConfig::new(ModelMode::Local, derive_seed(seed, "gather"), g.n()).with_max_rounds(2 * window + 1);
    let exec = sim::run(g, &cfg, |ctx| Gather {
        center: centers.center[ctx.id()],
        window,
        objective,
        cap: opts.exact_cap,
        known: BTreeMap::new(),
        fresh: Vec::new(),
        forward: None,
        decided: false,
    })?;
    let (outs, gather_metrics) = exec.complete(cfg.max_rounds)?;
    metrics.append("gather", gather_metrics);

    let sides: Vec<bool> = outs.iter().map(|o| o.side).collect();
    let mut finished: BTreeMap<VertexId, usize> = BTreeMap::new();
    for o in &outs {
        let f = finished.entry(o.leader).or_default();
        *f = (*f).max(o.round);
    }
    let groups = outs
        .iter()
        .filter_map(|o| {
            let (members, method) = o.solved.clone()?;
            Some(Group { leader: o.leader, members, method, solved_round: o.round, finished_round: finished[&o.leader] })
        })
        .collect();
    let report = build_report(g, epsilon, &params, &centers, &sides, groups);
    Ok(ClusterRun { assignment: CutAssignment(sides), centers, report, metrics })
}
