//! Colour-ordered greedy algorithms and the hybrid fast greedy.
//!
//! After a proper colouring, vertices of colour `c` decide in round `c` of the
//! greedy phase, using the 1-bit decisions of their lower-coloured
//! neighbours. Vertices of equal colour are never adjacent, so every class
//! decides in parallel exactly as a sequential greedy would in colour order.
//!
//! The fast variant splits the vertices by degree. Low-degree vertices run the
//! colour-ordered greedy among themselves; each connected group of high-degree
//! vertices is then completed by its lowest-id member from gathered topology.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;

use crate::coloring::{color_active, distributed_coloring, Coloring};
use crate::cut_eval::{self, add_gain, CutAssignment, Objective};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, VertexId};
use crate::local_solve::{FixedEdge, LocalInstance, SolveMethod};
use crate::oracle::check_permutation;
use crate::sim::{self, derive_seed, Envelope, ExecutionMetrics, Field, ModelMode, Outbox, Payload, RunConfig, VertexContext, VertexProgram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyRule {
    /// Join the side holding fewer decided neighbours.
    Cut,
    /// Deterministic double greedy: join `S` iff `a ≥ b`.
    Dicut,
    /// Randomised double greedy: join `S` with probability `a'/(a'+b')`.
    RandomizedDicut,
}

/// One vertex's decision in the greedy phase.
///
/// For [`GreedyRule::Cut`], `a` and `b` count decided neighbours outside and
/// inside `S`. For the dicut rules they are the marginal gains of adding `v`
/// to `X` and of removing it from `Y`, computed from `v`'s local views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreedyDecision {
    pub side: bool,
    pub color: u32,
    /// Round of the greedy phase in which the vertex decided.
    pub round: usize,
    pub a: i64,
    pub b: i64,
}

impl GreedyDecision {
    /// Max-cut only: edges to lower-coloured neighbours, and how many of them
    /// this decision cuts.
    pub fn responsibility(&self) -> (u64, u64) {
        let cut = if self.side { self.a } else { self.b };
        ((self.a + self.b) as u64, cut as u64)
    }
}

#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub assignment: CutAssignment,
    pub coloring: Coloring,
    pub decisions: Vec<GreedyDecision>,
    pub metrics: ExecutionMetrics,
}

/// A vertex's decision bit.
#[derive(Debug, Clone, Copy)]
pub struct SideBit(pub bool);

impl Payload for SideBit {
    fn fields(&self) -> Vec<Field> {
        vec![Field::Flag]
    }
}

/// How a low-degree vertex of the fast dicut treats its high-degree
/// neighbours, which decide only later.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowView {
    /// Keep them as undecided: in `Y`, not in `X`.
    #[default]
    Undecided,
    /// Drop the arcs to them from both marginals.
    Ignored,
}

struct GreedyVertex {
    rule: GreedyRule,
    /// `None` for vertices sitting this phase out.
    color: Option<u32>,
    peers: Vec<VertexId>,
    out: Vec<VertexId>,
    inc: Vec<VertexId>,
    joined: BTreeSet<VertexId>,
    left: BTreeSet<VertexId>,
    side: Option<bool>,
    announced: bool,
}

impl GreedyVertex {
    fn new(ctx: &VertexContext<'_>, rule: GreedyRule, color: Option<u32>, peers: Vec<VertexId>, view: LowView) -> Self {
        let keep = |list: &[VertexId]| match view {
            LowView::Undecided => list.to_vec(),
            LowView::Ignored => list.iter().copied().filter(|w| peers.binary_search(w).is_ok()).collect(),
        };
        GreedyVertex {
            rule,
            color,
            out: keep(ctx.out_neighbors()),
            inc: keep(ctx.in_neighbors()),
            peers,
            joined: BTreeSet::new(),
            left: BTreeSet::new(),
            side: None,
            announced: false,
        }
    }

    fn marginals(&self) -> (i64, i64) {
        match self.rule {
            GreedyRule::Cut => (self.left.len() as i64, self.joined.len() as i64),
            GreedyRule::Dicut | GreedyRule::RandomizedDicut => {
                let a = add_gain(&self.out, &self.inc, |w| self.joined.contains(&w));
                let in_y = |w: &&VertexId| !self.left.contains(w);
                let b = self.inc.iter().filter(in_y).count() as i64
                    - self.out.iter().filter(|w| !in_y(w)).count() as i64;
                (a, b)
            }
        }
    }
}

impl VertexProgram for GreedyVertex {
    type Message = SideBit;
    type Output = Option<GreedyDecision>;

    fn init(&mut self, _ctx: &mut VertexContext<'_>) -> Option<Option<GreedyDecision>> {
        self.color.is_none().then_some(None)
    }

    fn send(&mut self, _ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, SideBit>) {
        if let (Some(side), false) = (self.side, self.announced) {
            self.announced = true;
            for &u in &self.peers {
                out.send(u, SideBit(side));
            }
        }
    }

    fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<SideBit>]) -> Option<Option<GreedyDecision>> {
        for e in inbox {
            if e.msg.0 {
                self.joined.insert(e.from);
            } else {
                self.left.insert(e.from);
            }
        }
        let color = self.color?;
        if self.side.is_some() || ctx.round() != color as usize {
            return None;
        }
        let (a, b) = self.marginals();
        let side = match self.rule {
            GreedyRule::Cut => b <= a,
            GreedyRule::Dicut => {
                assert!(a + b >= 0, "double greedy marginals a={a} b={b} at vertex {}", ctx.id());
                a >= b
            }
            GreedyRule::RandomizedDicut => {
                assert!(a + b >= 0, "double greedy marginals a={a} b={b} at vertex {}", ctx.id());
                let (a1, b1) = (a.max(0) as u32, b.max(0) as u32);
                a1 + b1 == 0 || ctx.rng().gen_ratio(a1, a1 + b1)
            }
        };
        if self.rule == GreedyRule::Cut {
            let cut = if side { a } else { b };
            assert!(2 * cut >= a + b, "vertex {} cuts {cut} of {} responsible edges", ctx.id(), a + b);
        }
        self.side = Some(side);
        Some(Some(GreedyDecision { side, color, round: ctx.round(), a, b }))
    }
}

fn check_rule(g: &Graph, rule: GreedyRule) -> Result<()> {
    match (rule, g.is_directed()) {
        (GreedyRule::Cut, true) => Err(Error::ExpectedUndirected),
        (GreedyRule::Dicut | GreedyRule::RandomizedDicut, false) => Err(Error::ExpectedDirected),
        _ => Ok(()),
    }
}

/// Colours `g`, then runs the greedy phase under `rule`. Both phases are
/// CONGEST programs.
pub fn greedy_trace(g: &Graph, seed: u64, rule: GreedyRule) -> Result<GreedyRun> {
    check_rule(g, rule)?;
    let (coloring, mut metrics) = distributed_coloring(g, derive_seed(seed, "coloring"))?;
    metrics = metrics.named("coloring");
    let cfg = RunConfig::new(ModelMode::congest(), derive_seed(seed, "greedy"), g.n());
    let exec = sim::run(g, &cfg, |ctx| {
        let peers = ctx.neighbors().to_vec();
        GreedyVertex::new(ctx, rule, Some(coloring.color(ctx.id())), peers, LowView::Undecided)
    })?;
    let (decisions, greedy_metrics) = exec.complete(cfg.max_rounds)?;
    metrics.append("greedy", greedy_metrics);
    let decisions: Vec<GreedyDecision> = decisions.into_iter().map(|d| d.expect("every vertex is active")).collect();
    let assignment = CutAssignment(decisions.iter().map(|d| d.side).collect());
    Ok(GreedyRun { assignment, coloring, decisions, metrics })
}

/// Colour-ordered greedy max-cut; always cuts at least half of the edges.
pub fn distributed_greedy_maxcut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    let run = greedy_trace(g, seed, GreedyRule::Cut)?;
    Ok((run.assignment, run.metrics))
}

/// Colour-ordered deterministic double greedy; a 1/3-approximation.
pub fn distributed_greedy_maxdicut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    let run = greedy_trace(g, seed, GreedyRule::Dicut)?;
    Ok((run.assignment, run.metrics))
}

/// Colour-ordered randomised double greedy; a 1/2-approximation in expectation.
pub fn distributed_randomized_maxdicut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    let run = greedy_trace(g, seed, GreedyRule::RandomizedDicut)?;
    Ok((run.assignment, run.metrics))
}

/// One step of the sequential double greedy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleGreedyStep {
    pub vertex: VertexId,
    pub a: i64,
    pub b: i64,
    pub joined: bool,
}

/// Sequential deterministic double greedy over `order`, with marginals
/// recomputed on the whole graph.
pub fn sequential_double_greedy(g: &Graph, order: &[VertexId]) -> Result<(CutAssignment, Vec<DoubleGreedyStep>)> {
    if !g.is_directed() {
        return Err(Error::ExpectedDirected);
    }
    check_permutation(g.n(), order)?;
    let mut x = vec![false; g.n()];
    let mut y = vec![true; g.n()];
    let mut steps = Vec::with_capacity(order.len());
    for &v in order {
        let a = cut_eval::marginal_add(g, &x, v)?;
        let b = cut_eval::marginal_remove(g, &y, v)?;
        let joined = a >= b;
        if joined {
            x[v] = true;
        } else {
            y[v] = false;
        }
        steps.push(DoubleGreedyStep { vertex: v, a, b, joined });
    }
    debug_assert_eq!(x, y);
    Ok((CutAssignment(x), steps))
}

/// Sequential deterministic double greedy; a 1/3-approximation for any order.
pub fn sequential_greedy_maxdicut(g: &Graph, order: &[VertexId]) -> Result<CutAssignment> {
    Ok(sequential_double_greedy(g, order)?.0)
}

/// `⌈√n⌉`.
pub fn degree_threshold(n: usize) -> usize {
    let mut t = (n as f64).sqrt() as usize;
    while t * t < n {
        t += 1;
    }
    while t > 0 && (t - 1) * (t - 1) >= n {
        t -= 1;
    }
    t
}

/// Vertices split by whether they have at least `⌈√n⌉` distinct neighbours.
#[derive(Debug, Clone)]
pub struct DegreeSplit {
    pub threshold: usize,
    pub high: Vec<bool>,
    pub low_graph: Graph,
    /// `low_ids[i]` is the vertex of `low_graph` numbered `i`.
    pub low_ids: Vec<VertexId>,
    pub high_graph: Graph,
    pub high_ids: Vec<VertexId>,
}

impl DegreeSplit {
    pub fn low_vertices(&self) -> Vec<VertexId> {
        self.low_ids.clone()
    }

    pub fn high_vertices(&self) -> Vec<VertexId> {
        self.high_ids.clone()
    }
}

pub fn degree_split(g: &Graph) -> DegreeSplit {
    let threshold = degree_threshold(g.n());
    let high: Vec<bool> = g.vertices().map(|v| g.neighbors(v).len() >= threshold).collect();
    let low: Vec<bool> = high.iter().map(|h| !h).collect();
    let (low_graph, low_ids) = g.induced(&low);
    let (high_graph, high_ids) = g.induced(&high);
    DegreeSplit { threshold, high, low_graph, low_ids, high_graph, high_ids }
}

/// Distances in `G` between high-degree vertices joined in `G_high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HighDistanceAudit {
    pub max_distance: usize,
    /// `3⌈√n⌉`.
    pub bound: usize,
    pub violations: usize,
}

pub fn audit_high_distances(g: &Graph, split: &DegreeSplit) -> HighDistanceAudit {
    let bound = 3 * split.threshold;
    let mut audit = HighDistanceAudit { max_distance: 0, bound, violations: 0 };
    for comp in crate::graph::connected_components(&split.high_graph) {
        for (i, &a) in comp.iter().enumerate() {
            let dist = bfs_distances(g, split.high_ids[a]);
            for &b in &comp[i + 1..] {
                let d = dist[split.high_ids[b]].expect("same component of a subgraph");
                audit.max_distance = audit.max_distance.max(d);
                audit.violations += usize::from(d > bound);
            }
        }
    }
    audit
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FastOptions {
    /// Largest high-degree component solved exactly by its leader.
    pub exact_cap: usize,
    pub low_view: LowView,
}

impl Default for FastOptions {
    fn default() -> Self {
        FastOptions { exact_cap: crate::DEFAULT_EXACT_CAP, low_view: LowView::Undecided }
    }
}

/// How one high-degree component was completed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighComponent {
    pub leader: VertexId,
    pub size: usize,
    pub method: SolveMethod,
    /// Edges incident to the component that the leader's assignment scores.
    pub value: u64,
}

#[derive(Debug, Clone)]
pub struct FastGreedyRun {
    pub assignment: CutAssignment,
    pub split: DegreeSplit,
    /// Step-one decisions, `None` for high-degree vertices.
    pub low_decisions: Vec<Option<GreedyDecision>>,
    pub components: Vec<HighComponent>,
    pub high_distances: HighDistanceAudit,
    pub metrics: ExecutionMetrics,
}

/// Fast greedy max-cut with default options.
pub fn fast_greedy_maxcut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    if g.is_directed() {
        return Err(Error::ExpectedUndirected);
    }
    let run = fast_greedy(g, seed, &FastOptions::default())?;
    Ok((run.assignment, run.metrics))
}

/// Fast greedy max-dicut with default options.
pub fn fast_greedy_maxdicut(g: &Graph, seed: u64) -> Result<(CutAssignment, ExecutionMetrics)> {
    if !g.is_directed() {
        return Err(Error::ExpectedDirected);
    }
    let run = fast_greedy(g, seed, &FastOptions::default())?;
    Ok((run.assignment, run.metrics))
}

/// Runs the hybrid algorithm for the objective matching `g`'s orientation.
///
/// Step one colours `G_low` and runs the greedy there (CONGEST). Step two is
/// a LOCAL program on all of `G`: high-degree vertices learn which neighbours
/// are high and the sides of their low neighbours, flood that for `3⌈√n⌉`
/// rounds, and the lowest id of each `G_high` component solves the component
/// and floods the result back.
pub fn fast_greedy(g: &Graph, seed: u64, opts: &FastOptions) -> Result<FastGreedyRun> {
    let objective = Objective::for_graph(g);
    let rule = match objective {
        Objective::Cut => GreedyRule::Cut,
        Objective::Dicut => GreedyRule::Dicut,
    };
    let split = degree_split(g);
    let low: Vec<bool> = split.high.iter().map(|h| !h).collect();
    let palette = g.max_degree().min(split.threshold.saturating_sub(1)) as u32 + 1;
    let (colors, coloring_metrics) = color_active(g, &low, palette, ModelMode::congest(), derive_seed(seed, "coloring"))?;
    let mut metrics = ExecutionMetrics::default();
    metrics.append("coloring", coloring_metrics);

    let cfg = RunConfig::new(ModelMode::congest(), derive_seed(seed, "greedy"), g.n());
    let exec = sim::run(g, &cfg, |ctx| {
        let peers = ctx.neighbors().iter().copied().filter(|&u| low[u]).collect();
        GreedyVertex::new(ctx, rule, colors[ctx.id()], peers, opts.low_view)
    })?;
    let (low_decisions, greedy_metrics) = exec.complete(cfg.max_rounds)?;
    metrics.append("greedy", greedy_metrics);

    let high_distances = audit_high_distances(g, &split);
    let mut sides: Vec<bool> = low_decisions.iter().map(|d| d.is_some_and(|d| d.side)).collect();
    let mut components = Vec::new();
    if !split.high_ids.is_empty() {
        let radius = 3 * split.threshold;
        let cfg = RunConfig::new(ModelMode::Local, derive_seed(seed, "high"), g.n());
        let exec = sim::run(g, &cfg, |ctx| {
            let v = ctx.id();
            HighGather::new(split.high[v], low_decisions[v].map(|d| d.side), radius, objective, opts.exact_cap)
        })?;
        let (outputs, high_metrics) = exec.complete(cfg.max_rounds)?;
        metrics.append("high", high_metrics);
        for (v, (side, led)) in outputs.into_iter().enumerate() {
            sides[v] = side;
            components.extend(led);
        }
    }
    Ok(FastGreedyRun {
        assignment: CutAssignment(sides),
        split,
        low_decisions,
        components,
        high_distances,
        metrics,
    })
}

/// What a high-degree vertex floods about itself.
#[derive(Debug)]
struct HighRecord {
    id: VertexId,
    out: Vec<VertexId>,
    inc: Vec<VertexId>,
    high_nbrs: Vec<VertexId>,
    low_sides: Vec<(VertexId, bool)>,
}

impl HighRecord {
    fn bytes(&self) -> usize {
        4 * (1 + self.out.len() + self.inc.len() + self.high_nbrs.len()) + 5 * self.low_sides.len()
    }
}

#[derive(Debug)]
struct LeaderDecision {
    leader: VertexId,
    sides: Vec<(VertexId, bool)>,
}

#[derive(Debug, Clone)]
enum HighMsg {
    Hello { high: bool, side: Option<bool> },
    Records(Vec<Rc<HighRecord>>),
    Decisions(Vec<Rc<LeaderDecision>>),
}

impl Payload for HighMsg {
    fn fields(&self) -> Vec<Field> {
        match self {
            HighMsg::Hello { .. } => vec![Field::Flag, Field::Flag, Field::Flag],
            HighMsg::Records(rs) => vec![Field::Blob(rs.iter().map(|r| r.bytes()).sum())],
            HighMsg::Decisions(ds) => vec![Field::Blob(ds.iter().map(|d| 4 + 5 * d.sides.len()).sum())],
        }
    }
}

struct HighGather {
    high: bool,
    /// Step-one side of a low-degree vertex.
    side: Option<bool>,
    radius: usize,
    objective: Objective,
    cap: usize,
    known: BTreeMap<VertexId, Rc<HighRecord>>,
    fresh: Vec<Rc<HighRecord>>,
    seen_leaders: BTreeSet<VertexId>,
    pending: Vec<Rc<LeaderDecision>>,
}

impl HighGather {
    fn new(high: bool, side: Option<bool>, radius: usize, objective: Objective, cap: usize) -> Self {
        HighGather {
            high,
            side,
            radius,
            objective,
            cap,
            known: BTreeMap::new(),
            fresh: Vec::new(),
            seen_leaders: BTreeSet::new(),
            pending: Vec::new(),
        }
    }

    /// The high-degree component of `me` as far as the gathered records show.
    fn component(&self, me: VertexId) -> Vec<VertexId> {
        let mut seen = BTreeSet::from([me]);
        let mut queue = VecDeque::from([me]);
        while let Some(u) = queue.pop_front() {
            if let Some(r) = self.known.get(&u) {
                for &w in &r.high_nbrs {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    fn solve(&self, members: &[VertexId]) -> (LeaderDecision, HighComponent) {
        let index: BTreeMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut inst = LocalInstance::new(self.objective, members.len());
        for (i, v) in members.iter().enumerate() {
            let Some(r) = self.known.get(v) else { continue };
            for &w in &r.out {
                if let Some(&j) = index.get(&w) {
                    if self.objective == Objective::Dicut || i < j {
                        inst.add_inner(i, j);
                    }
                }
            }
            for &(w, fixed_side) in &r.low_sides {
                match self.objective {
                    Objective::Cut => inst.add_fixed(FixedEdge { free: i, fixed_side, free_is_tail: true }),
                    Objective::Dicut => {
                        if r.out.binary_search(&w).is_ok() {
                            inst.add_fixed(FixedEdge { free: i, fixed_side, free_is_tail: true });
                        }
                        if r.inc.binary_search(&w).is_ok() {
                            inst.add_fixed(FixedEdge { free: i, fixed_side, free_is_tail: false });
                        }
                    }
                }
            }
        }
        let (sides, method) = inst.solve(self.cap);
        let report = HighComponent { leader: members[0], size: members.len(), method, value: inst.value(&sides) };
        let decision = LeaderDecision { leader: members[0], sides: members.iter().copied().zip(sides).collect() };
        (decision, report)
    }
}

impl VertexProgram for HighGather {
    type Message = HighMsg;
    type Output = (bool, Option<HighComponent>);

    fn init(&mut self, _ctx: &mut VertexContext<'_>) -> Option<Self::Output> {
        self.side.map(|s| (s, None))
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, HighMsg>) {
        let r = ctx.round();
        if r == 1 {
            out.broadcast(HighMsg::Hello { high: self.high, side: self.side });
        } else if r <= 1 + self.radius {
            if !self.fresh.is_empty() {
                out.broadcast(HighMsg::Records(std::mem::take(&mut self.fresh)));
            }
        } else if !self.pending.is_empty() {
            out.broadcast(HighMsg::Decisions(std::mem::take(&mut self.pending)));
        }
    }

    fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<HighMsg>]) -> Option<Self::Output> {
        let me = ctx.id();
        let r = ctx.round();
        let mut output = None;
        if r == 1 && self.high {
            let mut record = HighRecord {
                id: me,
                out: ctx.out_neighbors().to_vec(),
                inc: ctx.in_neighbors().to_vec(),
                high_nbrs: Vec::new(),
                low_sides: Vec::new(),
            };
            for e in inbox {
                if let HighMsg::Hello { high, side } = e.msg {
                    match (high, side) {
                        (true, _) => record.high_nbrs.push(e.from),
                        (false, Some(s)) => record.low_sides.push((e.from, s)),
                        (false, None) => unreachable!("low vertices announce their side"),
                    }
                }
            }
            let record = Rc::new(record);
            self.known.insert(me, Rc::clone(&record));
            self.fresh.push(record);
        }
        for e in inbox {
            match &e.msg {
                HighMsg::Hello { .. } => {}
                HighMsg::Records(rs) => {
                    for rec in rs {
                        if let Entry::Vacant(slot) = self.known.entry(rec.id) {
                            slot.insert(Rc::clone(rec));
                            self.fresh.push(Rc::clone(rec));
                        }
                    }
                }
                HighMsg::Decisions(ds) => {
                    for d in ds {
                        if self.seen_leaders.insert(d.leader) {
                            if let (true, Some(&(_, s))) = (self.high, d.sides.iter().find(|(v, _)| *v == me)) {
                                output = Some((s, None));
                            }
                            self.pending.push(Rc::clone(d));
                        }
                    }
                }
            }
        }
        if r == 1 + self.radius {
            self.fresh.clear();
            if self.high {
                let members = self.component(me);
                if members[0] == me {
                    let (decision, report) = self.solve(&members);
                    let own = decision.sides[0].1;
                    self.seen_leaders.insert(me);
                    self.pending.push(Rc::new(decision));
                    output = Some((own, Some(report)));
                }
            }
        }
        output
    }
}
