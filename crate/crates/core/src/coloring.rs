//! Randomized (Δ+1)-colouring by repeated trials.
//!
//! Each uncoloured vertex proposes a uniformly random colour from the part of
//! its palette not yet claimed by a neighbour. It keeps the proposal when no
//! neighbour proposed or announced the same colour in that round, then
//! announces it once. Conflicting proposals are all dropped.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::sim::{self, Envelope, ExecutionMetrics, Field, ModelMode, Outbox, Payload, RunConfig, VertexContext, VertexProgram};

/// Colours in `1..=Δ+1`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn color(&self, v: VertexId) -> u32 {
        self.0[v]
    }

    pub fn colors_used(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    /// Vertices ordered by ascending colour, ties by id.
    pub fn induced_order(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = (0..self.0.len()).collect();
        order.sort_by_key(|&v| (self.0[v], v));
        order
    }
}

/// True iff no edge is monochromatic and every colour lies in `1..=Δ+1`.
pub fn verify_proper(g: &Graph, c: &Coloring) -> bool {
    let top = g.max_degree() as u32 + 1;
    c.0.len() == g.n()
        && c.0.iter().all(|&x| (1..=top).contains(&x))
        && g.edges().all(|(u, v)| c.0[u] != c.0[v])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorMsg {
    Propose(u32),
    Final(u32),
}

/// Message fields: a tag bit plus a colour from the palette.
#[derive(Debug, Clone, Copy)]
pub struct ColorPayload {
    pub msg: ColorMsg,
    pub palette: u32,
}

impl Payload for ColorPayload {
    fn fields(&self) -> Vec<Field> {
        vec![Field::Flag, Field::Bounded(u64::from(self.palette))]
    }
}

/// One vertex of the trial colouring. Inactive vertices output `None` at once
/// and stay silent; active ones ignore inactive neighbours.
pub struct TrialColoring {
    active: bool,
    palette: u32,
    peers: Vec<VertexId>,
    taken: BTreeSet<u32>,
    proposal: Option<u32>,
    color: Option<u32>,
    announced: bool,
}

impl TrialColoring {
    /// `peers` are the neighbours taking part (sorted).
    pub fn new(active: bool, palette: u32, peers: Vec<VertexId>) -> Self {
        TrialColoring { active, palette, peers, taken: BTreeSet::new(), proposal: None, color: None, announced: false }
    }
}

impl VertexProgram for TrialColoring {
    type Message = ColorPayload;
    type Output = Option<u32>;

    fn init(&mut self, _ctx: &mut VertexContext<'_>) -> Option<Option<u32>> {
        (!self.active).then_some(None)
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, ColorPayload>) {
        if !self.active {
            return;
        }
        let msg = match self.color {
            Some(c) if !self.announced => {
                self.announced = true;
                ColorMsg::Final(c)
            }
            Some(_) => return,
            None => {
                let free: Vec<u32> = (1..=self.palette).filter(|c| !self.taken.contains(c)).collect();
                let pick = free[ctx.rng().gen_range(0..free.len())];
                self.proposal = Some(pick);
                ColorMsg::Propose(pick)
            }
        };
        for &u in &self.peers {
            out.send(u, ColorPayload { msg, palette: self.palette });
        }
    }

    fn receive(&mut self, _ctx: &mut VertexContext<'_>, inbox: &[Envelope<ColorPayload>]) -> Option<Option<u32>> {
        if !self.active || self.color.is_some() {
            return None;
        }
        let mut clash = false;
        for e in inbox {
            match e.msg.msg {
                ColorMsg::Final(c) => {
                    self.taken.insert(c);
                }
                ColorMsg::Propose(c) => clash |= Some(c) == self.proposal,
            }
        }
        let mine = self.proposal.take()?;
        if clash || self.taken.contains(&mine) {
            return None;
        }
        self.color = Some(mine);
        Some(Some(mine))
    }
}

/// Colours the subgraph of vertices with `active[v]` using `palette` colours.
/// `palette` must exceed the largest active degree.
pub fn color_active(
    g: &Graph,
    active: &[bool],
    palette: u32,
    mode: ModelMode,
    seed: u64,
) -> Result<(Vec<Option<u32>>, ExecutionMetrics)> {
    let cfg = RunConfig::new(mode, seed, g.n());
    let exec = sim::run(g, &cfg, |ctx| {
        let v = ctx.id();
        let peers = ctx.neighbors().iter().copied().filter(|&u| active[u]).collect();
        TrialColoring::new(active[v], palette, peers)
    })?;
    exec.complete(cfg.max_rounds)
}

/// Proper (Δ+1)-colouring of the whole graph as a CONGEST vertex program.
pub fn distributed_coloring(g: &Graph, seed: u64) -> Result<(Coloring, ExecutionMetrics)> {
    let palette = g.max_degree() as u32 + 1;
    let (colors, metrics) = color_active(g, &vec![true; g.n()], palette, ModelMode::congest(), seed)?;
    let colors = colors.into_iter().map(|c| c.expect("every vertex is active")).collect();
    Ok((Coloring(colors), metrics))
}
