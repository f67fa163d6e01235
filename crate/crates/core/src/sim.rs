//! Lock-step simulator for the synchronous LOCAL and CONGEST models.
//!
//! Each round has two phases. Every vertex that is still running first
//! produces its outgoing messages from the state it had at the end of the
//! previous round; the simulator then delivers all of them at once and every
//! vertex computes on its inbox. A message sent in round `r` therefore cannot
//! influence anything sent before round `r + 1`.
//!
//! Vertex programs see the world only through [`VertexContext`]: their id,
//! `n`, Δ, their own neighbour lists and a private random stream. Vertices are
//! stepped in ascending id order; inboxes are sorted by sender, so the order
//! is not observable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// One field of a message in its canonical encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// A vertex id: `⌈log2 n⌉` bits.
    Id,
    /// A counter bounded by `n`: `⌈log2 n⌉` bits.
    Count,
    /// A single bit.
    Flag,
    /// An integer in `0..=max`: `⌈log2(max + 1)⌉` bits.
    Bounded(u64),
    /// A 32.32 fixed-point real: 64 bits.
    Fixed,
    /// An opaque byte string; only meterable in LOCAL.
    Blob(usize),
}

/// Messages describe their canonical encoding as a list of fields.
pub trait Payload {
    fn fields(&self) -> Vec<Field>;
}

impl Payload for () {
    fn fields(&self) -> Vec<Field> {
        Vec::new()
    }
}

/// `⌈log2 n⌉`, at least 1.
pub fn id_bits(n: usize) -> u64 {
    bits_for_values(n as u64)
}

fn bits_for_values(values: u64) -> u64 {
    if values <= 2 {
        1
    } else {
        u64::from(64 - (values - 1).leading_zeros())
    }
}

/// Size in bits of a message with the given fields in a graph on `n` vertices.
pub fn message_bits(fields: &[Field], n: usize) -> u64 {
    fields
        .iter()
        .map(|f| match *f {
            Field::Id | Field::Count => id_bits(n),
            Field::Flag => 1,
            Field::Bounded(max) => bits_for_values(max.saturating_add(1)),
            Field::Fixed => 64,
            Field::Blob(bytes) => 8 * bytes as u64,
        })
        .sum()
}

/// Per-message bit budget for CONGEST: `c · ⌈log2 n⌉` bits, plus 64 bits for
/// each fixed-point field up to `fixed_point_fields`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CongestBudget {
    pub c: u32,
    pub fixed_point_fields: u32,
}

impl Default for CongestBudget {
    fn default() -> Self {
        CongestBudget { c: 4, fixed_point_fields: 1 }
    }
}

impl CongestBudget {
    /// Pure `c · ⌈log2 n⌉`; fixed-point fields get no allowance.
    pub fn strict(c: u32) -> Self {
        CongestBudget { c, fixed_point_fields: 0 }
    }

    pub fn limit(&self, fields: &[Field], n: usize) -> u64 {
        let fixed = fields.iter().filter(|f| matches!(f, Field::Fixed)).count() as u64;
        u64::from(self.c) * id_bits(n) + 64 * fixed.min(u64::from(self.fixed_point_fields))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelMode {
    Local,
    Congest(CongestBudget),
}

impl ModelMode {
    pub fn congest() -> Self {
        ModelMode::Congest(CongestBudget::default())
    }
}

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the private stream of vertex `id` under `global_seed`.
pub fn vertex_seed(global_seed: u64, id: VertexId) -> u64 {
    mix64(mix64(global_seed) ^ mix64(id as u64 ^ 0xD1B5_4A32_D192_ED03))
}

/// Independent seed for a named sub-computation (phase) of one execution.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    tag.bytes().fold(mix64(seed), |h, b| mix64(h ^ u64::from(b)))
}

/// Everything a vertex is allowed to know about the network.
pub struct VertexContext<'g> {
    graph: &'g Graph,
    id: VertexId,
    round: usize,
    rng: ChaCha8Rng,
}

impl<'g> VertexContext<'g> {
    pub fn id(&self) -> VertexId {
        self.id
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    /// Current round; 0 during `init`.
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn is_directed(&self) -> bool {
        self.graph.is_directed()
    }

    pub fn neighbors(&self) -> &'g [VertexId] {
        self.graph.neighbors(self.id)
    }

    pub fn out_neighbors(&self) -> &'g [VertexId] {
        self.graph.out_neighbors(self.id)
    }

    pub fn in_neighbors(&self) -> &'g [VertexId] {
        self.graph.in_neighbors(self.id)
    }

    pub fn degree(&self) -> usize {
        self.graph.degree(self.id)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

pub struct Envelope<M> {
    pub from: VertexId,
    pub msg: M,
}

/// Outgoing messages of one vertex in one round.
pub struct Outbox<'a, M> {
    sender: VertexId,
    neighbors: &'a [VertexId],
    queued: Vec<(VertexId, M)>,
    misaddressed: Option<VertexId>,
}

impl<M: Clone> Outbox<'_, M> {
    pub fn send(&mut self, to: VertexId, msg: M) {
        if self.neighbors.binary_search(&to).is_ok() {
            self.queued.push((to, msg));
        } else if self.misaddressed.is_none() {
            self.misaddressed = Some(to);
        }
    }

    pub fn broadcast(&mut self, msg: M) {
        for &to in self.neighbors {
            self.queued.push((to, msg.clone()));
        }
    }

    pub fn sender(&self) -> VertexId {
        self.sender
    }
}

/// The per-vertex state machine run by [`run`].
///
/// `send` is called at the start of every round, `receive` once all messages
/// of the round are delivered. A vertex outputs at most once (from `init` or
/// `receive`) and keeps being stepped afterwards so it can still relay.
pub trait VertexProgram {
    type Message: Payload + Clone;
    type Output;

    fn init(&mut self, _ctx: &mut VertexContext<'_>) -> Option<Self::Output> {
        None
    }

    fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, Self::Message>);

    fn receive(
        &mut self,
        ctx: &mut VertexContext<'_>,
        inbox: &[Envelope<Self::Message>],
    ) -> Option<Self::Output>;
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoundTally {
    pub round: usize,
    pub messages: u64,
    pub max_bits: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PhaseSpan {
    pub name: String,
    pub rounds: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExecutionMetrics {
    pub rounds_used: usize,
    pub total_messages: u64,
    pub total_bits: u64,
    pub max_message_bits: u64,
    pub per_round: Vec<RoundTally>,
    pub phases: Vec<PhaseSpan>,
}

impl ExecutionMetrics {
    /// Appends a later phase, renumbering its rounds after ours.
    pub fn append(&mut self, name: &str, other: ExecutionMetrics) {
        let offset = self.rounds_used;
        self.per_round.extend(other.per_round.into_iter().map(|mut t| {
            t.round += offset;
            t
        }));
        self.rounds_used += other.rounds_used;
        self.total_messages += other.total_messages;
        self.total_bits += other.total_bits;
        self.max_message_bits = self.max_message_bits.max(other.max_message_bits);
        if other.phases.is_empty() {
            self.phases.push(PhaseSpan { name: name.to_string(), rounds: other.rounds_used });
        } else {
            self.phases.extend(other.phases);
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        if self.phases.is_empty() {
            self.phases.push(PhaseSpan { name: name.to_string(), rounds: self.rounds_used });
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: ModelMode,
    pub seed: u64,
    pub max_rounds: usize,
}

impl RunConfig {
    /// Round cap defaults to `20 · n` (at least 20).
    pub fn new(mode: ModelMode, seed: u64, n: usize) -> Self {
        RunConfig { mode, seed, max_rounds: default_max_rounds(n) }
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = max_rounds;
        self
    }
}

pub fn default_max_rounds(n: usize) -> usize {
    20 * n.max(1)
}

/// Outcome of a run. `outputs[v]` is `None` only when the round cap was hit.
#[derive(Debug)]
pub struct Execution<O> {
    pub outputs: Vec<Option<O>>,
    pub metrics: ExecutionMetrics,
}

impl<O> Execution<O> {
    pub fn terminated(&self) -> bool {
        self.outputs.iter().all(Option::is_some)
    }

    /// All outputs, or [`Error::NonTermination`] if some vertex never output.
    pub fn complete(self, max_rounds: usize) -> Result<(Vec<O>, ExecutionMetrics)> {
        let pending = self.outputs.iter().filter(|o| o.is_none()).count();
        if pending > 0 {
            return Err(Error::NonTermination { max_rounds, pending });
        }
        Ok((self.outputs.into_iter().map(Option::unwrap).collect(), self.metrics))
    }
}

/// Runs one program instance per vertex until every vertex has output or
/// `cfg.max_rounds` rounds have elapsed.
///
/// `factory` builds the program of each vertex from its context. It must only
/// use state that legitimately belongs to that vertex (e.g. its own output
/// from an earlier phase).
pub fn run<P, F>(g: &Graph, cfg: &RunConfig, mut factory: F) -> Result<Execution<P::Output>>
where
    P: VertexProgram,
    F: FnMut(&VertexContext<'_>) -> P,
{
    let n = g.n();
    let mut ctxs: Vec<VertexContext<'_>> = g
        .vertices()
        .map(|id| VertexContext {
            graph: g,
            id,
            round: 0,
            rng: ChaCha8Rng::seed_from_u64(vertex_seed(cfg.seed, id)),
        })
        .collect();
    let mut programs: Vec<P> = ctxs.iter().map(&mut factory).collect();
    let mut outputs: Vec<Option<P::Output>> = programs
        .iter_mut()
        .zip(ctxs.iter_mut())
        .map(|(p, ctx)| p.init(ctx))
        .collect();
    let mut pending = outputs.iter().filter(|o| o.is_none()).count();
    let mut metrics = ExecutionMetrics::default();
    let mut inboxes: Vec<Vec<Envelope<P::Message>>> = (0..n).map(|_| Vec::new()).collect();

    let mut round = 0;
    while pending > 0 && round < cfg.max_rounds {
        round += 1;
        let mut tally = RoundTally { round, ..RoundTally::default() };
        for inbox in inboxes.iter_mut() {
            inbox.clear();
        }
        for (v, (program, ctx)) in programs.iter_mut().zip(ctxs.iter_mut()).enumerate() {
            ctx.round = round;
            let mut out = Outbox { sender: v, neighbors: g.neighbors(v), queued: Vec::new(), misaddressed: None };
            program.send(ctx, &mut out);
            if let Some(to) = out.misaddressed {
                return Err(Error::NotANeighbor { vertex: to, of: v });
            }
            for (to, msg) in out.queued {
                let fields = msg.fields();
                let bits = message_bits(&fields, n);
                if let ModelMode::Congest(budget) = cfg.mode {
                    if fields.iter().any(|f| matches!(f, Field::Blob(_))) {
                        return Err(Error::UnmeteredPayload { vertex: v, round });
                    }
                    let limit = budget.limit(&fields, n);
                    if bits > limit {
                        return Err(Error::CongestViolation { vertex: v, round, bits, budget: limit });
                    }
                }
                tally.messages += 1;
                tally.max_bits = tally.max_bits.max(bits);
                metrics.total_bits += bits;
                inboxes[to].push(Envelope { from: v, msg });
            }
        }
        for (v, ((program, ctx), inbox)) in
            programs.iter_mut().zip(ctxs.iter_mut()).zip(&inboxes).enumerate()
        {
            if let Some(o) = program.receive(ctx, inbox) {
                if outputs[v].is_some() {
                    return Err(Error::OutputRewritten { vertex: v, round });
                }
                outputs[v] = Some(o);
                pending -= 1;
            }
        }
        metrics.total_messages += tally.messages;
        metrics.max_message_bits = metrics.max_message_bits.max(tally.max_bits);
        metrics.per_round.push(tally);
    }
    metrics.rounds_used = round;
    Ok(Execution { outputs, metrics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_even_cycle, path};
    use rand::Rng;
    use std::collections::BTreeSet;

    struct OwnId;
    impl VertexProgram for OwnId {
        type Message = ();
        type Output = VertexId;
        fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}
        fn receive(&mut self, ctx: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<VertexId> {
            Some(ctx.id())
        }
    }

    #[test]
    fn output_in_first_round() {
        let g = gen_even_cycle(4).unwrap();
        let cfg = RunConfig::new(ModelMode::congest(), 1, g.n());
        let (out, m) = run(&g, &cfg, |_| OwnId).unwrap().complete(cfg.max_rounds).unwrap();
        assert_eq!(out, vec![0, 1, 2, 3]);
        assert_eq!(m.rounds_used, 1);
        assert_eq!(m.total_messages, 0);
    }

    #[derive(Clone)]
    struct Ids(BTreeSet<VertexId>);
    impl Payload for Ids {
        fn fields(&self) -> Vec<Field> {
            vec![Field::Id; self.0.len()]
        }
    }
    struct Flood {
        known: BTreeSet<VertexId>,
        rounds: usize,
    }
    impl VertexProgram for Flood {
        type Message = Ids;
        type Output = BTreeSet<VertexId>;
        fn init(&mut self, ctx: &mut VertexContext<'_>) -> Option<Self::Output> {
            self.known.insert(ctx.id());
            None
        }
        fn send(&mut self, _: &mut VertexContext<'_>, out: &mut Outbox<'_, Ids>) {
            out.broadcast(Ids(self.known.clone()));
        }
        fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<Ids>]) -> Option<Self::Output> {
            for e in inbox {
                self.known.extend(&e.msg.0);
            }
            (ctx.round() == self.rounds).then(|| self.known.clone())
        }
    }

    #[test]
    fn flooding_reaches_everyone_after_diameter_rounds() {
        let g = path(3, false);
        let cfg = RunConfig::new(ModelMode::Local, 0, 3);
        let (out, m) = run(&g, &cfg, |_| Flood { known: BTreeSet::new(), rounds: 2 })
            .unwrap()
            .complete(cfg.max_rounds)
            .unwrap();
        assert!(out.iter().all(|k| k.len() == 3));
        assert_eq!(m.rounds_used, 2);
        // after one round the endpoints still miss each other
        let (one, _) = run(&g, &cfg, |_| Flood { known: BTreeSet::new(), rounds: 1 })
            .unwrap()
            .complete(cfg.max_rounds)
            .unwrap();
        assert_eq!(one[0].len(), 2);
    }

    #[derive(Clone)]
    struct Wide(usize);
    impl Payload for Wide {
        fn fields(&self) -> Vec<Field> {
            vec![Field::Id; self.0]
        }
    }
    struct SendWide;
    impl VertexProgram for SendWide {
        type Message = Wide;
        type Output = ();
        fn send(&mut self, _: &mut VertexContext<'_>, out: &mut Outbox<'_, Wide>) {
            out.broadcast(Wide(10));
        }
        fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<Wide>]) -> Option<()> {
            Some(())
        }
    }

    #[test]
    fn oversized_message_is_a_congest_violation() {
        let g = path(16, false);
        let cfg = RunConfig::new(ModelMode::congest(), 0, 16);
        let err = run(&g, &cfg, |_| SendWide).unwrap_err();
        assert_eq!(err, Error::CongestViolation { vertex: 0, round: 1, bits: 40, budget: 16 });
        // LOCAL meters but does not enforce
        let local = RunConfig::new(ModelMode::Local, 0, 16);
        let (_, m) = run(&g, &local, |_| SendWide).unwrap().complete(local.max_rounds).unwrap();
        assert_eq!(m.max_message_bits, 40);
        assert_eq!(m.total_messages, 30);
    }

    #[test]
    fn message_sizes() {
        assert_eq!(message_bits(&[Field::Id], 1024), 10);
        assert_eq!(message_bits(&[Field::Id, Field::Id], 1024), 20);
        assert_eq!(message_bits(&[Field::Flag], 1024), 1);
        assert_eq!(message_bits(&[Field::Fixed, Field::Id], 200), 72);
        assert_eq!(message_bits(&[Field::Bounded(5)], 1024), 3);
        assert_eq!(message_bits(&[Field::Blob(3)], 8), 24);
        assert_eq!(id_bits(1), 1);
        assert_eq!(id_bits(2), 1);
        assert_eq!(id_bits(3), 2);
        assert_eq!(id_bits(200), 8);
    }

    #[test]
    fn fixed_point_allowance() {
        let fields = [Field::Fixed, Field::Id];
        assert_eq!(CongestBudget::default().limit(&fields, 200), 32 + 64);
        assert_eq!(CongestBudget::strict(4).limit(&fields, 200), 32);
    }

    #[derive(Clone)]
    struct Blob;
    impl Payload for Blob {
        fn fields(&self) -> Vec<Field> {
            vec![Field::Blob(1)]
        }
    }
    struct SendBlob;
    impl VertexProgram for SendBlob {
        type Message = Blob;
        type Output = ();
        fn send(&mut self, _: &mut VertexContext<'_>, out: &mut Outbox<'_, Blob>) {
            out.broadcast(Blob);
        }
        fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<Blob>]) -> Option<()> {
            Some(())
        }
    }

    #[test]
    fn blobs_are_rejected_under_congest() {
        let g = path(2, false);
        let cfg = RunConfig::new(ModelMode::congest(), 0, 2);
        assert_eq!(run(&g, &cfg, |_| SendBlob).unwrap_err(), Error::UnmeteredPayload { vertex: 0, round: 1 });
    }

    /// Tries to talk to a vertex that is not adjacent.
    struct Reach;
    impl VertexProgram for Reach {
        type Message = ();
        type Output = ();
        fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, ()>) {
            if ctx.id() == 0 {
                out.send(2, ());
            }
        }
        fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<()> {
            Some(())
        }
    }

    #[test]
    fn cannot_address_non_neighbours() {
        let g = path(3, false);
        let cfg = RunConfig::new(ModelMode::Local, 0, 3);
        assert_eq!(run(&g, &cfg, |_| Reach).unwrap_err(), Error::NotANeighbor { vertex: 2, of: 0 });
    }

    /// Each vertex sends the round number; receivers record what they see.
    #[derive(Clone)]
    struct Stamp(usize);
    impl Payload for Stamp {
        fn fields(&self) -> Vec<Field> {
            vec![Field::Count]
        }
    }
    struct Probe {
        sent_before_seen: Vec<(usize, usize)>,
        last_seen: usize,
    }
    impl VertexProgram for Probe {
        type Message = Stamp;
        type Output = Vec<(usize, usize)>;
        fn send(&mut self, ctx: &mut VertexContext<'_>, out: &mut Outbox<'_, Stamp>) {
            self.sent_before_seen.push((ctx.round(), self.last_seen));
            out.broadcast(Stamp(ctx.round()));
        }
        fn receive(&mut self, ctx: &mut VertexContext<'_>, inbox: &[Envelope<Stamp>]) -> Option<Self::Output> {
            for e in inbox {
                assert_eq!(e.msg.0, ctx.round());
                self.last_seen = e.msg.0;
            }
            (ctx.round() == 4).then(|| self.sent_before_seen.clone())
        }
    }

    #[test]
    fn messages_are_never_visible_early() {
        let g = gen_even_cycle(4).unwrap();
        let cfg = RunConfig::new(ModelMode::congest(), 0, 4);
        let (out, _) = run(&g, &cfg, |_| Probe { sent_before_seen: vec![], last_seen: 0 })
            .unwrap()
            .complete(cfg.max_rounds)
            .unwrap();
        for log in out {
            // when sending in round r, the newest stamp seen is from round r - 1
            assert!(log.iter().all(|&(r, seen)| seen == r - 1));
        }
    }

    struct Twice;
    impl VertexProgram for Twice {
        type Message = ();
        type Output = ();
        fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}
        fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<()> {
            Some(())
        }
    }

    #[test]
    fn outputs_are_immutable() {
        let g = path(2, false);
        let cfg = RunConfig::new(ModelMode::Local, 0, 2);
        // vertex 0 outputs at init and again in round 1
        struct Early(bool);
        impl VertexProgram for Early {
            type Message = ();
            type Output = ();
            fn init(&mut self, _: &mut VertexContext<'_>) -> Option<()> {
                self.0.then_some(())
            }
            fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}
            fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<()> {
                Some(())
            }
        }
        let err = run(&g, &cfg, |c| Early(c.id() == 0)).unwrap_err();
        assert_eq!(err, Error::OutputRewritten { vertex: 0, round: 1 });
        assert!(run(&g, &cfg, |_| Twice).is_ok());
    }

    struct Never;
    impl VertexProgram for Never {
        type Message = ();
        type Output = ();
        fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}
        fn receive(&mut self, _: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<()> {
            None
        }
    }

    #[test]
    fn round_cap_reports_non_termination() {
        let g = path(3, false);
        let cfg = RunConfig::new(ModelMode::Local, 0, 3).with_max_rounds(5);
        let exec = run(&g, &cfg, |_| Never).unwrap();
        assert!(!exec.terminated());
        assert_eq!(exec.metrics.rounds_used, 5);
        assert_eq!(exec.complete(5).unwrap_err(), Error::NonTermination { max_rounds: 5, pending: 3 });
    }

    struct Coin;
    impl VertexProgram for Coin {
        type Message = ();
        type Output = u64;
        fn send(&mut self, _: &mut VertexContext<'_>, _: &mut Outbox<'_, ()>) {}
        fn receive(&mut self, ctx: &mut VertexContext<'_>, _: &[Envelope<()>]) -> Option<u64> {
            Some(ctx.rng().gen())
        }
    }

    #[test]
    fn private_streams_are_reproducible_and_distinct() {
        let g = path(4, false);
        let cfg = RunConfig::new(ModelMode::Local, 9, 4);
        let a = run(&g, &cfg, |_| Coin).unwrap().outputs;
        let b = run(&g, &cfg, |_| Coin).unwrap().outputs;
        assert_eq!(a, b);
        let distinct: BTreeSet<_> = a.iter().collect();
        assert_eq!(distinct.len(), 4);
        let other = run(&g, &RunConfig::new(ModelMode::Local, 10, 4), |_| Coin).unwrap().outputs;
        assert_ne!(a, other);
    }

    #[test]
    fn append_renumbers_rounds() {
        let g = path(3, false);
        let cfg = RunConfig::new(ModelMode::Local, 0, 3);
        let (_, mut first) = run(&g, &cfg, |_| Flood { known: BTreeSet::new(), rounds: 2 })
            .unwrap()
            .complete(60)
            .unwrap();
        first = first.named("a");
        let (_, second) = run(&g, &cfg, |_| Flood { known: BTreeSet::new(), rounds: 1 })
            .unwrap()
            .complete(60)
            .unwrap();
        first.append("b", second);
        assert_eq!(first.rounds_used, 3);
        assert_eq!(first.per_round.iter().map(|t| t.round).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(first.phases, vec![PhaseSpan { name: "a".into(), rounds: 2 }, PhaseSpan { name: "b".into(), rounds: 1 }]);
        assert_eq!(first.total_messages, 12);
    }
}
