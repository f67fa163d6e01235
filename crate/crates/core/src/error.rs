use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: VertexId, v: VertexId },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expected a directed graph")]
    ExpectedDirected,
    #[error("expected an undirected graph")]
    ExpectedUndirected,
    #[error("vertex {0} is already in the set")]
    AlreadyInSet(VertexId),
    #[error("vertex {0} is not in the set")]
    NotInSet(VertexId),
    #[error("vertex {vertex} is not a neighbour of {of}")]
    NotANeighbor { vertex: VertexId, of: VertexId },
    #[error("CONGEST violation: vertex {vertex} sent {bits} bits in round {round} (budget {budget})")]
    CongestViolation { vertex: VertexId, round: usize, bits: u64, budget: u64 },
    #[error("opaque payload from vertex {vertex} in round {round} cannot be metered under CONGEST")]
    UnmeteredPayload { vertex: VertexId, round: usize },
    #[error("vertex {vertex} rewrote its output in round {round}")]
    OutputRewritten { vertex: VertexId, round: usize },
    #[error("no termination within {max_rounds} rounds; {pending} vertices without output")]
    NonTermination { max_rounds: usize, pending: usize },
    #[error("odd cycle inside a cluster: edge {u}-{v} has both endpoints on one side")]
    OddCycle { u: VertexId, v: VertexId },
    #[error("graph has {n} vertices, exhaustive cap is {cap}")]
    OverCap { n: usize, cap: usize },
}
