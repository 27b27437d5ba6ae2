use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // growth parameters
    #[error("branching has {branching} entries but segmenting has {segmenting}")]
    GrowthLengthMismatch { branching: usize, segmenting: usize },
    #[error("growth parameter at level {level} must be at least 1")]
    ZeroGrowthParameter { level: usize },
    #[error("level {level}: branching {branching} with a single segment would create parallel edges")]
    ParallelEdges { level: usize, branching: usize },
    #[error("growth spec exceeds the supported size ({limit} edges)")]
    GraphTooLarge { limit: usize },

    // layered graph validation
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("duplicate node id `{0}`")]
    DuplicateNode(NodeId),
    #[error("unknown node `{0}`")]
    UnknownNode(NodeId),
    #[error("self loop at `{0}`")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge {a}-{b} lies inside layer {layer}")]
    IntraLayerEdge { a: NodeId, b: NodeId, layer: usize },
    #[error("edge {a}-{b} skips from layer {from} to layer {to}")]
    SkippedLayer {
        a: NodeId,
        b: NodeId,
        from: usize,
        to: usize,
    },
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("end layer {layer} has {size} nodes, expected exactly one")]
    EndLayerNotSingleton { layer: usize, size: usize },
    #[error("node `{0}` is not connected to the left end")]
    Disconnected(NodeId),
    #[error("node `{node}` declared in layer {declared} but lies at distance {distance} from the left end")]
    LayerMismatch {
        node: NodeId,
        declared: usize,
        distance: usize,
    },
    #[error("internal construction error: {0}")]
    Internal(String),

    // chains
    #[error("chain must have at least one site")]
    EmptyChain,
    #[error("chain has {diagonal} diagonal entries and {couplings} couplings; expected exactly one more diagonal entry")]
    ChainLengthMismatch { diagonal: usize, couplings: usize },
    #[error("coupling {index} is {value}; couplings must be strictly positive")]
    NonPositiveCoupling { index: usize, value: f64 },
    #[error("non-finite value {value} in {what}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("invalid chain size {0}")]
    InvalidSize(usize),
    #[error("eigensolver failed to converge at index {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    // hamiltonians
    #[error("chain has {chain_sites} sites but graph has {graph_sites} layers")]
    SizeMismatch {
        chain_sites: usize,
        graph_sites: usize,
    },
    #[error("malformed graph at `{node}`: {detail}")]
    MalformedGraph { node: NodeId, detail: String },
    #[error("node index {index} out of range for a graph with {nodes} nodes")]
    IndexOutOfRange { index: usize, nodes: usize },
    #[error("duplicate hamiltonian entry ({0}, {1})")]
    DuplicateEntry(NodeId, NodeId),
    #[error("({x}, {y}) is not an edge")]
    NotAnEdge { x: NodeId, y: NodeId },
    #[error("compressed operator has entry {value} at ({row}, {col}) outside the tridiagonal band")]
    NonTridiagonal { row: usize, col: usize, value: f64 },
    #[error("compressed operator is not symmetric at ({row}, {col}): {upper} vs {lower}")]
    AsymmetricCompression {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },
    #[error("hamiltonian is not self-adjoint in the weighted inner product at ({x}, {y}), defect {defect:e}")]
    NotSelfAdjoint { x: NodeId, y: NodeId, defect: f64 },

    // misc
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
