use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("edge {edge} has N = {n_points}, at least 2 lattice steps are required")]
    TooFewPoints { edge: EdgeId, n_points: usize },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edges {0} and {1} join the same pair of vertices")]
    ParallelEdges(EdgeId, EdgeId),
    #[error("vertex ids must be dense 1..{max}, vertex {missing} is missing")]
    NonDenseVertices { max: usize, missing: usize },
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} has degree > 1 and cannot be a boundary vertex")]
    BoundaryNotLeaf(VertexId),
    #[error("boundary role of vertex {0} given twice")]
    DuplicateBoundary(VertexId),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },

    #[error("no nodal mass given for internal vertex {0}")]
    MissingMass(VertexId),
    #[error("nodal mass {mass} at vertex {vertex} is ill-conditioned (|1 + m| < 1e-9)")]
    IllConditionedMass { vertex: VertexId, mass: f64 },
    #[error("vertex {0} is not an internal vertex, it carries no nodal mass")]
    MassOnBoundary(VertexId),
    #[error("no control signal for control vertex {0}")]
    MissingControl(VertexId),
    #[error("vertex {0} is not a control vertex")]
    NotAControlVertex(VertexId),
    #[error("control for vertex {0} given twice")]
    DuplicateControl(VertexId),
    #[error("horizon must be nonnegative, got {0}")]
    NegativeHorizon(i64),
    #[error("time {t} outside the admissible range {min}..={max}")]
    TimeOutOfRange { t: i64, min: i64, max: i64 },
    #[error("constrained vertex {0} has a neighbor site that is itself constrained")]
    ConstrainedNeighbor(VertexId),
    #[error("layer shape does not match the graph")]
    LayerShape,

    #[error("site {j} outside 0..={n}")]
    SiteOutOfRange { j: usize, n: usize },
    #[error("horizon {horizon} outside the validity window t < {bound}")]
    WindowExceeded { horizon: usize, bound: usize },
    #[error("expected three edge lengths, each at least 2, got {0:?}")]
    InvalidGeometry(Vec<usize>),

    #[error("control time {time} is below the minimum {minimum} for this geometry")]
    TimeTooShort { time: usize, minimum: usize },
    #[error("target for edge {edge} has {got} values, expected {expected}")]
    TargetLength { edge: usize, got: usize, expected: usize },
    #[error("target values at the center disagree: {0:?}")]
    DiscontinuousTarget([f64; 3]),
    #[error("control residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("star order must be at least 2, got {0}")]
    InvalidStarOrder(usize),
    #[error("edge length {0} is too short to separate incident and scattered pulses")]
    PulsesOverlap(usize),

    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Format(String),
}
