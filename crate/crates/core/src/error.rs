use thiserror::Error;

use crate::young::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("edge count {e} out of range 0..={max}")]
    EdgeCountOutOfRange { e: usize, max: usize },

    #[error("left part ({left}) must not exceed right part ({right})")]
    LeftLargerThanRight { left: usize, right: usize },

    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),

    #[error("vertices lie in different parts of the bipartition")]
    DifferentParts,

    #[error("graph is not threshold")]
    NotThreshold,

    #[error("bipartite graph is not threshold bipartite")]
    NotBipartiteThreshold,

    #[error("invalid clique/independent split: {0}")]
    InvalidSplit(String),

    #[error("{count} edges is too many for subset enumeration (limit {max})")]
    TooManyEdges { count: usize, max: usize },

    #[error("count overflowed 128-bit accumulator")]
    Overflow,

    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagrams live in different frames ({0}x{1} vs {2}x{3})")]
    FrameMismatch(usize, usize, usize, usize),

    #[error("{0} is not an out-corner")]
    NotOutCorner(Cell),

    #[error("{0} is not an in-corner")]
    NotInCorner(Cell),

    #[error("out-block move needs s(P) < s(P'), got {0} >= {1}")]
    NotFurtherOut(usize, usize),

    #[error("out-corner {0} and in-corner {1} share a row or column")]
    SharedLine(Cell, Cell),

    #[error("{0} is not a box of the diagram")]
    BoxNotInDiagram(Cell),

    #[error("illegal transpose at {at}: row {row} {reason}")]
    IllegalTranspose {
        at: Cell,
        row: usize,
        reason: String,
    },

    #[error("diagram is already the lex diagram")]
    AlreadyLex,

    #[error("diagram admits an out-block move")]
    HasOutBlockMove,

    #[error("frame must satisfy rows <= columns, got {0}x{1}")]
    FrameNotNormalized(usize, usize),

    #[error("no legal lex-decreasing transpose at {s} or {s_alt} for diagram {diagram}")]
    TheoryGap {
        diagram: String,
        s: Cell,
        s_alt: Cell,
    },

    #[error("trace replay diverged at step {0}: {1}")]
    ReplayMismatch(usize, String),

    #[error("universe of {requested} instances exceeds budget of {budget}")]
    BudgetExceeded { requested: String, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
