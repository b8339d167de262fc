use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("edge ({0}, {1}) references a node outside the graph")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("not a descent profile")]
    NotDescent,
    #[error("iteration overflow after {0} iterations")]
    IterationOverflow(usize),
    #[error("direction {index} out of range for {neighbors} neighbours")]
    DirectionOutOfRange { index: usize, neighbors: usize },
    #[error("arrow bit {bit} at pixel {pixel} points outside the image")]
    InconsistentMask { pixel: usize, bit: u8 },
    #[error("{width}x{height} image needs {expected} values, got {actual}")]
    SizeMismatch {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },
    #[error("inputs have different geometry")]
    GeometryMismatch,
    #[error("no seeds")]
    NoSeeds,
    #[error("seed ({x}, {y}) is outside the image")]
    SeedOutOfBounds { x: usize, y: usize },
    #[error("seed label must be positive")]
    ZeroSeedLabel,
    #[error("ceiling is below the relief at pixel {0}")]
    CeilingBelowRelief(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
