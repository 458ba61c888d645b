use thiserror::Error;

use crate::hexgrid::HexAddr;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance contains no hexagons")]
    EmptyInstance,
    #[error("hexagon adjacency graph is not connected")]
    DisconnectedSystem,
    #[error("hexagons {0} and {1} share a vertex but no edge")]
    VertexOnlyContact(HexAddr, HexAddr),
    #[error("system encloses {0} non-hexagonal interior face(s)")]
    NonHexagonalFace(usize),
    #[error("hexagon {0} is not part of the system")]
    UnknownHexagon(HexAddr),
    #[error("system is not catacondensed")]
    NotCatacondensed,
    #[error("system is not kinky (contains a linearly connected hexagon)")]
    NotKinky,
    #[error("root {0} is not a leaf of the inner dual")]
    RootNotLeaf(HexAddr),
    #[error("hexagons {0} and {1} are not adjacent")]
    HexagonsNotAdjacent(usize, usize),
    #[error("system has no perfect matching")]
    NoPerfectMatching,
    #[error("label {0} is carried by more than one matching")]
    DuplicateLabel(String),
    #[error("vertex {0} is not present in the graph")]
    VertexNotPresent(String),
    #[error("{0} hexagons exceed the supported maximum of {max}", max = crate::cubes::MAX_BITS)]
    TooManyHexagons(usize),
    #[error("turn sequence places two hexagons in contact at step {0}")]
    SelfOverlap(usize),
    #[error("invalid turn letter {0:?} (expected L, R or S)")]
    InvalidTurn(char),
    #[error("bit strings of different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
