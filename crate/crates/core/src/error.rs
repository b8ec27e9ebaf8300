use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} is not weakly decreasing: {parts:?}")]
    NotDecreasing { what: &'static str, parts: Vec<usize> },
    #[error("inner partition is not contained in the outer one at row {row} ({inner} > {outer})")]
    NotContained { row: usize, inner: usize, outer: usize },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of {rows}x{cols} needs {expected} entries, got {got}")]
    DimensionMismatch { rows: usize, cols: usize, expected: usize, got: usize },
    #[error("shifted power of order {needed} needs at least {needed} y-values, got {got}")]
    InsufficientYSequence { needed: usize, got: usize },

    #[error("shape has {cells} cells, above the exhaustive search bound {bound}")]
    SearchBoundExceeded { cells: usize, bound: usize },
    #[error("cells {0} do not form a border strip")]
    NotBorderStrip(String),
    #[error("strips do not partition the diagram: {0}")]
    NotADecomposition(String),

    #[error("sequences have lengths {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("sequence {which} must be strictly {expected}")]
    NotMonotone { which: &'static str, expected: &'static str },
    #[error("a_{i} = b_{j}")]
    CollisionAB { i: usize, j: usize },
    #[error("a_{i} = b_{j} - 1")]
    CollisionShifted { i: usize, j: usize },
    #[error("anti-diagonal condition fails at i = {i}: {condition}")]
    AntiDiagonalViolation { i: usize, condition: String },
    #[error("b_{j} must be a positive integer")]
    NotPositiveInteger { j: usize },
    #[error("a_{i} must be a positive integer")]
    NotPositiveIntegerA { i: usize },
    #[error("matrix has zero entries; the closed formula does not apply")]
    HasZeroEntries,
    #[error("matrix is reducible (a_{i} fails the irreducibility bound)")]
    NotIrreducible { i: usize },
    #[error("x-values are not pairwise distinct")]
    RepeatedX,
    #[error("partition has {len} parts but only {n} variables")]
    TooManyParts { len: usize, n: usize },
    #[error("direction word has length {got}, expected {expected}")]
    WordLength { expected: usize, got: usize },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("cutting strip reconstruction produced an invalid outside decomposition: {0}")]
    ReconstructionInvalid(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}
