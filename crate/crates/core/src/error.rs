use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {n} out of range (expected 1..={max})")]
    DimensionOutOfRange { n: usize, max: usize },

    #[error("need at least {min} qubits, found {n}")]
    TooFewQubits { n: usize, min: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular over GF(2)")]
    Singular,

    #[error("row {row} has bits set beyond column {n}")]
    RowTooWide { row: usize, n: usize },

    #[error("control and target must differ (both are qubit {0})")]
    SameControlTarget(usize),

    #[error("qubit label {label} out of range for n = {n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("n = {n} exceeds the oracle limit of {max}")]
    TooLargeForOracle { n: usize, max: usize },

    #[error("linkability requires v(M) = 1, found v(M) = {0}")]
    NotVertexConnected(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle must list at least two distinct qubits")]
    CycleTooShort,

    #[error("qubit {0} appears more than once in the cycle")]
    DuplicateQubit(usize),

    #[error("directed graph contains a cycle")]
    CyclicGraph,

    #[error("size table is for n = {table}, matrix has n = {matrix}")]
    TableMismatch { table: usize, matrix: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("bad cache file: {0}")]
    BadCache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
