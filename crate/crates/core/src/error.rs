use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Hilbert space factors {0:?}: every factor must be >= 1")]
    InvalidDims(Vec<usize>),

    #[error("state is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("operator is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("register {register} out of range for {count} factors")]
    RegisterOutOfRange { register: usize, count: usize },

    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rotation angle undefined for k = {k} marked out of N = {n}")]
    UndefinedRotation { k: usize, n: usize },

    #[error("degenerate vertex class: k = {k} of n = {n} leaves an empty class")]
    DegenerateClass { k: usize, n: usize },

    #[error("counting requires n1 = n2 and k1 = k2, got n = ({n1}, {n2}), k = ({k1}, {k2})")]
    ScopeViolation {
        n1: usize,
        n2: usize,
        k1: usize,
        k2: usize,
    },

    #[error("graph is not a valid walk substrate: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
