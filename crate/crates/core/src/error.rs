use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{n_qubits} qubits exceeds the configured cap of {cap}")]
    DimensionCap { n_qubits: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    NotUnitTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("direction must be a unit 3-vector (norm {0})")]
    InvalidDirection(f64),

    #[error("matrix is not a proper rotation: {0}")]
    InvalidRotation(String),

    #[error("qubit index {index} out of range 1..={n_qubits}")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit index {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("at least one qubit must be kept")]
    EmptyKeep,

    #[error("stabilizer reduction supports at most {max} kept qubits, got {got}")]
    KeepTooLarge { got: usize, max: usize },

    #[error("expected {expected} rotations, got {found}")]
    RotationCountMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("state is not permutation symmetric")]
    NotSymmetric,

    #[error("state is fully separable")]
    Separable,

    #[error("outcome {outcome} has vanishing probability but derivative {derivative:e}")]
    SingularOutcome { outcome: usize, derivative: f64 },

    #[error("Pauli product has imaginary phase")]
    ImaginaryPhase,
}

pub type Result<T> = std::result::Result<T, Error>;
