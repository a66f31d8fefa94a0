use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("register `{0}` is already declared")]
    DuplicateRegister(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("qubit index {index} out of range for {width} qubits")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("gate `{0}` uses the same qubit twice")]
    RepeatedQubit(&'static str),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("register declarations do not match")]
    RegisterMismatch,
    #[error("gate {index} (`{name}`) does not map basis states to basis states")]
    NonPhaseClassicalGate { index: usize, name: &'static str },
    #[error("{qubits} qubits exceed the simulation cap of {cap}")]
    QubitCapExceeded { qubits: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("macro gate `{0}` present, expand macros first")]
    UnexpandedMacro(&'static str),
    #[error("parameter domain violation: {0}")]
    Domain(String),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("qasm line {line}: {message}")]
    Qasm { line: usize, message: String },
}
