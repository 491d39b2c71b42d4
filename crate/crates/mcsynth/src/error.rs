//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by circuit services, synthesizers and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gate references a qubit outside the register.
    #[error("gate {gate} references qubit {qubit} but the register has {num_qubits} qubits")]
    QubitOutOfRange {
        /// Index of the offending gate.
        gate: usize,
        /// Offending qubit index.
        qubit: usize,
        /// Register size.
        num_qubits: usize,
    },
    /// A gate lists the same qubit twice.
    #[error("gate {gate} uses qubit {qubit} more than once")]
    DuplicateQubit {
        /// Index of the offending gate.
        gate: usize,
        /// Repeated qubit.
        qubit: usize,
    },
    /// A service that needs a lowered circuit received a mid-level gate.
    #[error("gate {gate} ({name}) is a mid-level gate; lower the circuit first")]
    MidLevelGate {
        /// Index of the offending gate.
        gate: usize,
        /// Gate mnemonic.
        name: &'static str,
    },
    /// A rotation angle is NaN or infinite.
    #[error("gate {gate} has a non-finite angle")]
    NonFiniteAngle {
        /// Index of the offending gate.
        gate: usize,
    },
    /// A vector expected to be unit-norm is not.
    #[error("vector ({x}, {y}, {z}) is not unit-norm")]
    NotUnit {
        /// x component.
        x: f64,
        /// y component.
        y: f64,
        /// z component.
        z: f64,
    },
    /// Two antipodal vectors have no canonical bisector.
    #[error("antipodal vectors have no canonical bisector")]
    DegeneratePair,
    /// The gate specification is inconsistent.
    #[error("invalid gate specification: {0}")]
    InvalidSpec(String),
    /// The qubit placement is inconsistent with the specification.
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    /// The control mask breaks the adjacency rule of a chain.
    #[error("control mask violates the chain adjacency rule: {0}")]
    ConstraintViolation(String),
    /// A dense operation was requested on too many qubits.
    #[error("{requested} qubits exceeds the limit of {limit} for this operation")]
    TooManyQubits {
        /// Requested size.
        requested: usize,
        /// Supported maximum.
        limit: usize,
    },
    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// Phase alignment found no usable anchor entry.
    #[error("no entry is large enough to anchor the global phase")]
    DegenerateNormalization,
    /// QASM text could not be parsed.
    #[error("qasm parse error on line {line}: {message}")]
    Qasm {
        /// One-based line number.
        line: usize,
        /// Description of the problem.
        message: String,
    },
    /// A cost formula was evaluated outside its validity range.
    #[error("formula {id} is not valid for {args}")]
    OutOfValidity {
        /// Formula identifier.
        id: String,
        /// Rendered argument tuple.
        args: String,
    },
    /// No formula with this identifier is registered.
    #[error("unknown formula {0}")]
    UnknownFormula(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
