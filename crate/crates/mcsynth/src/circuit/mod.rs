//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a register of
//! `num_qubits` qubits. Gates come in two tiers:
//!
//! * primitive Clifford+T elements, arbitrary-angle `Rx`/`Rz` rotations and
//!   `CX`, which make up a *lowered* circuit;
//! * convenience and mid-level gates (`Z`, `CZ`, `SWAP`, the relative-phase
//!   Toffolis `XDelta`/`XDelta3` and the doubly controlled `iZ`), which
//!   [`lower`] rewrites into primitives.
//!
//! Qubit `0` is the most significant bit of a computational basis index.

mod counts;
mod lower;
mod peephole;
mod qasm;

pub use counts::{counts, critical_path_depth, GateClass, GateCounts};
pub use lower::{
    daggered, iz_lowered, lower, lower_gate, xdelta3_p_part, xdelta3_r_part, xdelta_o2, xdelta_o3,
    LowerStyle,
};
pub use peephole::{cancel_adjacent_inverses, is_cx, is_h};
pub use qasm::{export_qasm, format_angle, import_qasm};

use crate::error::{Error, Result};

/// One circuit element.
///
/// Rotation angles are stored exactly as given, without modular reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// Hadamard.
    H(usize),
    /// T = diag(1, e^{iπ/4}).
    T(usize),
    /// T†.
    Tdg(usize),
    /// S = diag(1, i).
    S(usize),
    /// S†.
    Sdg(usize),
    /// Pauli X.
    X(usize),
    /// Pauli Z (lowered to two S gates).
    Z(usize),
    /// Rx(θ) = exp(−iθX/2).
    Rx(usize, f64),
    /// Rz(θ) = exp(−iθZ/2).
    Rz(usize, f64),
    /// Controlled NOT.
    CX {
        /// Control qubit.
        control: usize,
        /// Target qubit.
        target: usize,
    },
    /// Controlled Z (symmetric). Lowered as H·CX·H on the second qubit.
    CZ(usize, usize),
    /// Qubit exchange. Lowered as three CX.
    Swap(usize, usize),
    /// Hermitian relative-phase Toffoli.
    ///
    /// Its matrix is CS(c1, c2) · CZ(c2, t) · CCX(c1, c2 → t): a Toffoli
    /// followed by diagonal phases on the control subspace. `c1` is the
    /// control that carries the S phase. The inverse flag only selects the
    /// gate order of the lowered sub-circuit.
    XDelta {
        /// Control carrying the S phase.
        c1: usize,
        /// Plain control.
        c2: usize,
        /// Target.
        t: usize,
        /// Emit the reversed, daggered lowering.
        inverse: bool,
    },
    /// Three-controlled relative-phase Toffoli.
    ///
    /// Its matrix is D · CCCX(c0, c1, c2 → t) with D diagonal: phase `i` on
    /// |c0 c1 t c2⟩ = |0101⟩, `−i` on |0111⟩ and `−1` on |1101⟩. The
    /// inverse flag selects the daggered matrix.
    XDelta3 {
        /// First control of the pair.
        c0: usize,
        /// Second control of the pair.
        c1: usize,
        /// Plain control.
        c2: usize,
        /// Target.
        t: usize,
        /// Use the inverse gate.
        inverse: bool,
    },
    /// Doubly controlled iZ: phase `i` on |c1 c2 t⟩ = |110⟩ and `−i` on
    /// |111⟩ (the inverse flag conjugates both phases).
    IZ {
        /// First control.
        c1: usize,
        /// Second control.
        c2: usize,
        /// Target.
        t: usize,
        /// Use the inverse gate.
        inverse: bool,
    },
}

impl Gate {
    /// Qubits touched by the gate, in field order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::X(q)
            | Gate::Z(q)
            | Gate::Rx(q, _)
            | Gate::Rz(q, _) => vec![q],
            Gate::CX { control, target } => vec![control, target],
            Gate::CZ(a, b) | Gate::Swap(a, b) => vec![a, b],
            Gate::XDelta { c1, c2, t, .. } | Gate::IZ { c1, c2, t, .. } => vec![c1, c2, t],
            Gate::XDelta3 { c0, c1, c2, t, .. } => vec![c0, c1, c2, t],
        }
    }

    /// Short mnemonic used in error messages and QASM.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::X(_) => "x",
            Gate::Z(_) => "z",
            Gate::Rx(..) => "rx",
            Gate::Rz(..) => "rz",
            Gate::CX { .. } => "cx",
            Gate::CZ(..) => "cz",
            Gate::Swap(..) => "swap",
            Gate::XDelta { .. } => "xdelta",
            Gate::XDelta3 { .. } => "xdelta3",
            Gate::IZ { .. } => "iz",
        }
    }

    /// True for gates that [`lower`] must rewrite.
    pub fn is_mid_level(&self) -> bool {
        matches!(
            self,
            Gate::Z(_)
                | Gate::CZ(..)
                | Gate::Swap(..)
                | Gate::XDelta { .. }
                | Gate::XDelta3 { .. }
                | Gate::IZ { .. }
        )
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::Rx(q, a) => Gate::Rx(q, -a),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            Gate::XDelta { c1, c2, t, inverse } => Gate::XDelta {
                c1,
                c2,
                t,
                inverse: !inverse,
            },
            Gate::XDelta3 {
                c0,
                c1,
                c2,
                t,
                inverse,
            } => Gate::XDelta3 {
                c0,
                c1,
                c2,
                t,
                inverse: !inverse,
            },
            Gate::IZ { c1, c2, t, inverse } => Gate::IZ {
                c1,
                c2,
                t,
                inverse: !inverse,
            },
            g => g,
        }
    }

    /// Class used for counting and per-class depth, `None` for mid-level gates.
    pub fn class(&self) -> Option<GateClass> {
        match self {
            Gate::H(_) => Some(GateClass::H),
            Gate::T(_) | Gate::Tdg(_) => Some(GateClass::T),
            Gate::S(_) | Gate::Sdg(_) => Some(GateClass::S),
            Gate::X(_) => Some(GateClass::X),
            Gate::Rx(..) | Gate::Rz(..) => Some(GateClass::Rotation),
            Gate::CX { .. } => Some(GateClass::Cnot),
            _ => None,
        }
    }

    /// Returns the gate with every qubit index passed through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::T(q) => Gate::T(f(q)),
            Gate::Tdg(q) => Gate::Tdg(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::Rx(q, a) => Gate::Rx(f(q), a),
            Gate::Rz(q, a) => Gate::Rz(f(q), a),
            Gate::CX { control, target } => Gate::CX {
                control: f(control),
                target: f(target),
            },
            Gate::CZ(a, b) => Gate::CZ(f(a), f(b)),
            Gate::Swap(a, b) => Gate::Swap(f(a), f(b)),
            Gate::XDelta { c1, c2, t, inverse } => Gate::XDelta {
                c1: f(c1),
                c2: f(c2),
                t: f(t),
                inverse,
            },
            Gate::XDelta3 {
                c0,
                c1,
                c2,
                t,
                inverse,
            } => Gate::XDelta3 {
                c0: f(c0),
                c1: f(c1),
                c2: f(c2),
                t: f(t),
                inverse,
            },
            Gate::IZ { c1, c2, t, inverse } => Gate::IZ {
                c1: f(c1),
                c2: f(c2),
                t: f(t),
                inverse,
            },
        }
    }
}

/// Shorthand constructor for a CX gate.
pub fn cx(control: usize, target: usize) -> Gate {
    Gate::CX { control, target }
}

/// Ordered gate list over an indexed qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit and checks that it is well formed.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Self { num_qubits, gates };
        c.validate()?;
        Ok(c)
    }

    /// Register size.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Gates in time order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Consumes the circuit and returns its gates.
    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    /// Number of gates.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    /// True when the circuit has no gates.
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate without validation; see [`Circuit::validate`].
    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Appends several gates without validation.
    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        self.gates.extend(gates);
    }

    /// Checks qubit ranges, duplicate qubits and finite angles.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            let qs = g.qubits();
            for (j, &q) in qs.iter().enumerate() {
                if q >= self.num_qubits {
                    return Err(Error::QubitOutOfRange {
                        gate: i,
                        qubit: q,
                        num_qubits: self.num_qubits,
                    });
                }
                if qs[..j].contains(&q) {
                    return Err(Error::DuplicateQubit { gate: i, qubit: q });
                }
            }
            if let Gate::Rx(_, a) | Gate::Rz(_, a) = g {
                if !a.is_finite() {
                    return Err(Error::NonFiniteAngle { gate: i });
                }
            }
        }
        Ok(())
    }

    /// True when every gate is a primitive.
    pub fn is_lowered(&self) -> bool {
        self.gates.iter().all(|g| !g.is_mid_level())
    }

    /// Reverses the gate order and inverts each gate.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// `self` followed by `other`; the register is the larger of the two.
    pub fn compose(&self, other: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Circuit {
            num_qubits: self.num_qubits.max(other.num_qubits),
            gates,
        }
    }

    /// Indices of two-qubit primitives acting on non-adjacent qubits.
    ///
    /// Mid-level gates are reported too when any pair of their qubits is not
    /// adjacent; the function is meant for lowered circuits.
    pub fn validate_lnn(&self) -> Vec<LnnViolation> {
        let mut out = Vec::new();
        for (i, g) in self.gates.iter().enumerate() {
            let qs = g.qubits();
            if qs.len() < 2 {
                continue;
            }
            let lo = *qs.iter().min().expect("non-empty");
            let hi = *qs.iter().max().expect("non-empty");
            if hi - lo != qs.len() - 1 {
                out.push(LnnViolation {
                    gate_index: i,
                    qubits: qs,
                });
            }
        }
        out
    }
}

/// A gate whose qubits are not nearest neighbours on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnnViolation {
    /// Position of the gate in the circuit.
    pub gate_index: usize,
    /// Qubits of the gate.
    pub qubits: Vec<usize>,
}

/// Free-function form of [`Circuit::validate_lnn`].
pub fn validate_lnn(circuit: &Circuit) -> Vec<LnnViolation> {
    circuit.validate_lnn()
}
