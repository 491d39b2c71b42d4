//! Rewriting of mid-level gates into Clifford+T primitives.
//!
//! Every relative-phase Toffoli is lowered as two halves. For the two-control
//! [`Gate::XDelta`] the first half `O2` touches only the phase control and the
//! target, so it commutes past neighbouring gates of a V-chain; the second
//! half `O3` touches all three qubits. Synthesizers use the halves directly
//! to group and merge the `O2` layers.

use super::{cx, Circuit, Gate};

/// Sub-circuit family used for mid-level gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerStyle {
    /// Minimal CNOT count: 3 CX, 4 T and 2 H per two-control Toffoli.
    Standard,
    /// T gates spread over parallel qubits at the price of one extra CX.
    TDepth,
}

/// First half of a two-control relative-phase Toffoli.
pub fn xdelta_o2(c1: usize, t: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![Gate::H(t), Gate::Tdg(t), cx(c1, t), Gate::T(t)],
        LowerStyle::TDepth => vec![Gate::H(t), cx(t, c1), Gate::T(c1), Gate::Tdg(t)],
    }
}

/// Second half of a two-control relative-phase Toffoli.
pub fn xdelta_o3(c1: usize, c2: usize, t: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![cx(c2, t), Gate::Tdg(t), cx(c1, t), Gate::T(t), Gate::H(t)],
        LowerStyle::TDepth => vec![
            cx(c2, t),
            cx(c2, c1),
            Gate::Tdg(c1),
            Gate::T(t),
            cx(t, c1),
            Gate::H(t),
        ],
    }
}

/// Lowered doubly controlled iZ (no inverse applied).
pub fn iz_lowered(c1: usize, c2: usize, t: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![
            Gate::Tdg(t),
            cx(c1, t),
            Gate::T(t),
            cx(c2, t),
            Gate::Tdg(t),
            cx(c1, t),
            Gate::T(t),
            cx(c2, t),
        ],
        LowerStyle::TDepth => vec![
            cx(t, c1),
            Gate::T(c1),
            Gate::Tdg(t),
            cx(c2, c1),
            cx(c2, t),
            Gate::Tdg(c1),
            Gate::T(t),
            cx(t, c1),
            cx(c2, t),
        ],
    }
}

/// Leading part of the three-control Toffoli: it touches only the pair
/// `(c0, c1)` and the target.
pub fn xdelta3_p_part(c0: usize, c1: usize, t: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![
            Gate::H(t),
            Gate::Tdg(t),
            cx(c0, t),
            Gate::T(t),
            Gate::H(t),
            Gate::Tdg(t),
            cx(c1, t),
            Gate::T(t),
        ],
        LowerStyle::TDepth => vec![
            Gate::H(t),
            Gate::Tdg(t),
            cx(c0, t),
            Gate::T(t),
            cx(c0, t),
            Gate::H(t),
            Gate::Tdg(t),
            cx(c1, t),
            Gate::T(t),
            cx(c1, t),
        ],
    }
}

/// Trailing part of the three-control Toffoli.
pub fn xdelta3_r_part(c0: usize, c1: usize, c2: usize, t: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![
            cx(c2, t),
            Gate::Tdg(t),
            cx(c1, t),
            Gate::T(t),
            cx(c2, t),
            Gate::H(t),
            Gate::Tdg(t),
            cx(c0, t),
            Gate::T(t),
            Gate::H(t),
        ],
        LowerStyle::TDepth => vec![
            cx(c2, t),
            cx(t, c1),
            Gate::Tdg(c1),
            Gate::T(t),
            cx(t, c1),
            cx(c2, t),
            Gate::H(t),
            cx(t, c0),
            Gate::Tdg(c0),
            Gate::T(t),
            cx(t, c0),
            Gate::H(t),
        ],
    }
}

/// Inverse of a gate sequence: reversed, with every gate inverted.
pub fn daggered(gates: Vec<Gate>) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Lowered form of one gate. Primitives are returned unchanged.
pub fn lower_gate(g: &Gate, style: LowerStyle) -> Vec<Gate> {
    match *g {
        Gate::Z(q) => vec![Gate::S(q), Gate::S(q)],
        Gate::CZ(a, b) => vec![Gate::H(b), cx(a, b), Gate::H(b)],
        Gate::Swap(a, b) => vec![cx(a, b), cx(b, a), cx(a, b)],
        Gate::XDelta { c1, c2, t, inverse } => {
            let mut v = xdelta_o2(c1, t, style);
            v.extend(xdelta_o3(c1, c2, t, style));
            if inverse {
                daggered(v)
            } else {
                v
            }
        }
        Gate::XDelta3 {
            c0,
            c1,
            c2,
            t,
            inverse,
        } => {
            let mut v = xdelta3_p_part(c0, c1, t, style);
            v.extend(xdelta3_r_part(c0, c1, c2, t, style));
            if inverse {
                daggered(v)
            } else {
                v
            }
        }
        Gate::IZ { c1, c2, t, inverse } => {
            let v = iz_lowered(c1, c2, t, style);
            if inverse {
                daggered(v)
            } else {
                v
            }
        }
        g => vec![g],
    }
}

/// Replaces every mid-level gate by its Clifford+T sub-circuit.
pub fn lower(circuit: &Circuit, style: LowerStyle) -> Circuit {
    let mut out = Circuit::new(circuit.num_qubits());
    for g in circuit.gates() {
        out.extend(lower_gate(g, style));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::counts;

    fn xd() -> Gate {
        Gate::XDelta {
            c1: 0,
            c2: 1,
            t: 2,
            inverse: false,
        }
    }

    #[test]
    fn standard_xdelta_costs_three_cnots() {
        let c = lower(
            &Circuit::from_gates(3, vec![xd()]).unwrap(),
            LowerStyle::Standard,
        );
        let k = counts(&c).unwrap();
        assert_eq!((k.cnot, k.t, k.h), (3, 4, 2));
    }

    #[test]
    fn tdepth_xdelta_costs_four_cnots() {
        let c = lower(
            &Circuit::from_gates(3, vec![xd()]).unwrap(),
            LowerStyle::TDepth,
        );
        let k = counts(&c).unwrap();
        assert_eq!((k.cnot, k.t, k.h), (4, 4, 2));
        // The two T layers of the second half share the control, so ASAP
        // layering gives three T layers for an isolated gate.
        assert_eq!(k.depth(crate::circuit::GateClass::T), 3);
    }

    #[test]
    fn empty_circuit_lowers_to_empty() {
        assert!(lower(&Circuit::new(2), LowerStyle::Standard).is_empty());
    }

    #[test]
    fn lowered_output_has_only_primitives() {
        let c = Circuit::from_gates(
            4,
            vec![
                xd(),
                Gate::IZ {
                    c1: 0,
                    c2: 1,
                    t: 3,
                    inverse: true,
                },
                Gate::XDelta3 {
                    c0: 0,
                    c1: 1,
                    c2: 2,
                    t: 3,
                    inverse: false,
                },
                Gate::CZ(0, 3),
                Gate::Swap(1, 2),
                Gate::Z(0),
            ],
        )
        .unwrap();
        for style in [LowerStyle::Standard, LowerStyle::TDepth] {
            assert!(lower(&c, style).is_lowered());
        }
    }
}
