//! Gate tallies and per-class depth by greedy ASAP layering.

use std::collections::BTreeMap;
use std::fmt;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// Gate classes used for counting and depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateClass {
    /// CX gates.
    Cnot,
    /// T and T†.
    T,
    /// Hadamard.
    H,
    /// S and S†.
    S,
    /// Arbitrary-angle Rx and Rz.
    Rotation,
    /// Pauli X.
    X,
}

impl GateClass {
    /// All classes in reporting order.
    pub const ALL: [GateClass; 6] = [
        GateClass::Cnot,
        GateClass::T,
        GateClass::H,
        GateClass::S,
        GateClass::Rotation,
        GateClass::X,
    ];

    /// Lower-case label used in JSON and tables.
    pub fn label(&self) -> &'static str {
        match self {
            GateClass::Cnot => "cnot",
            GateClass::T => "t",
            GateClass::H => "h",
            GateClass::S => "s",
            GateClass::Rotation => "rot",
            GateClass::X => "x",
        }
    }
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Tallies of a lowered circuit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCounts {
    /// CX gates.
    pub cnot: usize,
    /// T plus T† gates.
    pub t: usize,
    /// Hadamard gates.
    pub h: usize,
    /// S plus S† gates.
    pub s: usize,
    /// Arbitrary-angle rotations.
    pub rot: usize,
    /// Pauli X gates.
    pub x: usize,
    /// Number of ASAP layers holding at least one gate of each class.
    pub per_type_depth: BTreeMap<GateClass, usize>,
    /// Total number of ASAP layers.
    pub depth: usize,
}

impl GateCounts {
    /// Depth of one class (zero when the class is absent).
    pub fn depth(&self, class: GateClass) -> usize {
        self.per_type_depth.get(&class).copied().unwrap_or(0)
    }

    /// Count of one class.
    pub fn count(&self, class: GateClass) -> usize {
        match class {
            GateClass::Cnot => self.cnot,
            GateClass::T => self.t,
            GateClass::H => self.h,
            GateClass::S => self.s,
            GateClass::Rotation => self.rot,
            GateClass::X => self.x,
        }
    }
}

/// Counts gates and computes per-class ASAP depth.
///
/// Each gate is placed in the earliest layer after the last layer used by any
/// of its qubits. The depth of a class is the number of layers containing at
/// least one gate of that class.
pub fn counts(circuit: &Circuit) -> Result<GateCounts> {
    let mut k = GateCounts::default();
    let mut front = vec![0usize; circuit.num_qubits()];
    let mut layers: BTreeMap<GateClass, Vec<bool>> = BTreeMap::new();
    for (i, g) in circuit.gates().iter().enumerate() {
        let class = g.class().ok_or(Error::MidLevelGate {
            gate: i,
            name: g.name(),
        })?;
        match g {
            Gate::CX { .. } => k.cnot += 1,
            Gate::T(_) | Gate::Tdg(_) => k.t += 1,
            Gate::H(_) => k.h += 1,
            Gate::S(_) | Gate::Sdg(_) => k.s += 1,
            Gate::Rx(..) | Gate::Rz(..) => k.rot += 1,
            Gate::X(_) => k.x += 1,
            _ => unreachable!("mid-level gates rejected above"),
        }
        let qs = g.qubits();
        let layer = qs.iter().map(|&q| front[q]).max().unwrap_or(0);
        for &q in &qs {
            front[q] = layer + 1;
        }
        k.depth = k.depth.max(layer + 1);
        let marks = layers.entry(class).or_default();
        if marks.len() <= layer {
            marks.resize(layer + 1, false);
        }
        marks[layer] = true;
    }
    for (class, marks) in layers {
        k.per_type_depth
            .insert(class, marks.iter().filter(|&&b| b).count());
    }
    Ok(k)
}

/// Largest number of gates of `class` along any dependency path.
///
/// Gates of other classes take no time in this model, which is how T-depth
/// is usually quoted for fault-tolerant circuits. It never exceeds the ASAP
/// class depth reported by [`counts`].
pub fn critical_path_depth(circuit: &Circuit, class: GateClass) -> Result<usize> {
    let mut front = vec![0usize; circuit.num_qubits()];
    let mut best = 0;
    for (i, g) in circuit.gates().iter().enumerate() {
        let c = g.class().ok_or(Error::MidLevelGate {
            gate: i,
            name: g.name(),
        })?;
        let qs = g.qubits();
        let d = qs.iter().map(|&q| front[q]).max().unwrap_or(0) + usize::from(c == class);
        for &q in &qs {
            front[q] = d;
        }
        best = best.max(d);
    }
    Ok(best)
}
