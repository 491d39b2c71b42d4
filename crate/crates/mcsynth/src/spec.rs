//! Abstract multi-controlled gate specifications and qubit layouts.

use crate::error::{Error, Result};
use crate::su2::{AxisAngle, U2Spec, UnitVec3};

/// Operator applied to one target when every control is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetOp {
    /// Pauli X.
    X,
    /// `R_v(λ)`.
    Su2(AxisAngle),
    /// `e^{iψ} R_v(λ)`.
    U2(U2Spec),
}

/// Kind of multi-controlled gate.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    /// Single-target X.
    X,
    /// Single-target SU(2).
    Su2(AxisAngle),
    /// Single-target U(2).
    U2(U2Spec),
    /// One SU(2) operator per target.
    MultiSu2(Vec<AxisAngle>),
    /// X on the given number of targets.
    MultiX(usize),
    /// One U(2) operator per target.
    MultiU2(Vec<U2Spec>),
}

/// Helper qubits made available to the synthesizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ancilla {
    /// No helper qubits.
    None,
    /// Borrowed qubits in an arbitrary state that must be restored.
    Dirty(usize),
    /// Qubits guaranteed to start and end in |0⟩.
    Clean(usize),
}

impl Ancilla {
    /// Number of dirty qubits.
    pub fn dirty(&self) -> usize {
        match self {
            Ancilla::Dirty(k) => *k,
            _ => 0,
        }
    }

    /// Number of clean qubits.
    pub fn clean(&self) -> usize {
        match self {
            Ancilla::Clean(k) => *k,
            _ => 0,
        }
    }
}

/// A multi-controlled gate to synthesize.
#[derive(Debug, Clone, PartialEq)]
pub struct MCGateSpec {
    /// Operator kind.
    pub kind: GateKind,
    /// Number of controls.
    pub n: usize,
    /// Helper qubits.
    pub ancilla: Ancilla,
}

impl MCGateSpec {
    /// Builds and validates a specification.
    pub fn new(kind: GateKind, n: usize, ancilla: Ancilla) -> Result<Self> {
        let s = Self { kind, n, ancilla };
        s.validate()?;
        Ok(s)
    }

    /// Single-target MCX with `dirty` borrowed qubits.
    pub fn mcx(n: usize, dirty: usize) -> Self {
        let ancilla = if dirty == 0 {
            Ancilla::None
        } else {
            Ancilla::Dirty(dirty)
        };
        Self {
            kind: GateKind::X,
            n,
            ancilla,
        }
    }

    /// Single-target MCSU2 without helpers.
    pub fn mcsu2(n: usize, target: AxisAngle) -> Self {
        Self {
            kind: GateKind::Su2(target),
            n,
            ancilla: Ancilla::None,
        }
    }

    /// Single-target MCU2 with one clean helper.
    pub fn mcu2(n: usize, target: U2Spec) -> Self {
        Self {
            kind: GateKind::U2(target),
            n,
            ancilla: Ancilla::Clean(1),
        }
    }

    /// Number of targets.
    pub fn m(&self) -> usize {
        match &self.kind {
            GateKind::X | GateKind::Su2(_) | GateKind::U2(_) => 1,
            GateKind::MultiSu2(v) => v.len(),
            GateKind::MultiX(m) => *m,
            GateKind::MultiU2(v) => v.len(),
        }
    }

    /// Operator applied on each target, in target order.
    pub fn target_ops(&self) -> Vec<TargetOp> {
        match &self.kind {
            GateKind::X => vec![TargetOp::X],
            GateKind::Su2(a) => vec![TargetOp::Su2(*a)],
            GateKind::U2(u) => vec![TargetOp::U2(*u)],
            GateKind::MultiSu2(v) => v.iter().map(|a| TargetOp::Su2(*a)).collect(),
            GateKind::MultiX(m) => vec![TargetOp::X; *m],
            GateKind::MultiU2(v) => v.iter().map(|u| TargetOp::U2(*u)).collect(),
        }
    }

    /// True for the X family.
    pub fn is_x(&self) -> bool {
        matches!(self.kind, GateKind::X | GateKind::MultiX(_))
    }

    /// True for the U(2) family.
    pub fn is_u2(&self) -> bool {
        matches!(self.kind, GateKind::U2(_) | GateKind::MultiU2(_))
    }

    /// Checks the structural invariants shared by every synthesizer.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec(
                "at least one control is required".into(),
            ));
        }
        if self.m() == 0 {
            return Err(Error::InvalidSpec("at least one target is required".into()));
        }
        if self.is_u2() && self.ancilla != Ancilla::Clean(1) {
            return Err(Error::InvalidSpec(
                "a U(2) target needs exactly one clean ancilla".into(),
            ));
        }
        if !self.is_u2() && self.ancilla.clean() > 0 {
            return Err(Error::InvalidSpec(
                "clean ancillae are only used by U(2) targets".into(),
            ));
        }
        if matches!(self.kind, GateKind::X) && self.n >= 3 && self.ancilla.dirty() == 0 {
            return Err(Error::InvalidSpec(
                "a single-target MCX with three or more controls needs a dirty ancilla".into(),
            ));
        }
        for op in self.target_ops() {
            let aa = match op {
                TargetOp::X => continue,
                TargetOp::Su2(a) => a,
                TargetOp::U2(u) => {
                    if !u.phase.is_finite() {
                        return Err(Error::InvalidSpec("phase must be finite".into()));
                    }
                    u.su2
                }
            };
            if !aa.angle.is_finite() {
                return Err(Error::InvalidSpec("angle must be finite".into()));
            }
            UnitVec3::new(aa.axis.x, aa.axis.y, aa.axis.z)?;
        }
        Ok(())
    }
}

/// Positions of every role on the qubit register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Register size.
    pub num_qubits: usize,
    /// Control qubits.
    pub controls: Vec<usize>,
    /// Target qubits, matching [`MCGateSpec::target_ops`] order.
    pub targets: Vec<usize>,
    /// Borrowed qubits.
    pub dirty: Vec<usize>,
    /// Clean qubits.
    pub clean: Vec<usize>,
}

impl Layout {
    /// Default all-to-all layout: controls, then targets, then ancillae.
    pub fn ata(spec: &MCGateSpec) -> Self {
        let n = spec.n;
        let m = spec.m();
        let d = spec.ancilla.dirty();
        let c = spec.ancilla.clean();
        Self {
            num_qubits: n + m + d + c,
            controls: (0..n).collect(),
            targets: (n..n + m).collect(),
            dirty: (n + m..n + m + d).collect(),
            clean: (n + m + d..n + m + d + c).collect(),
        }
    }

    /// Checks that the roles are distinct, in range, and sized like `spec`.
    pub fn check(&self, spec: &MCGateSpec) -> Result<()> {
        if self.controls.len() != spec.n {
            return Err(Error::InvalidPlacement(format!(
                "{} controls placed, {} expected",
                self.controls.len(),
                spec.n
            )));
        }
        if self.targets.len() != spec.m() {
            return Err(Error::InvalidPlacement(format!(
                "{} targets placed, {} expected",
                self.targets.len(),
                spec.m()
            )));
        }
        let mut seen = vec![false; self.num_qubits];
        for &q in self
            .controls
            .iter()
            .chain(&self.targets)
            .chain(&self.dirty)
            .chain(&self.clean)
        {
            if q >= self.num_qubits {
                return Err(Error::InvalidPlacement(format!("qubit {q} out of range")));
            }
            if seen[q] {
                return Err(Error::InvalidPlacement(format!("qubit {q} has two roles")));
            }
            seen[q] = true;
        }
        Ok(())
    }
}
