//! Synthesis of multi-controlled single-qubit gates into Clifford+T and
//! rotation circuits, on all-to-all and linear nearest-neighbour hardware.
//!
//! The crate is organised in layers:
//!
//! * [`circuit`] holds the gate IR, lowering of mid-level gates, counting and
//!   OpenQASM 2.0 round trips.
//! * [`su2`] provides the single-qubit algebra behind the A-gate
//!   decomposition.
//! * [`ata`] and [`lnn`] are the synthesizers for the two connectivities.
//! * [`sim`] checks circuits against brute-force oracles.
//! * [`cost`] evaluates closed-form resource formulas.

pub mod ata;
pub mod circuit;
pub mod cost;
pub mod error;
pub mod lnn;
pub mod sim;
pub mod spec;
pub mod su2;

pub use circuit::{Circuit, Gate};
pub use error::{Error, Result};
pub use spec::{Ancilla, GateKind, Layout, MCGateSpec, TargetOp};
