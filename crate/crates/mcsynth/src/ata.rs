//! All-to-all synthesizers for multi-controlled gates.
//!
//! Every gate is built from the same four-block macro. The controls are split
//! into two halves `C1` and `C2`; each block is a multi-controlled Z on one
//! half (times a relative phase), realised as a V-chain of relative-phase
//! Toffolis around one doubly controlled iZ. Single-qubit rotations on the
//! target between the blocks select the operator. The blocks appear as
//! `B1, B2, B1†, B2†`, so every relative phase cancels.
//!
//! Lowering works on the layered form of each chain: the `O2` halves of the
//! Toffolis are hoisted into layers at both ends of a block, where pairs from
//! adjacent blocks merge into cheaper two-qubit circuits.

use std::collections::HashSet;

use crate::circuit::{
    cancel_adjacent_inverses, cx, daggered, iz_lowered, lower, lower_gate, xdelta3_r_part,
    xdelta_o2, xdelta_o3, Circuit, Gate, LowerStyle,
};
use crate::error::{Error, Result};
use crate::sim::{simulate, DenseUnitary};
use crate::spec::{Ancilla, GateKind, Layout, MCGateSpec, TargetOp};
use crate::su2::{a_gates, AxisAngle, Rot, RotAxis, U2Spec};

/// Synthesis options shared by the all-to-all and LNN synthesizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SynthOptions {
    /// Sub-circuit family for the relative-phase Toffolis.
    pub variant: LowerStyle,
    /// Emit chains in layered order and merge the facing `O2` layers of
    /// adjacent blocks. Without it every mid-level gate is lowered in place.
    pub apply_depth_reductions: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self {
            variant: LowerStyle::Standard,
            apply_depth_reductions: true,
        }
    }
}

impl SynthOptions {
    /// Default options with the T-depth variant.
    pub fn tdepth() -> Self {
        Self {
            variant: LowerStyle::TDepth,
            ..Self::default()
        }
    }
}

/// Split of the controls between the two halves of the macro.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPartition {
    /// First half: the paired controls followed by the single controls.
    pub c1: Vec<usize>,
    /// Second half.
    pub c2: Vec<usize>,
    /// Controls of `C1` borrowed by the chain on `C2`.
    pub c1_prime: Vec<usize>,
    /// Controls of `C2` borrowed by the chain on `C1`.
    pub c2_prime: Vec<usize>,
    /// Number of borrowed ancillae used by the chain on `C1`.
    pub n_chi: usize,
    /// The `2·n_chi` controls merged in pairs by three-control Toffolis.
    pub c1_chi: Vec<usize>,
}

impl ControlPartition {
    /// Single (unpaired) controls of `C1`.
    pub fn c1_single(&self) -> &[usize] {
        &self.c1[self.c1_chi.len()..]
    }
}

/// Splits `controls` for the macro, reserving `n_chi` control pairs for the
/// borrowed ancillae.
///
/// With `n_chi = 0` the halves have sizes `⌊n/2⌋` and `⌈n/2⌉`; a single
/// control forms `C1` alone.
pub fn partition_controls(controls: &[usize], n_chi: usize) -> Result<ControlPartition> {
    let n = controls.len();
    if n == 0 {
        return Err(Error::InvalidSpec("no controls to partition".into()));
    }
    if n_chi > 0 && (n < 6 || n_chi > (n - 6) / 2) {
        return Err(Error::InvalidSpec(format!(
            "{n_chi} borrowed ancillae out of range for {n} controls"
        )));
    }
    if n == 1 {
        return Ok(ControlPartition {
            c1: controls.to_vec(),
            c2: Vec::new(),
            c1_prime: Vec::new(),
            c2_prime: Vec::new(),
            n_chi: 0,
            c1_chi: Vec::new(),
        });
    }
    let c1_chi = controls[..2 * n_chi].to_vec();
    let rest = &controls[2 * n_chi..];
    let n1 = rest.len() / 2;
    let n2 = rest.len() - n1;
    let single = &rest[..n1];
    let c2 = rest[n1..].to_vec();
    let c2_prime = if n1 >= 2 {
        c2[2..n1].to_vec()
    } else {
        Vec::new()
    };
    let c1_prime = if n1 == n2 {
        if n2 >= 2 {
            single[2..n2].to_vec()
        } else {
            Vec::new()
        }
    } else if n1 >= 2 {
        let mut v = single[2..n1].to_vec();
        v.push(single[1]);
        v
    } else {
        Vec::new()
    };
    let mut c1 = c1_chi.clone();
    c1.extend_from_slice(single);
    Ok(ControlPartition {
        c1,
        c2,
        c1_prime,
        c2_prime,
        n_chi,
        c1_chi,
    })
}

/// One control position of a V-chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ctrl {
    One(usize),
    Pair(usize, usize),
}

/// A multi-controlled Z on `ctrls ∪ {t}` up to a relative phase on the
/// controls. Chains with three or more positions borrow `borrows`, whose
/// last element is `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Chain {
    ctrls: Vec<Ctrl>,
    borrows: Vec<usize>,
    t: usize,
}

impl Chain {
    /// `d_i` with one-based `i`.
    fn d(&self, i: usize) -> usize {
        self.borrows[i - 1]
    }

    fn head(&self) -> (usize, usize) {
        match (self.ctrls[0], self.ctrls[1]) {
            (Ctrl::One(a), Ctrl::One(b)) => (a, b),
            _ => unreachable!("the first two chain positions are single controls"),
        }
    }

    /// Relative-phase Toffoli of one-based position `j ≥ 3`.
    fn toffoli(&self, j: usize, inverse: bool) -> Gate {
        let (c2, t) = (self.d(j - 1), self.d(j - 2));
        match self.ctrls[j - 1] {
            Ctrl::One(c) => Gate::XDelta {
                c1: c,
                c2,
                t,
                inverse,
            },
            Ctrl::Pair(a, b) => Gate::XDelta3 {
                c0: a,
                c1: b,
                c2,
                t,
                inverse,
            },
        }
    }

    /// Mid-level gates. `adjoint` conjugates the central iZ.
    fn mid_level(&self, adjoint: bool) -> Vec<Gate> {
        let l = self.ctrls.len();
        match l {
            1 => match self.ctrls[0] {
                Ctrl::One(c) => vec![Gate::CZ(c, self.t)],
                Ctrl::Pair(..) => unreachable!("pairs only occur in long chains"),
            },
            2 => {
                let (a, b) = self.head();
                vec![Gate::IZ {
                    c1: a,
                    c2: b,
                    t: self.t,
                    inverse: adjoint,
                }]
            }
            _ => {
                let (a, b) = self.head();
                let mut v: Vec<Gate> = (3..=l).rev().map(|j| self.toffoli(j, false)).collect();
                v.push(Gate::IZ {
                    c1: a,
                    c2: b,
                    t: self.d(1),
                    inverse: adjoint,
                });
                v.extend((3..=l).map(|j| self.toffoli(j, true)));
                v
            }
        }
    }
}

/// One `O2` half hoisted into a layer at the edge of a block.
#[derive(Debug, Clone, PartialEq)]
struct Xi {
    special: usize,
    target: usize,
    gates: Vec<Gate>,
}

/// Layered lowering of one chain: `xi_l`, then `lambda`, then `xi_r`.
#[derive(Debug, Clone, Default)]
struct LayeredChain {
    xi_l: Vec<Xi>,
    lambda: Vec<Gate>,
    xi_r: Vec<Xi>,
}

/// Replacement for a leading Toffoli merged with a zero-controlled Rx(π/2)†.
fn left_cancel_o2(q2: usize) -> Vec<Gate> {
    vec![Gate::H(q2), Gate::Sdg(q2)]
}

fn left_cancel_o3(q1: usize, q2: usize, q3: usize) -> Vec<Gate> {
    vec![
        cx(q3, q2),
        cx(q2, q1),
        Gate::Tdg(q1),
        Gate::T(q2),
        cx(q2, q1),
        Gate::H(q2),
    ]
}

/// Replacement for a trailing Toffoli merged with a zero-controlled Rx(π/2).
fn right_cancel_o3(q1: usize, q2: usize, q4: usize) -> Vec<Gate> {
    vec![
        Gate::H(q1),
        cx(q1, q2),
        Gate::Tdg(q1),
        Gate::T(q2),
        cx(q4, q1),
        cx(q4, q2),
    ]
}

fn right_cancel_o2(q1: usize, q2: usize) -> Vec<Gate> {
    vec![
        Gate::T(q1),
        Gate::Tdg(q2),
        Gate::H(q1),
        Gate::H(q2),
        Gate::T(q1),
        Gate::T(q2),
        cx(q2, q1),
        Gate::H(q2),
    ]
}

/// Two facing `O2` halves, `O2†(special s, target u)` then
/// `O2(special u, target s)`, rewritten as one two-qubit circuit.
fn merged_pair(s: usize, u: usize, style: LowerStyle) -> Vec<Gate> {
    match style {
        LowerStyle::Standard => vec![
            cx(u, s),
            Gate::Tdg(u),
            Gate::T(s),
            Gate::H(u),
            Gate::H(s),
            Gate::Tdg(u),
            Gate::T(s),
            cx(s, u),
        ],
        LowerStyle::TDepth => vec![
            Gate::T(u),
            Gate::Tdg(s),
            Gate::H(u),
            Gate::H(s),
            Gate::T(u),
            Gate::Tdg(s),
        ],
    }
}

impl Chain {
    /// Layered lowering. Positions listed in `left` (as special, target)
    /// take the left-cancel forms in the first half; positions in `right`
    /// take the right-cancel forms in the second half. Pair positions drop
    /// their leading part, which cancels across the whole macro.
    fn layered(
        &self,
        adjoint: bool,
        style: LowerStyle,
        left: &HashSet<(usize, usize)>,
        right: &HashSet<(usize, usize)>,
    ) -> LayeredChain {
        let l = self.ctrls.len();
        if l <= 2 {
            return LayeredChain {
                lambda: self
                    .mid_level(adjoint)
                    .iter()
                    .flat_map(|g| lower_gate(g, style))
                    .collect(),
                ..LayeredChain::default()
            };
        }
        let mut out = LayeredChain::default();
        let mut second_half = Vec::new();
        for j in (3..=l).rev() {
            let (c2, t) = (self.d(j - 1), self.d(j - 2));
            match self.ctrls[j - 1] {
                Ctrl::One(c) => {
                    let (o2, o3) = if left.contains(&(c, t)) {
                        (left_cancel_o2(t), left_cancel_o3(c, t, c2))
                    } else {
                        (xdelta_o2(c, t, style), xdelta_o3(c, c2, t, style))
                    };
                    out.xi_l.push(Xi {
                        special: c,
                        target: t,
                        gates: o2,
                    });
                    out.lambda.extend(o3);
                }
                Ctrl::Pair(a, b) => out.lambda.extend(xdelta3_r_part(a, b, c2, t, style)),
            }
        }
        let (a, b) = self.head();
        let iz = iz_lowered(a, b, self.d(1), style);
        out.lambda.extend(if adjoint { daggered(iz) } else { iz });
        for j in 3..=l {
            let (c2, t) = (self.d(j - 1), self.d(j - 2));
            match self.ctrls[j - 1] {
                Ctrl::One(c) => {
                    let (o3, o2) = if right.contains(&(c, t)) {
                        (right_cancel_o3(t, c, c2), right_cancel_o2(t, c))
                    } else {
                        (
                            daggered(xdelta_o3(c, c2, t, style)),
                            daggered(xdelta_o2(c, t, style)),
                        )
                    };
                    second_half.extend(o3);
                    out.xi_r.push(Xi {
                        special: c,
                        target: t,
                        gates: o2,
                    });
                }
                Ctrl::Pair(a, b) => {
                    second_half.extend(daggered(xdelta3_r_part(a, b, c2, t, style)))
                }
            }
        }
        out.lambda.extend(second_half);
        out
    }
}

/// Parity tree folding the targets into the first one.
fn parity_tree(targets: &[usize]) -> Vec<Gate> {
    let m = targets.len();
    let mut f = 1;
    while f < m {
        f *= 2;
    }
    let mut out = Vec::new();
    while f > 1 {
        f /= 2;
        for j in 0..f.min(m - f) {
            out.push(cx(targets[j + f], targets[j]));
        }
    }
    out
}

/// The four-block (or two-block) macro.
#[derive(Debug, Clone)]
struct Macro {
    num_qubits: usize,
    targets: Vec<usize>,
    /// Target gates before, between and after the blocks.
    slots: Vec<Vec<Gate>>,
    /// Blocks with their iZ adjoint flag.
    blocks: Vec<(Chain, bool)>,
    prefix: Vec<Gate>,
    suffix: Vec<Gate>,
}

/// Per-target gates for the slots of the macro.
#[derive(Debug, Clone)]
pub(crate) struct TargetSlots {
    pub(crate) four: [Vec<Gate>; 5],
    pub(crate) two: [Vec<Gate>; 3],
}

fn rot_gate(r: &Rot, q: usize) -> Gate {
    match r.axis {
        RotAxis::X => Gate::Rx(q, r.angle),
        RotAxis::Z => Gate::Rz(q, r.angle),
    }
}

fn rots(list: &[Rot], q: usize) -> Vec<Gate> {
    list.iter().map(|r| rot_gate(r, q)).collect()
}

/// Slots realising `R_v(λ)` on target `q`.
pub(crate) fn su2_slots(target: &AxisAngle, q: usize) -> TargetSlots {
    let a = a_gates(target);
    let lam = target.angle;
    let mut tail = vec![Gate::Rx(q, lam / 2.0)];
    tail.extend(rots(&[Rot::z(-a.theta2), Rot::x(-a.theta1)], q));
    TargetSlots {
        four: [
            rots(&a.a4, q),
            rots(&a.a2, q),
            rots(&a.a3, q),
            rots(&a.a2, q),
            rots(&a.a1, q),
        ],
        two: [rots(&a.a4, q), vec![Gate::Rx(q, -lam / 2.0)], tail],
    }
}

/// Slots realising `R_z(−2ψ)` on a clean ancilla `q`; the final rotation is
/// dropped because it only contributes a global phase on |0⟩.
pub(crate) fn phase_slots(psi: f64, q: usize) -> TargetSlots {
    TargetSlots {
        four: [
            vec![Gate::H(q)],
            vec![Gate::Rx(q, psi / 2.0)],
            vec![Gate::Rx(q, -psi / 2.0)],
            vec![Gate::Rx(q, psi / 2.0)],
            vec![Gate::H(q)],
        ],
        two: [vec![Gate::H(q)], vec![Gate::Rx(q, psi)], vec![Gate::H(q)]],
    }
}

/// Slots realising a multi-controlled Y rotation by 2π (a controlled −1).
pub(crate) fn x_slots(q: usize) -> TargetSlots {
    TargetSlots {
        four: [
            Vec::new(),
            vec![Gate::H(q)],
            vec![Gate::H(q)],
            vec![Gate::H(q)],
            vec![Gate::H(q)],
        ],
        two: [Vec::new(), vec![Gate::H(q)], vec![Gate::H(q)]],
    }
}

impl Macro {
    /// Builds the macro over `controls` with `targets` (the chain target is
    /// `targets[0]`) and the borrowed ancillae `chi`.
    fn new(
        num_qubits: usize,
        controls: &[usize],
        targets: &[usize],
        chi: &[usize],
        target_slots: &[TargetSlots],
    ) -> Result<Self> {
        let p = partition_controls(controls, chi.len())?;
        let t = targets[0];
        let single = p.c1_single().to_vec();
        let mut ctrls1: Vec<Ctrl> = single.iter().take(2).map(|&c| Ctrl::One(c)).collect();
        ctrls1.extend(p.c1_chi.chunks(2).map(|w| Ctrl::Pair(w[0], w[1])));
        ctrls1.extend(single.iter().skip(2).map(|&c| Ctrl::One(c)));
        let mut borrows1 = chi.to_vec();
        borrows1.extend_from_slice(&p.c2_prime);
        borrows1.push(t);
        let chain1 = Chain {
            ctrls: ctrls1,
            borrows: borrows1,
            t,
        };
        let (blocks, slots): (Vec<(Chain, bool)>, Vec<Vec<Gate>>) = if p.c2.is_empty() {
            let slots = (0..3)
                .map(|s| {
                    target_slots
                        .iter()
                        .flat_map(|ts| ts.two[s].clone())
                        .collect()
                })
                .collect();
            (vec![(chain1.clone(), false), (chain1, true)], slots)
        } else {
            let mut borrows2 = p.c1_prime.clone();
            borrows2.push(t);
            let chain2 = Chain {
                ctrls: p.c2.iter().map(|&c| Ctrl::One(c)).collect(),
                borrows: borrows2,
                t,
            };
            let slots = (0..5)
                .map(|s| {
                    target_slots
                        .iter()
                        .flat_map(|ts| ts.four[s].clone())
                        .collect()
                })
                .collect();
            (
                vec![
                    (chain1.clone(), false),
                    (chain2.clone(), false),
                    (chain1, true),
                    (chain2, true),
                ],
                slots,
            )
        };
        Ok(Self {
            num_qubits,
            targets: targets.to_vec(),
            slots,
            blocks,
            prefix: Vec::new(),
            suffix: Vec::new(),
        })
    }

    fn mid_level(&self) -> Circuit {
        let tree = parity_tree(&self.targets);
        let tree_inv = daggered(tree.clone());
        let mut c = Circuit::new(self.num_qubits);
        c.extend(self.prefix.iter().copied());
        c.extend(self.slots[0].iter().copied());
        for (b, (chain, adj)) in self.blocks.iter().enumerate() {
            c.extend(tree.iter().copied());
            c.extend(chain.mid_level(*adj));
            c.extend(tree_inv.iter().copied());
            c.extend(self.slots[b + 1].iter().copied());
        }
        c.extend(self.suffix.iter().copied());
        c
    }

    fn lowered(&self, opts: SynthOptions) -> Circuit {
        if !opts.apply_depth_reductions {
            return lower(&self.mid_level(), opts.variant);
        }
        let style = opts.variant;
        let none = HashSet::new();
        let (left, right) = if style == LowerStyle::TDepth && self.blocks.len() == 4 {
            let first = &self.blocks[0].0;
            let left: HashSet<(usize, usize)> = (3..=first.ctrls.len())
                .filter_map(|j| match first.ctrls[j - 1] {
                    Ctrl::One(c) => Some((c, first.d(j - 2))),
                    Ctrl::Pair(..) => None,
                })
                .collect();
            let right = left.iter().map(|&(a, b)| (b, a)).collect();
            (left, right)
        } else {
            (HashSet::new(), HashSet::new())
        };
        let last = self.blocks.len() - 1;
        let layered: Vec<LayeredChain> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(b, (chain, adj))| {
                let l = if b == 0 { &left } else { &none };
                let r = if b == last { &right } else { &none };
                chain.layered(*adj, style, l, r)
            })
            .collect();
        let tree = parity_tree(&self.targets);
        let tree_inv = daggered(tree.clone());
        let mut g: Vec<Gate> = Vec::new();
        g.extend(self.prefix.iter().copied());
        g.extend(self.slots[0].iter().copied());
        g.extend(tree.iter().copied());
        for xi in &layered[0].xi_l {
            g.extend(xi.gates.iter().copied());
        }
        for b in 0..=last {
            g.extend(layered[b].lambda.iter().copied());
            if b == last {
                for xi in &layered[b].xi_r {
                    g.extend(xi.gates.iter().copied());
                }
                g.extend(tree_inv.iter().copied());
                g.extend(self.slots[b + 1].iter().copied());
                break;
            }
            g.extend(tree_inv.iter().copied());
            g.extend(self.slots[b + 1].iter().copied());
            g.extend(tree.iter().copied());
            merge_layers(&layered[b].xi_r, &layered[b + 1].xi_l, style, &mut g);
        }
        g.extend(self.suffix.iter().copied());
        let mut c = Circuit::new(self.num_qubits);
        c.extend(g);
        c
    }
}

/// Emits the facing layers of two adjacent blocks, merging matched pairs.
fn merge_layers(right: &[Xi], left: &[Xi], style: LowerStyle, out: &mut Vec<Gate>) {
    let matched = |r: &Xi| {
        left.iter()
            .any(|l| l.special == r.target && l.target == r.special)
    };
    for r in right.iter().filter(|r| !matched(r)) {
        out.extend(r.gates.iter().copied());
    }
    for r in right.iter().filter(|r| matched(r)) {
        out.extend(merged_pair(r.special, r.target, style));
    }
    for l in left {
        if !right
            .iter()
            .any(|r| r.special == l.target && r.target == l.special)
        {
            out.extend(l.gates.iter().copied());
        }
    }
}

pub(crate) fn require_distinct(num_qubits: usize, groups: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; num_qubits];
    for &q in groups.iter().flat_map(|g| g.iter()) {
        if q >= num_qubits {
            return Err(Error::InvalidPlacement(format!("qubit {q} out of range")));
        }
        if seen[q] {
            return Err(Error::InvalidPlacement(format!("qubit {q} has two roles")));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Mid-level V-chain for `{Z}ⁿ·CS(c1, c2)`: a multi-controlled Z on the
/// controls and the last borrowed qubit, times a relative phase.
pub fn vchain_z_mid_level(controls: &[usize], borrows: &[usize]) -> Result<Circuit> {
    let chain = vchain(controls, borrows)?;
    let nq = controls.iter().chain(borrows).max().map_or(0, |q| q + 1);
    Circuit::from_gates(nq, chain.mid_level(false))
}

/// Lowered V-chain for `{Z}ⁿ·CS(c1, c2)` in layered order.
///
/// Needs at least three controls and one borrowed qubit fewer than
/// controls; the last borrowed qubit acts as an extra control of the Z.
pub fn synth_vchain_z(
    controls: &[usize],
    borrows: &[usize],
    options: SynthOptions,
) -> Result<Circuit> {
    let chain = vchain(controls, borrows)?;
    let nq = controls.iter().chain(borrows).max().map_or(0, |q| q + 1);
    if !options.apply_depth_reductions {
        return Ok(lower(
            &Circuit::from_gates(nq, chain.mid_level(false))?,
            options.variant,
        ));
    }
    let none = HashSet::new();
    let l = chain.layered(false, options.variant, &none, &none);
    let mut c = Circuit::new(nq);
    for xi in &l.xi_l {
        c.extend(xi.gates.iter().copied());
    }
    c.extend(l.lambda);
    for xi in &l.xi_r {
        c.extend(xi.gates.iter().copied());
    }
    Ok(c)
}

fn vchain(controls: &[usize], borrows: &[usize]) -> Result<Chain> {
    if controls.len() < 3 {
        return Err(Error::InvalidSpec(
            "a V-chain needs at least three controls".into(),
        ));
    }
    if borrows.len() + 1 != controls.len() {
        return Err(Error::InvalidSpec(format!(
            "{} controls need {} borrowed qubits, got {}",
            controls.len(),
            controls.len() - 1,
            borrows.len()
        )));
    }
    let nq = controls.iter().chain(borrows).max().map_or(0, |q| q + 1);
    require_distinct(nq, &[controls, borrows])?;
    Ok(Chain {
        ctrls: controls.iter().map(|&c| Ctrl::One(c)).collect(),
        borrows: borrows.to_vec(),
        t: *borrows.last().expect("non-empty"),
    })
}

/// Which multi-controlled family a specification belongs to.
pub(crate) fn su2_targets(spec: &MCGateSpec) -> Result<Vec<AxisAngle>> {
    match &spec.kind {
        GateKind::Su2(a) => Ok(vec![*a]),
        GateKind::MultiSu2(v) => Ok(v.clone()),
        _ => Err(Error::InvalidSpec("expected an SU(2) target".into())),
    }
}

fn chi_count(spec: &MCGateSpec) -> Result<usize> {
    match spec.ancilla {
        Ancilla::None => Ok(0),
        Ancilla::Dirty(k) => {
            if spec.n < 6 || k > (spec.n - 6) / 2 {
                Err(Error::InvalidSpec(format!(
                    "{k} borrowed ancillae out of range for {} controls",
                    spec.n
                )))
            } else {
                Ok(k)
            }
        }
        Ancilla::Clean(_) => Err(Error::InvalidSpec(
            "an SU(2) target takes no clean ancilla".into(),
        )),
    }
}

fn mcsu2_macro(spec: &MCGateSpec, layout: &Layout) -> Result<Macro> {
    spec.validate()?;
    layout.check(spec)?;
    let ops = su2_targets(spec)?;
    let chi = chi_count(spec)?;
    let slots: Vec<TargetSlots> = ops
        .iter()
        .zip(&layout.targets)
        .map(|(a, &q)| su2_slots(a, q))
        .collect();
    Macro::new(
        layout.num_qubits,
        &layout.controls,
        &layout.targets,
        &layout.dirty[..chi],
        &slots,
    )
}

/// Multi-controlled SU(2) gate (single or multiple targets) in mid-level
/// form, on the default all-to-all layout.
pub fn mcsu2_ata_mid_level(spec: &MCGateSpec) -> Result<Circuit> {
    Ok(mcsu2_macro(spec, &Layout::ata(spec))?.mid_level())
}

/// Multi-controlled SU(2) gate, exact (no global phase), lowered.
///
/// Accepts `Su2` and `MultiSu2` kinds with no ancilla or with up to
/// `⌊(n−6)/2⌋` borrowed qubits.
pub fn synth_mcsu2_ata(spec: &MCGateSpec, options: SynthOptions) -> Result<Circuit> {
    synth_mcsu2_on(spec, &Layout::ata(spec), options)
}

/// [`synth_mcsu2_ata`] on an explicit layout.
pub fn synth_mcsu2_on(
    spec: &MCGateSpec,
    layout: &Layout,
    options: SynthOptions,
) -> Result<Circuit> {
    Ok(mcsu2_macro(spec, layout)?.lowered(options))
}

/// Lowered MCX on `controls → target`, borrowing `dirty[0]` when three or
/// more controls are present. Further borrowed qubits are left idle.
pub(crate) fn mcx_gates(
    num_qubits: usize,
    controls: &[usize],
    target: usize,
    dirty: Option<usize>,
    options: SynthOptions,
) -> Result<Vec<Gate>> {
    match controls {
        [] => Err(Error::InvalidSpec("no controls".into())),
        [c] => Ok(vec![cx(*c, target)]),
        [a, b] => Ok(toffoli(*a, *b, target)),
        _ => {
            let a = dirty.ok_or_else(|| {
                Error::InvalidSpec("MCX with three or more controls needs a dirty ancilla".into())
            })?;
            let mut ext = controls[..2].to_vec();
            ext.push(target);
            ext.extend_from_slice(&controls[2..]);
            let mut m = Macro::new(num_qubits, &ext, &[a], &[], &[x_slots(a)])?;
            m.prefix = vec![Gate::H(target)];
            m.suffix = vec![Gate::H(target)];
            let c = m.lowered(options);
            Ok(cancel_adjacent_inverses(c.gates(), crate::circuit::is_h))
        }
    }
}

/// Textbook Clifford+T Toffoli (6 CX, 7 T, 2 H).
pub fn toffoli(a: usize, b: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::H(t),
        cx(b, t),
        Gate::Tdg(t),
        cx(a, t),
        Gate::T(t),
        cx(b, t),
        Gate::Tdg(t),
        cx(a, t),
        Gate::T(b),
        Gate::T(t),
        Gate::H(t),
        cx(a, b),
        Gate::T(a),
        Gate::Tdg(b),
        cx(a, b),
    ]
}

/// Fan-out ladder that turns an X on `targets[0]` into X on every target.
/// Returns the gates placed before and after the single-target gate.
pub(crate) fn fanout(targets: &[usize]) -> (Vec<Gate>, Vec<Gate>) {
    let suffix: Vec<Gate> = targets.windows(2).map(|w| cx(w[0], w[1])).collect();
    let prefix = suffix.iter().rev().copied().collect();
    (prefix, suffix)
}

/// Multi-controlled X on one target (one borrowed ancilla for `n ≥ 3`) or
/// on several targets (no ancilla), correct up to a global phase.
pub fn synth_mcx_ata(spec: &MCGateSpec, options: SynthOptions) -> Result<Circuit> {
    synth_mcx_on(spec, &Layout::ata(spec), options)
}

/// [`synth_mcx_ata`] on an explicit layout.
pub fn synth_mcx_on(spec: &MCGateSpec, layout: &Layout, options: SynthOptions) -> Result<Circuit> {
    spec.validate()?;
    layout.check(spec)?;
    if !spec.is_x() {
        return Err(Error::InvalidSpec("expected an X target".into()));
    }
    let t = &layout.targets;
    let mut gates = Vec::new();
    if t.len() == 1 {
        gates = mcx_gates(
            layout.num_qubits,
            &layout.controls,
            t[0],
            layout.dirty.first().copied(),
            options,
        )?;
    } else {
        let (pre, post) = fanout(t);
        gates.extend(pre);
        gates.extend(mcx_gates(
            layout.num_qubits,
            &layout.controls,
            t[0],
            Some(t[1]),
            options,
        )?);
        gates.extend(post);
    }
    Circuit::from_gates(layout.num_qubits, gates)
}

pub(crate) fn u2_targets(spec: &MCGateSpec) -> Result<Vec<U2Spec>> {
    match &spec.kind {
        GateKind::U2(u) => Ok(vec![*u]),
        GateKind::MultiU2(v) => Ok(v.clone()),
        _ => Err(Error::InvalidSpec("expected a U(2) target".into())),
    }
}

fn mcu2_macro(spec: &MCGateSpec, layout: &Layout) -> Result<Macro> {
    spec.validate()?;
    layout.check(spec)?;
    let ops = u2_targets(spec)?;
    let a = *layout
        .clean
        .first()
        .ok_or_else(|| Error::InvalidSpec("a U(2) target needs a clean ancilla".into()))?;
    let psi: f64 = ops.iter().map(|u| u.phase).sum();
    let mut slots: Vec<TargetSlots> = ops
        .iter()
        .zip(&layout.targets)
        .map(|(u, &q)| su2_slots(&u.su2, q))
        .collect();
    slots.push(phase_slots(psi, a));
    let mut targets = layout.targets.clone();
    targets.push(a);
    Macro::new(layout.num_qubits, &layout.controls, &targets, &[], &slots)
}

/// Multi-controlled U(2) gate using one clean ancilla, correct up to a
/// global phase on the subspace where the ancilla is |0⟩.
pub fn synth_mcu2_ata(spec: &MCGateSpec, options: SynthOptions) -> Result<Circuit> {
    synth_mcu2_on(spec, &Layout::ata(spec), options)
}

/// [`synth_mcu2_ata`] on an explicit layout.
pub fn synth_mcu2_on(spec: &MCGateSpec, layout: &Layout, options: SynthOptions) -> Result<Circuit> {
    Ok(mcu2_macro(spec, layout)?.lowered(options))
}

/// Synthesizes any supported specification on the default layout.
pub fn synth_ata(spec: &MCGateSpec, options: SynthOptions) -> Result<Circuit> {
    match spec.kind {
        GateKind::X | GateKind::MultiX(_) => synth_mcx_ata(spec, options),
        GateKind::Su2(_) | GateKind::MultiSu2(_) => synth_mcsu2_ata(spec, options),
        GateKind::U2(_) | GateKind::MultiU2(_) => synth_mcu2_ata(spec, options),
    }
}

/// Relative-phase Toffoli flavours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XDeltaKind {
    /// Two controls, one of them carrying the phase.
    TwoControl,
    /// Three controls, the first two merged as a pair.
    ThreeControl,
}

/// A relative-phase Toffoli on qubits `0..k` with its lowering and
/// defining matrix.
#[derive(Debug, Clone)]
pub struct XDeltaTemplate {
    /// The mid-level gate.
    pub gate: Gate,
    /// Its Clifford+T lowering.
    pub lowered: Circuit,
    /// The defining matrix: a multi-controlled X times a diagonal.
    pub matrix: DenseUnitary,
}

/// Builds a relative-phase Toffoli template.
pub fn build_xdelta(kind: XDeltaKind, style: LowerStyle, inverse: bool) -> XDeltaTemplate {
    let (nq, gate) = match kind {
        XDeltaKind::TwoControl => (
            3,
            Gate::XDelta {
                c1: 0,
                c2: 1,
                t: 2,
                inverse,
            },
        ),
        XDeltaKind::ThreeControl => (
            4,
            Gate::XDelta3 {
                c0: 0,
                c1: 1,
                c2: 2,
                t: 3,
                inverse,
            },
        ),
    };
    let mid = Circuit::from_gates(nq, vec![gate]).expect("qubits in range");
    XDeltaTemplate {
        gate,
        lowered: lower(&mid, style),
        matrix: simulate(&mid).expect("small register"),
    }
}

/// Operator on each target, used by callers that need the oracle.
pub fn target_ops(spec: &MCGateSpec) -> Vec<TargetOp> {
    spec.target_ops()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{counts, critical_path_depth, GateClass};
    use crate::sim::{equivalent, oracle_unitary, EquivMode};
    use crate::su2::UnitVec3;

    fn axis() -> AxisAngle {
        AxisAngle::new(UnitVec3::normalized(0.3, -0.5, 0.8).unwrap(), 1.234)
    }

    fn exact(c: &Circuit, spec: &MCGateSpec) -> f64 {
        let u = simulate(c).unwrap();
        let v = oracle_unitary(spec, &Layout::ata(spec)).unwrap();
        equivalent(&u, &v, EquivMode::Exact, 1e-9)
            .unwrap()
            .max_error
    }

    #[test]
    fn partition_halves_even_and_odd() {
        let p = partition_controls(&(0..6).collect::<Vec<_>>(), 0).unwrap();
        assert_eq!(p.c1, vec![0, 1, 2]);
        assert_eq!(p.c2, vec![3, 4, 5]);
        assert_eq!(p.c2_prime, vec![5]);
        assert_eq!(p.c1_prime, vec![2]);
        let p = partition_controls(&(0..7).collect::<Vec<_>>(), 0).unwrap();
        assert_eq!(p.c2, vec![3, 4, 5, 6]);
        assert_eq!(p.c1_prime, vec![2, 1]);
        assert_eq!(p.c2_prime, vec![5]);
    }

    #[test]
    fn partition_with_borrowed_pairs() {
        let p = partition_controls(&(0..8).collect::<Vec<_>>(), 1).unwrap();
        assert_eq!(p.c1_chi, vec![0, 1]);
        assert_eq!(p.c1_single(), &[2, 3, 4]);
        assert_eq!(p.c2, vec![5, 6, 7]);
        assert!(partition_controls(&(0..7).collect::<Vec<_>>(), 1).is_err());
    }

    #[test]
    fn parity_tree_uses_m_minus_one_cnots() {
        for m in 1..=9 {
            let t: Vec<usize> = (0..m).collect();
            assert_eq!(parity_tree(&t).len(), m - 1);
        }
    }

    #[test]
    fn merged_pairs_match_their_halves() {
        for style in [LowerStyle::Standard, LowerStyle::TDepth] {
            let mut halves = daggered(xdelta_o2(0, 1, style));
            halves.extend(xdelta_o2(1, 0, style));
            let a = simulate(&Circuit::from_gates(2, halves).unwrap()).unwrap();
            let b = simulate(&Circuit::from_gates(2, merged_pair(0, 1, style)).unwrap()).unwrap();
            assert!(equivalent(&a, &b, EquivMode::Exact, 1e-12).unwrap().pass);
        }
    }

    #[test]
    fn vchain_three_controls_counts() {
        let c = synth_vchain_z(&[0, 1, 2], &[3, 4], SynthOptions::default()).unwrap();
        let k = counts(&c).unwrap();
        assert_eq!((k.cnot, k.t, k.h), (10, 12, 4));
    }

    #[test]
    fn vchain_layered_equals_mid_level() {
        let mid = vchain_z_mid_level(&[0, 1, 2, 3], &[4, 5, 6]).unwrap();
        for opts in [SynthOptions::default(), SynthOptions::tdepth()] {
            let low = synth_vchain_z(&[0, 1, 2, 3], &[4, 5, 6], opts).unwrap();
            let r = equivalent(
                &simulate(&low).unwrap(),
                &simulate(&mid).unwrap(),
                EquivMode::Exact,
                1e-10,
            )
            .unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn mcsu2_small_n_is_exact() {
        for n in 1..=7 {
            let spec = MCGateSpec::mcsu2(n, axis());
            for opts in [
                SynthOptions::default(),
                SynthOptions::tdepth(),
                SynthOptions {
                    apply_depth_reductions: false,
                    ..SynthOptions::default()
                },
            ] {
                let c = synth_mcsu2_ata(&spec, opts).unwrap();
                let e = exact(&c, &spec);
                assert!(e < 1e-9, "n = {n}, {opts:?}: error {e}");
            }
        }
    }

    #[test]
    fn mcsu2_theorem_counts_at_six() {
        let spec = MCGateSpec::mcsu2(6, axis());
        let k = counts(&synth_mcsu2_ata(&spec, SynthOptions::default()).unwrap()).unwrap();
        assert_eq!((k.cnot, k.t, k.h, k.rot), (40, 48, 16, 8));
    }

    #[test]
    fn mid_level_toffoli_count() {
        let mid = mcsu2_ata_mid_level(&MCGateSpec::mcsu2(9, axis())).unwrap();
        let xd = mid
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::XDelta { .. }))
            .count();
        let iz = mid
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::IZ { .. }))
            .count();
        assert_eq!((xd, iz), (4 * 9 - 16, 4));
    }

    #[test]
    fn mcx_is_correct_up_to_phase_with_ancilla_restored() {
        for n in 1..=6 {
            let spec = MCGateSpec::mcx(n, 1);
            let c = synth_mcx_ata(&spec, SynthOptions::default()).unwrap();
            let u = simulate(&c).unwrap();
            let v = oracle_unitary(&spec, &Layout::ata(&spec)).unwrap();
            let mode = EquivMode::TensorIdentity {
                borrowed: vec![n + 1],
            };
            let r = equivalent(&u, &v, mode, 1e-9).unwrap();
            assert!(r.pass, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn mcx_counts_at_five() {
        let k = counts(&synth_mcx_ata(&MCGateSpec::mcx(5, 1), SynthOptions::default()).unwrap())
            .unwrap();
        assert_eq!((k.cnot, k.t, k.h, k.rot), (40, 48, 20, 0));
    }

    #[test]
    fn tdepth_variant_counts() {
        for n in 6..=9 {
            let spec = MCGateSpec::mcsu2(n, axis());
            let k = counts(&synth_mcsu2_ata(&spec, SynthOptions::tdepth()).unwrap()).unwrap();
            let want = if n % 2 == 0 {
                25 * n / 2 - 30
            } else {
                (25 * n - 53) / 2
            };
            assert_eq!(k.cnot, want, "n = {n}");
            let c = synth_mcsu2_ata(&spec, SynthOptions::tdepth()).unwrap();
            assert!(
                critical_path_depth(&c, GateClass::T).unwrap() <= 4 * n,
                "n = {n}"
            );
        }
    }

    fn axis2() -> AxisAngle {
        AxisAngle::new(UnitVec3::normalized(-0.7, 0.1, 0.4).unwrap(), -2.1)
    }

    fn check(c: &Circuit, spec: &MCGateSpec, mode: EquivMode) {
        let u = simulate(c).unwrap();
        let v = oracle_unitary(spec, &Layout::ata(spec)).unwrap();
        let r = equivalent(&u, &v, mode, 1e-9).unwrap();
        assert!(r.pass, "{spec:?}: {r:?}");
    }

    #[test]
    fn borrowed_pairs_are_exact_and_restore_the_ancilla() {
        let spec = MCGateSpec::new(GateKind::Su2(axis()), 8, Ancilla::Dirty(1)).unwrap();
        for opts in [SynthOptions::default(), SynthOptions::tdepth()] {
            let c = synth_mcsu2_ata(&spec, opts).unwrap();
            check(&c, &spec, EquivMode::Exact);
        }
    }

    #[test]
    fn borrowed_pair_counts() {
        for n in 8..=16 {
            for chi in 0..=(n - 6) / 2 {
                let spec = MCGateSpec::new(GateKind::Su2(axis()), n, Ancilla::Dirty(chi)).unwrap();
                let k = counts(&synth_mcsu2_ata(&spec, SynthOptions::default()).unwrap()).unwrap();
                assert_eq!(k.cnot, 12 * n - 32 - 8 * chi, "n = {n}, chi = {chi}");
                assert_eq!(k.t, 16 * n - 48 - 16 * chi);
                assert_eq!(k.h, 8 * n - 32 - 8 * chi);
            }
        }
    }

    #[test]
    fn mcu2_matches_on_the_clean_subspace() {
        for n in 1..=5 {
            let spec = MCGateSpec::mcu2(n, U2Spec::new(axis(), 0.77));
            let c = synth_mcu2_ata(&spec, SynthOptions::default()).unwrap();
            let a = Layout::ata(&spec).clean[0];
            check(&c, &spec, EquivMode::Subspace { qubit: a, value: 0 });
        }
    }

    #[test]
    fn mcu2_counts() {
        let k = counts(
            &synth_mcu2_ata(
                &MCGateSpec::mcu2(7, U2Spec::new(axis(), 0.3)),
                SynthOptions::default(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(
            (k.cnot, k.t, k.h, k.rot),
            (12 * 7 - 32 + 8, 16 * 7 - 48, 8 * 7 - 30, 11)
        );
    }

    #[test]
    fn multi_target_su2_is_exact() {
        for (n, m) in [(2, 2), (3, 3), (4, 2), (5, 3)] {
            let ops = [axis(), axis2(), axis()][..m].to_vec();
            let spec = MCGateSpec::new(GateKind::MultiSu2(ops), n, Ancilla::None).unwrap();
            let c = synth_mcsu2_ata(&spec, SynthOptions::default()).unwrap();
            check(&c, &spec, EquivMode::Exact);
        }
    }

    #[test]
    fn multi_target_x_is_correct_up_to_phase() {
        for (n, m) in [(1, 2), (2, 3), (3, 2), (5, 3)] {
            let spec = MCGateSpec::new(GateKind::MultiX(m), n, Ancilla::None).unwrap();
            let c = synth_mcx_ata(&spec, SynthOptions::default()).unwrap();
            check(&c, &spec, EquivMode::GlobalPhase);
        }
    }

    #[test]
    fn build_xdelta_is_hermitian_for_two_controls() {
        let x = build_xdelta(XDeltaKind::TwoControl, LowerStyle::Standard, false);
        let twice = Circuit::from_gates(3, vec![x.gate, x.gate]).unwrap();
        let u = simulate(&twice).unwrap();
        assert!(
            equivalent(&u, &DenseUnitary::identity(3), EquivMode::Exact, 1e-12)
                .unwrap()
                .pass
        );
    }
}
