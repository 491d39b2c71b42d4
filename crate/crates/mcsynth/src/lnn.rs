//! Synthesizers for linear-nearest-neighbour (LNN) hardware.
//!
//! Qubits sit on a line and two-qubit gates may only act on neighbours. The
//! all-to-all macro carries over once every multi-controlled Z is replaced by
//! a Z̄-chain: a ladder of CNOT and relative-phase Toffoli steps walking from
//! the bottom of the line up to a small head gate and back. A chain places a
//! controlled Z on every non-control qubit below its head, so it acts as the
//! required MCZ on the target at the bottom, plus diagonal terms on the other
//! qubits that cancel between a block and its adjoint.
//!
//! Targets (or the borrowed qubit of an MCX) are first moved to the nearer end
//! of the line with chains of two-CNOT partial swaps. The CNOTs that a partial
//! swap leaves behind point from passed qubits into the moved qubit and
//! commute with the operator applied in between, so they cancel on the way
//! back.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::ata::{
    fanout, phase_slots, require_distinct, su2_slots, su2_targets, u2_targets, x_slots, TargetSlots,
};
use crate::circuit::{cancel_adjacent_inverses, cx, daggered, is_cx, is_h, Circuit, Gate};
use crate::error::{Error, Result};
use crate::spec::{GateKind, Layout, MCGateSpec};

/// Role of one position on the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Control qubit.
    Control,
    /// Target qubit.
    Target,
    /// Borrowed qubit in an arbitrary state.
    Dirty,
    /// Helper qubit starting and ending in |0⟩.
    Clean,
    /// Unused qubit.
    Idle,
}

impl Role {
    /// Letter used by the placement syntax.
    pub fn letter(self) -> char {
        match self {
            Role::Control => 'c',
            Role::Target => 't',
            Role::Dirty => 'a',
            Role::Clean => 'z',
            Role::Idle => '.',
        }
    }

    /// Inverse of [`Role::letter`].
    pub fn from_letter(c: char) -> Option<Role> {
        match c {
            'c' => Some(Role::Control),
            't' => Some(Role::Target),
            'a' => Some(Role::Dirty),
            'z' => Some(Role::Clean),
            '.' => Some(Role::Idle),
            _ => None,
        }
    }
}

/// Assignment of roles to the positions of a line of qubits.
///
/// Position `i` is qubit `i` of the circuit register. Synthesis only touches
/// the smallest window holding every non-idle role.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LnnPlacement {
    roles: Vec<Role>,
}

impl LnnPlacement {
    /// Placement from an explicit role list.
    pub fn new(roles: Vec<Role>) -> Self {
        Self { roles }
    }

    /// Parses a comma-separated list of role letters, such as `c,.,t,a`.
    pub fn parse(s: &str) -> Result<Self> {
        let roles = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let mut chars = tok.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Role::from_letter(c),
                    _ => None,
                }
                .ok_or_else(|| Error::InvalidPlacement(format!("unknown role {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { roles })
    }

    /// Placement matching an all-to-all layout.
    pub fn from_layout(layout: &Layout) -> Result<Self> {
        let mut roles = vec![Role::Idle; layout.num_qubits];
        let groups = [
            (&layout.controls, Role::Control),
            (&layout.targets, Role::Target),
            (&layout.dirty, Role::Dirty),
            (&layout.clean, Role::Clean),
        ];
        for (qs, role) in groups {
            for &q in qs {
                let slot = roles
                    .get_mut(q)
                    .ok_or_else(|| Error::InvalidPlacement(format!("qubit {q} out of range")))?;
                if *slot != Role::Idle {
                    return Err(Error::InvalidPlacement(format!("qubit {q} has two roles")));
                }
                *slot = role;
            }
        }
        Ok(Self { roles })
    }

    /// Role of every position.
    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Line length.
    pub fn num_qubits(&self) -> usize {
        self.roles.len()
    }

    /// Positions holding `role`, ascending.
    pub fn positions(&self, role: Role) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&i| self.roles[i] == role)
            .collect()
    }

    /// Control positions.
    pub fn controls(&self) -> Vec<usize> {
        self.positions(Role::Control)
    }

    /// Target positions.
    pub fn targets(&self) -> Vec<usize> {
        self.positions(Role::Target)
    }

    /// Smallest range of positions holding every non-idle role.
    pub fn window(&self) -> Range<usize> {
        let busy = |r: &Role| *r != Role::Idle;
        match (
            self.roles.iter().position(busy),
            self.roles.iter().rposition(busy),
        ) {
            (Some(lo), Some(hi)) => lo..hi + 1,
            _ => 0..0,
        }
    }

    /// Window length.
    pub fn k(&self) -> usize {
        self.window().len()
    }

    /// Role layout on the full register, targets and helpers in ascending
    /// position order.
    pub fn layout(&self) -> Layout {
        Layout {
            num_qubits: self.roles.len(),
            controls: self.positions(Role::Control),
            targets: self.positions(Role::Target),
            dirty: self.positions(Role::Dirty),
            clean: self.positions(Role::Clean),
        }
    }

    /// Checks that the role counts fit `spec`.
    pub fn check(&self, spec: &MCGateSpec) -> Result<()> {
        self.layout().check(spec)?;
        if self.positions(Role::Clean).len() != spec.ancilla.clean() {
            return Err(Error::InvalidPlacement(format!(
                "{} clean qubits placed, {} expected",
                self.positions(Role::Clean).len(),
                spec.ancilla.clean()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for LnnPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.roles.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", r.letter())?;
        }
        Ok(())
    }
}

impl FromStr for LnnPlacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Split of a control mask between the two halves of the LNN macro.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnnPartition {
    /// Controls of the first half.
    pub c1_mask: Vec<bool>,
    /// Controls of the second half.
    pub c2_mask: Vec<bool>,
    /// One-based index, counted from the first control of the half, of the
    /// first position that is not in `c1_mask`; `0` for an empty half.
    pub l0_1: usize,
    /// Same for `c2_mask`.
    pub l0_2: usize,
    /// `l0_1 − 2`: `1` when the first two controls of the half are adjacent.
    pub l0_prime_1: usize,
    /// `l0_2 − 2`.
    pub l0_prime_2: usize,
}

impl LnnPartition {
    /// Number of controls in each half.
    pub fn sizes(&self) -> (usize, usize) {
        let n = |m: &[bool]| m.iter().filter(|&&b| b).count();
        (n(&self.c1_mask), n(&self.c2_mask))
    }
}

fn head_offset(mask: &[bool]) -> usize {
    match mask.iter().position(|&b| b) {
        None => 0,
        Some(f) => {
            let rest = mask[f + 1..].iter().position(|&b| !b);
            rest.map_or(mask.len() - f, |r| r + 1) + 1
        }
    }
}

/// Splits the controls of `mask` so that within each half only the first
/// two controls may be neighbours.
///
/// With `targets = None` the first position must be a control; it seeds the
/// first half. With a target mask, no two controls of one half may be
/// neighbours, where the qubits just above and below a run of targets count
/// as neighbours.
pub fn partition_controls_lnn(mask: &[bool], targets: Option<&[bool]>) -> Result<LnnPartition> {
    if !mask.iter().any(|&b| b) {
        return Err(Error::InvalidSpec("empty control set".into()));
    }
    let k = mask.len();
    let mut c1 = vec![false; k];
    let mut c2 = vec![false; k];
    match targets {
        None => {
            if !mask[0] {
                return Err(Error::InvalidPlacement(
                    "the first qubit of the line must be a control".into(),
                ));
            }
            c1[0] = true;
            let mut c2_head = None;
            for l in 1..k {
                if !mask[l] {
                    continue;
                }
                if l == 1 || (!c1[l - 1] && c2_head != Some(l - 1)) {
                    c1[l] = true;
                } else {
                    c2[l] = true;
                    c2_head.get_or_insert(l);
                }
            }
        }
        Some(tau) => {
            if tau.len() != k {
                return Err(Error::InvalidSpec(format!(
                    "target mask has {} positions, control mask {k}",
                    tau.len()
                )));
            }
            let mut prev: Option<usize> = None;
            for l in 0..k {
                if mask[l] && tau[l] {
                    return Err(Error::InvalidSpec(format!(
                        "position {l} is control and target"
                    )));
                }
                if mask[l] {
                    if prev.is_none_or(|p| !c1[p]) {
                        c1[l] = true;
                    } else {
                        c2[l] = true;
                    }
                }
                if !tau[l] {
                    prev = Some(l);
                }
            }
        }
    }
    let (l0_1, l0_2) = (head_offset(&c1), head_offset(&c2));
    Ok(LnnPartition {
        l0_prime_1: l0_1.saturating_sub(2),
        l0_prime_2: l0_2.saturating_sub(2),
        c1_mask: c1,
        c2_mask: c2,
        l0_1,
        l0_2,
    })
}

/// One ladder step of a Z̄-chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Cx {
        c: usize,
        t: usize,
    },
    /// Relative-phase Toffoli with controls `b`, `c` and target `a`, where
    /// `a`, `b`, `c` are consecutive on the line.
    XDelta {
        a: usize,
        b: usize,
        c: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Head {
    Cz {
        top: usize,
        low: usize,
    },
    /// iZ on `(a, b → c)` followed by a SWAP of `a` and `b`.
    SwapIz {
        a: usize,
        b: usize,
        c: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ChainPlan {
    steps: Vec<Step>,
    head: Head,
}

fn plan_chain(q: &[usize], ctrl: &[bool]) -> Result<ChainPlan> {
    let k = q.len();
    if ctrl.len() != k {
        return Err(Error::InvalidSpec(format!(
            "control mask has {} positions, chain {k}",
            ctrl.len()
        )));
    }
    if k < 2 || !ctrl[0] {
        return Err(Error::ConstraintViolation(
            "a chain starts with a control and has at least two qubits".into(),
        ));
    }
    if ctrl[k - 1] {
        return Err(Error::ConstraintViolation(
            "the bottom qubit is a control".into(),
        ));
    }
    let l0 = (1..k).find(|&l| !ctrl[l]).expect("bottom is not a control");
    if l0 > 2 {
        return Err(Error::ConstraintViolation(
            "more than two adjacent controls at the head".into(),
        ));
    }
    let mut steps = Vec::new();
    for l in (l0 + 1..k).rev() {
        if ctrl[l] {
            if ctrl[l - 1] {
                return Err(Error::ConstraintViolation(format!(
                    "controls at positions {} and {l} are adjacent",
                    l - 1
                )));
            }
        } else if !ctrl[l - 1] {
            steps.push(Step::Cx {
                c: q[l],
                t: q[l - 1],
            });
        } else {
            steps.push(Step::XDelta {
                a: q[l - 2],
                b: q[l - 1],
                c: q[l],
            });
        }
    }
    let head = if l0 == 1 {
        Head::Cz {
            top: q[0],
            low: q[1],
        }
    } else {
        Head::SwapIz {
            a: q[0],
            b: q[1],
            c: q[2],
        }
    };
    Ok(ChainPlan { steps, head })
}

/// Clifford+T form of [`Gate::XDelta`] `{c1: b, c2: c, t: a}` on three
/// consecutive qubits: 5 CX, 4 T, 2 H.
pub fn xdelta_lnn(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::H(a),
        cx(a, b),
        Gate::Tdg(a),
        Gate::T(b),
        cx(b, a),
        cx(c, b),
        cx(b, a),
        Gate::T(a),
        Gate::Tdg(b),
        cx(a, b),
        Gate::H(a),
    ]
}

/// Clifford+T form of iZ on `(a, b → c)` followed by SWAP(a, b), for three
/// consecutive qubits: 6 CX, 4 T.
pub fn swap_iz_lnn(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        cx(c, b),
        cx(b, a),
        Gate::T(b),
        Gate::Tdg(c),
        cx(c, b),
        cx(a, b),
        Gate::Tdg(a),
        Gate::T(b),
        cx(b, a),
        cx(c, b),
    ]
}

/// Doubly controlled Z on three consecutive qubits (11 CX, 7 T).
pub fn ccz_lnn(x: usize, y: usize, z: usize) -> Vec<Gate> {
    let mut v = swap_iz_lnn(x, y, z);
    v.extend([cx(x, y), cx(y, x), cx(x, y)]);
    v.extend([Gate::Tdg(x), Gate::Tdg(y), cx(x, y), Gate::T(y), cx(x, y)]);
    v
}

impl ChainPlan {
    fn lowered(&self) -> Vec<Gate> {
        let step = |s: &Step| match *s {
            Step::Cx { c, t } => vec![cx(c, t)],
            Step::XDelta { a, b, c } => xdelta_lnn(a, b, c),
        };
        let mut out: Vec<Gate> = self.steps.iter().flat_map(step).collect();
        match self.head {
            Head::Cz { top, low } => out.extend([Gate::H(top), cx(low, top), Gate::H(top)]),
            Head::SwapIz { a, b, c } => out.extend(swap_iz_lnn(a, b, c)),
        }
        for s in self.steps.iter().rev() {
            out.extend(daggered(step(s)));
        }
        out
    }

    fn mid_level(&self) -> Vec<Gate> {
        let step = |s: &Step, inverse: bool| match *s {
            Step::Cx { c, t } => cx(c, t),
            Step::XDelta { a, b, c } => Gate::XDelta {
                c1: b,
                c2: c,
                t: a,
                inverse,
            },
        };
        let mut out: Vec<Gate> = self.steps.iter().map(|s| step(s, false)).collect();
        match self.head {
            Head::Cz { top, low } => out.push(Gate::CZ(low, top)),
            Head::SwapIz { a, b, c } => out.extend([
                Gate::IZ {
                    c1: a,
                    c2: b,
                    t: c,
                    inverse: false,
                },
                Gate::Swap(a, b),
            ]),
        }
        out.extend(self.steps.iter().rev().map(|s| step(s, true)));
        out
    }

    fn head_swap(&self) -> Option<(usize, usize)> {
        match self.head {
            Head::Cz { .. } => None,
            Head::SwapIz { a, b, .. } => Some((a, b)),
        }
    }
}

/// A lowered Z̄-chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ZbarChain {
    /// Clifford+T circuit.
    pub circuit: Circuit,
    /// Pair of head controls exchanged by the chain when its first two
    /// controls are neighbours. The circuit also applies CS on that pair;
    /// both cancel against the adjoint chain of the macro.
    pub head_swap: Option<(usize, usize)>,
}

/// Z̄-chain over the consecutive qubits `qubits` (top first) with control
/// flags `ctrl`.
///
/// The result is `∏ MCZ(C^j ∪ {q_j})` over every non-control `q_j` below the
/// head, where `C^j` holds the controls above `q_j`. When the first two
/// controls are neighbours the product is followed by CS and SWAP on them.
pub fn synth_zbar_chain(num_qubits: usize, qubits: &[usize], ctrl: &[bool]) -> Result<ZbarChain> {
    let plan = plan_chain(qubits, ctrl)?;
    Ok(ZbarChain {
        circuit: Circuit::from_gates(num_qubits, plan.lowered())?,
        head_swap: plan.head_swap(),
    })
}

/// Mid-level form of [`synth_zbar_chain`], with [`Gate::XDelta`], CZ, iZ
/// and SWAP gates left unlowered.
pub fn zbar_chain_mid_level(num_qubits: usize, qubits: &[usize], ctrl: &[bool]) -> Result<Circuit> {
    Circuit::from_gates(num_qubits, plan_chain(qubits, ctrl)?.mid_level())
}

/// How a moved qubit exchanges places with the qubits it passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RouteStyle {
    /// Two-CX partial swaps. The leftover CX from each passed qubit into the
    /// moved one commutes with a middle operator that is x-type on the moved
    /// qubit, so prefix and suffix still cancel it.
    TargetSwap,
    /// Full three-CX swaps.
    Plain,
}

/// SWAP chains that bring qubits to one end of the window.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    /// Gates moving the qubits out.
    pub prefix: Circuit,
    /// Gates moving them back: the inverse of `prefix`.
    pub suffix: Circuit,
    /// Roles after the prefix.
    pub placement: LnnPlacement,
    /// True when the qubits went to the top of the window. The line is then
    /// read bottom to top, so that the moved qubits always end up last.
    pub reversed: bool,
    /// CX gates, on positions after the prefix, by which the prefix differs
    /// from the pure permutation: each points from a passed qubit into a
    /// moved one. Empty for [`RouteStyle::Plain`].
    pub absorbed: Vec<Gate>,
    /// Window positions in routing order; the moved qubits occupy the end.
    pub line: Vec<usize>,
    origin: Vec<usize>,
}

impl Route {
    /// Original position of the qubit found at `position` after the prefix.
    pub fn origin(&self, position: usize) -> usize {
        self.origin[position]
    }

    /// Position after the prefix of the qubit originally at `original`.
    pub fn position_of(&self, original: usize) -> usize {
        self.origin
            .iter()
            .position(|&o| o == original)
            .expect("every position has an origin")
    }
}

fn edge_cost(mut d: Vec<usize>) -> usize {
    d.sort_unstable();
    d.iter().enumerate().map(|(i, &x)| x - i).sum()
}

/// Moves `mover` to the nearer end of the placement window (ties go to the
/// top).
pub fn route_to_edge(placement: &LnnPlacement, mover: usize, style: RouteStyle) -> Result<Route> {
    route_many(placement, &[mover], style)
}

/// Moves every qubit of `movers` to one end of the window, nearest first,
/// choosing the end with the fewer exchanges (ties go to the top).
pub fn route_many(placement: &LnnPlacement, movers: &[usize], style: RouteStyle) -> Result<Route> {
    let w = placement.window();
    let nq = placement.num_qubits();
    require_distinct(nq, &[movers])?;
    if let Some(&m) = movers.iter().find(|m| !w.contains(m)) {
        return Err(Error::InvalidPlacement(format!(
            "qubit {m} lies outside the window"
        )));
    }
    let to_bottom = edge_cost(movers.iter().map(|&m| w.end - 1 - m).collect());
    let to_top = edge_cost(movers.iter().map(|&m| m - w.start).collect());
    let reversed = to_top <= to_bottom;
    let line: Vec<usize> = if reversed {
        w.clone().rev().collect()
    } else {
        w.clone().collect()
    };
    let idx = |p: usize| line.iter().position(|&x| x == p).expect("in window");
    let mut order: Vec<usize> = movers.to_vec();
    order.sort_by_key(|&m| std::cmp::Reverse(idx(m)));
    let mut origin: Vec<usize> = (0..nq).collect();
    let mut gates = Vec::new();
    let mut passed = Vec::new();
    for (i, &m) in order.iter().enumerate() {
        let dest = line.len() - 1 - i;
        for j in idx(m)..dest {
            let (a, b) = (line[j], line[j + 1]);
            match style {
                RouteStyle::TargetSwap => gates.extend([cx(a, b), cx(b, a)]),
                RouteStyle::Plain => gates.extend([cx(a, b), cx(b, a), cx(a, b)]),
            }
            passed.push((origin[b], m));
            origin.swap(a, b);
        }
    }
    let mut roles = placement.roles().to_vec();
    for (p, &o) in origin.iter().enumerate() {
        roles[p] = placement.roles()[o];
    }
    let pos = |o: usize| origin.iter().position(|&x| x == o).expect("permutation");
    let absorbed = match style {
        RouteStyle::TargetSwap => passed.iter().map(|&(p, m)| cx(pos(p), pos(m))).collect(),
        RouteStyle::Plain => Vec::new(),
    };
    let suffix = daggered(gates.clone());
    Ok(Route {
        prefix: Circuit::from_gates(nq, gates)?,
        suffix: Circuit::from_gates(nq, suffix)?,
        placement: LnnPlacement::new(roles),
        reversed,
        absorbed,
        line,
        origin,
    })
}

/// The macro in the routed frame, split into the outer target slots and the
/// part between them.
struct MacroParts {
    first: Vec<Gate>,
    body: Vec<Gate>,
    last: Vec<Gate>,
}

/// Builds the macro over `line` (top first, the chain targets last) where
/// `ctrl[i]` marks the controls of the multi-controlled Z.
fn lnn_macro(line: &[usize], ctrl: &[bool], slots: &[TargetSlots]) -> Result<MacroParts> {
    let f = ctrl
        .iter()
        .position(|&b| b)
        .ok_or_else(|| Error::InvalidSpec("no controls".into()))?;
    let sub = &line[f..];
    let mut p = partition_controls_lnn(&ctrl[f..], None)?;
    if matches!(p.sizes(), (n1, 0) if n1 >= 2) {
        // A lone control near the bottom keeps four blocks: two short
        // chains cost less T than the two-block form over all controls.
        let last = p.c1_mask.iter().rposition(|&b| b).expect("non-empty");
        p.c1_mask[last] = false;
        p.c2_mask[last] = true;
    }
    let chain1 = plan_chain(sub, &p.c1_mask)?.lowered();
    let collect =
        |s: &dyn Fn(&TargetSlots) -> Vec<Gate>| -> Vec<Gate> { slots.iter().flat_map(s).collect() };
    let mut body = Vec::new();
    if let Some(f2) = p.c2_mask.iter().position(|&b| b) {
        let chain2 = plan_chain(&sub[f2..], &p.c2_mask[f2..])?.lowered();
        body.extend(chain1.iter().copied());
        body.extend(collect(&|t| t.four[1].clone()));
        body.extend(chain2.iter().copied());
        body.extend(collect(&|t| t.four[2].clone()));
        body.extend(daggered(chain1));
        body.extend(collect(&|t| t.four[3].clone()));
        body.extend(daggered(chain2));
        Ok(MacroParts {
            first: collect(&|t| t.four[0].clone()),
            body,
            last: collect(&|t| t.four[4].clone()),
        })
    } else {
        body.extend(chain1.iter().copied());
        body.extend(collect(&|t| t.two[1].clone()));
        body.extend(daggered(chain1));
        Ok(MacroParts {
            first: collect(&|t| t.two[0].clone()),
            body,
            last: collect(&|t| t.two[2].clone()),
        })
    }
}

fn control_flags(route: &Route) -> Vec<bool> {
    route
        .line
        .iter()
        .map(|&p| route.placement.roles()[p] == Role::Control)
        .collect()
}

fn finish(num_qubits: usize, gates: Vec<Gate>) -> Result<Circuit> {
    let g = cancel_adjacent_inverses(&gates, is_cx);
    let g = cancel_adjacent_inverses(&g, is_h);
    Circuit::from_gates(num_qubits, g)
}

type SlotMaker = Box<dyn Fn(usize) -> TargetSlots>;

/// Qubit operator slots for a rotation-type spec: SU(2) targets plus the
/// phase slot on the clean qubit for U(2) targets.
fn rotation_plan(
    spec: &MCGateSpec,
    placement: &LnnPlacement,
) -> Result<(Vec<usize>, Vec<SlotMaker>)> {
    let targets = placement.targets();
    let mut movers = targets.clone();
    let mut makers: Vec<SlotMaker> = Vec::new();
    if spec.is_u2() {
        let ops = u2_targets(spec)?;
        let psi: f64 = ops.iter().map(|u| u.phase).sum();
        for u in ops {
            makers.push(Box::new(move |q| su2_slots(&u.su2, q)));
        }
        let clean = placement.positions(Role::Clean);
        movers.push(clean[0]);
        makers.push(Box::new(move |q| phase_slots(psi, q)));
    } else {
        for a in su2_targets(spec)? {
            makers.push(Box::new(move |q| su2_slots(&a, q)));
        }
    }
    Ok((movers, makers))
}

fn synth_rotations(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    let (movers, makers) = rotation_plan(spec, placement)?;
    let route = route_many(placement, &movers, RouteStyle::TargetSwap)?;
    let slots: Vec<TargetSlots> = movers
        .iter()
        .zip(&makers)
        .map(|(&m, make)| make(route.position_of(m)))
        .collect();
    let parts = lnn_macro(&route.line, &control_flags(&route), &slots)?;
    let back = |g: &Gate| g.map_qubits(|q| route.origin(q));
    let mut gates: Vec<Gate> = parts.first.iter().map(back).collect();
    gates.extend(route.prefix.gates().iter().copied());
    gates.extend(parts.body);
    gates.extend(route.suffix.gates().iter().copied());
    gates.extend(parts.last.iter().map(back));
    finish(placement.num_qubits(), gates)
}

fn check_spec(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<()> {
    spec.validate()?;
    placement.check(spec)
}

/// Multi-controlled SU(2) gate (one or several targets) on a line, exact.
///
/// The targets are routed to the nearer end of the window; other helpers in
/// the placement stay idle.
pub fn synth_mcsu2_lnn(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    check_spec(spec, placement)?;
    su2_targets(spec)?;
    synth_rotations(spec, placement)
}

/// Multi-controlled U(2) gate (one or several targets) on a line with one
/// clean qubit, correct up to a global phase while that qubit starts in |0⟩.
pub fn synth_mcu2_lnn(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    check_spec(spec, placement)?;
    u2_targets(spec)?;
    synth_rotations(spec, placement)
}

/// Brings `group` together around `anchor` with full swaps, applies the
/// gates produced by `inner` on the consecutive positions, and undoes the
/// swaps. `inner` receives the final positions of `anchor` and of `group`.
fn gathered(
    line: &[usize],
    anchor: usize,
    group: &[usize],
    inner: impl Fn(usize, &[usize]) -> Vec<Gate>,
) -> Vec<Gate> {
    let mut content: Vec<usize> = line.to_vec();
    let at = |content: &[usize], q: usize| content.iter().position(|&x| x == q).expect("on line");
    let mut order = group.to_vec();
    let a = at(&content, anchor);
    order.sort_by_key(|&q| at(&content, q).abs_diff(a));
    let mut swaps = Vec::new();
    let (mut lo, mut hi) = (a, a);
    for &q in &order {
        let mut i = at(&content, q);
        while i + 1 < lo {
            swaps.extend([
                cx(line[i], line[i + 1]),
                cx(line[i + 1], line[i]),
                cx(line[i], line[i + 1]),
            ]);
            content.swap(i, i + 1);
            i += 1;
        }
        while i > hi + 1 {
            swaps.extend([
                cx(line[i - 1], line[i]),
                cx(line[i], line[i - 1]),
                cx(line[i - 1], line[i]),
            ]);
            content.swap(i - 1, i);
            i -= 1;
        }
        lo = lo.min(i);
        hi = hi.max(i);
    }
    let group_at: Vec<usize> = group.iter().map(|&q| line[at(&content, q)]).collect();
    let mut out = swaps.clone();
    out.extend(inner(line[at(&content, anchor)], &group_at));
    out.extend(daggered(swaps));
    out
}

/// MCX with at most two controls on the line `line`.
fn small_mcx(line: &[usize], controls: &[usize], t: usize) -> Result<Vec<Gate>> {
    match controls.len() {
        1 => Ok(gathered(line, t, controls, |t, c| vec![cx(c[0], t)])),
        2 => Ok(gathered(line, t, controls, |t, c| {
            let mut three = [t, c[0], c[1]];
            three.sort_unstable_by_key(|&q| line.iter().position(|&x| x == q));
            let mut v = vec![Gate::H(t)];
            v.extend(ccz_lnn(three[0], three[1], three[2]));
            v.push(Gate::H(t));
            v
        })),
        _ => Err(Error::InvalidSpec("expected one or two controls".into())),
    }
}

/// Free position nearest to an end of the window, used as borrowed qubit.
fn borrowed_qubit(placement: &LnnPlacement) -> Result<usize> {
    let w = placement.window();
    w.clone()
        .filter(|&p| matches!(placement.roles()[p], Role::Dirty | Role::Idle))
        .min_by_key(|&p| ((p - w.start).min(w.end - 1 - p), p))
        .ok_or_else(|| {
            Error::InvalidPlacement(
                "an MCX with three or more controls needs a free qubit in the window".into(),
            )
        })
}

/// Multi-controlled X on a line, correct up to a global phase.
///
/// With one target and three or more controls, any dirty or idle position
/// inside the window serves as the borrowed qubit; it is restored. With
/// several targets no helper is needed.
pub fn synth_mcx_lnn(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    check_spec(spec, placement)?;
    if !spec.is_x() {
        return Err(Error::InvalidSpec("expected an X target".into()));
    }
    let nq = placement.num_qubits();
    let controls = placement.controls();
    let targets = placement.targets();
    let window: Vec<usize> = placement.window().collect();
    if targets.len() > 1 {
        let route = route_many(placement, &targets, RouteStyle::TargetSwap)?;
        let m = targets.len();
        let block = &route.line[route.line.len() - m..];
        let (pre, post) = fanout(block);
        let t0 = block[0];
        let routed_controls: Vec<usize> = controls.iter().map(|&c| route.position_of(c)).collect();
        let mut inner = pre;
        if controls.len() <= 2 {
            inner.extend(small_mcx(&route.line, &routed_controls, t0)?);
        } else {
            let a = block[m - 1];
            let mut ctrl = control_flags(&route);
            let i0 = route.line.iter().position(|&x| x == t0).expect("on line");
            ctrl[i0] = true;
            let parts = lnn_macro(&route.line, &ctrl, &[x_slots(a)])?;
            inner.push(Gate::H(t0));
            inner.extend(parts.first);
            inner.extend(parts.body);
            inner.extend(parts.last);
            inner.push(Gate::H(t0));
        }
        inner.extend(post);
        let mut gates = route.prefix.gates().to_vec();
        gates.extend(inner);
        gates.extend(route.suffix.gates().iter().copied());
        return finish(nq, gates);
    }
    let t = targets[0];
    if controls.len() <= 2 {
        return finish(nq, small_mcx(&window, &controls, t)?);
    }
    let a = borrowed_qubit(placement)?;
    let route = route_to_edge(placement, a, RouteStyle::TargetSwap)?;
    let mut ctrl = control_flags(&route);
    let ti = route
        .line
        .iter()
        .position(|&x| x == route.position_of(t))
        .expect("on line");
    ctrl[ti] = true;
    let parts = lnn_macro(&route.line, &ctrl, &[x_slots(route.position_of(a))])?;
    let mut gates = vec![Gate::H(t)];
    gates.extend(route.prefix.gates().iter().copied());
    gates.extend(parts.first);
    gates.extend(parts.body);
    gates.extend(parts.last);
    gates.extend(route.suffix.gates().iter().copied());
    gates.push(Gate::H(t));
    finish(nq, gates)
}

/// Multi-controlled gate with two or more targets on a line.
pub fn synth_mcmt_lnn(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    if spec.m() < 2 {
        return Err(Error::InvalidSpec("expected two or more targets".into()));
    }
    synth_lnn(spec, placement)
}

/// Synthesizes any supported specification on a line.
pub fn synth_lnn(spec: &MCGateSpec, placement: &LnnPlacement) -> Result<Circuit> {
    match spec.kind {
        GateKind::X | GateKind::MultiX(_) => synth_mcx_lnn(spec, placement),
        GateKind::Su2(_) | GateKind::MultiSu2(_) => synth_mcsu2_lnn(spec, placement),
        GateKind::U2(_) | GateKind::MultiU2(_) => synth_mcu2_lnn(spec, placement),
    }
}

/// Default placement: controls, then targets, then helpers, from the top.
pub fn default_placement(spec: &MCGateSpec) -> LnnPlacement {
    LnnPlacement::from_layout(&Layout::ata(spec)).expect("default layout is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::counts;
    use crate::sim::{equivalent, oracle_unitary, simulate, DenseUnitary, EquivMode};
    use crate::spec::Ancilla;
    use crate::su2::{AxisAngle, U2Spec, UnitVec3};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn bits(s: &[u8]) -> Vec<bool> {
        s.iter().map(|&b| b == 1).collect()
    }

    fn axis() -> AxisAngle {
        AxisAngle::new(UnitVec3::normalized(0.2, 0.9, -0.4).unwrap(), 2.345)
    }

    #[test]
    fn worked_example_partition() {
        let c = bits(&[1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0]);
        let p = partition_controls_lnn(&c, None).unwrap();
        assert_eq!(
            p.c1_mask,
            bits(&[1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0])
        );
        assert_eq!(
            p.c2_mask,
            bits(&[0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0])
        );
        assert_eq!((p.l0_prime_1, p.l0_prime_2), (0, 1));
        assert_eq!(p.sizes(), (8, 4));
    }

    #[test]
    fn single_control_partition() {
        let p = partition_controls_lnn(&bits(&[1, 0, 0, 0]), None).unwrap();
        assert_eq!(p.c1_mask, bits(&[1, 0, 0, 0]));
        assert!(!p.c2_mask.iter().any(|&b| b));
        assert_eq!((p.l0_2, p.l0_prime_2), (0, 0));
    }

    #[test]
    fn partition_rejects_empty_and_leading_gap() {
        assert!(partition_controls_lnn(&bits(&[0, 0]), None).is_err());
        assert!(partition_controls_lnn(&bits(&[0, 1, 0]), None).is_err());
    }

    #[test]
    fn multi_target_partition_separates_across_targets() {
        let c = bits(&[1, 1, 0, 1, 0]);
        let tau = bits(&[0, 0, 1, 0, 0]);
        let p = partition_controls_lnn(&c, Some(&tau)).unwrap();
        assert_eq!(p.c1_mask, bits(&[1, 0, 0, 1, 0]));
        assert_eq!(p.c2_mask, bits(&[0, 1, 0, 0, 0]));
    }

    /// Only the first two set bits of `m` may be neighbours.
    fn adjacency_ok(m: &[bool]) -> bool {
        let ones: Vec<usize> = (0..m.len()).filter(|&i| m[i]).collect();
        ones.windows(2).skip(1).all(|w| w[1] - w[0] > 1)
    }

    proptest! {
        #[test]
        fn partition_covers_controls_without_inner_neighbours(
            tail in proptest::collection::vec(any::<bool>(), 0..30)
        ) {
            let mut mask = vec![true];
            mask.extend(tail);
            let p = partition_controls_lnn(&mask, None).unwrap();
            for (i, &bit) in mask.iter().enumerate() {
                prop_assert_eq!(p.c1_mask[i] || p.c2_mask[i], bit);
                prop_assert!(!(p.c1_mask[i] && p.c2_mask[i]));
            }
            prop_assert!(adjacency_ok(&p.c1_mask));
            prop_assert!(adjacency_ok(&p.c2_mask));
        }
    }

    /// Expected chain operator built from its defining diagonal factors.
    fn chain_oracle(k: usize, ctrl: &[bool]) -> DenseUnitary {
        let l0 = (1..k).find(|&l| !ctrl[l]).unwrap();
        let bit = |x: usize, q: usize| (x >> (k - 1 - q)) & 1 == 1;
        let mut c = Circuit::new(k);
        let mut phases = vec![Complex64::new(1.0, 0.0); 1 << k];
        for (x, ph) in phases.iter_mut().enumerate() {
            for j in l0..k {
                if !ctrl[j] && bit(x, j) && (0..j).filter(|&i| ctrl[i]).all(|i| bit(x, i)) {
                    *ph = -*ph;
                }
            }
            if l0 == 2 && bit(x, 0) && bit(x, 1) {
                *ph *= Complex64::new(0.0, 1.0);
            }
        }
        if l0 == 2 {
            c.push(Gate::Swap(0, 1));
        }
        let perm = simulate(&c).unwrap();
        let mut entries = vec![Complex64::new(0.0, 0.0); 1 << (2 * k)];
        let dim = 1 << k;
        for col in 0..dim {
            for row in 0..dim {
                entries[row * dim + col] = perm.get(row, col) * phases[col];
            }
        }
        DenseUnitary::from_entries(k, entries).unwrap()
    }

    #[test]
    fn chains_match_their_mcz_products() {
        for mask in [
            &[1, 0][..],
            &[1, 1, 0],
            &[1, 0, 0, 1, 0],
            &[1, 1, 0, 1, 0, 0],
            &[1, 0, 1, 0, 1, 0, 0],
            &[1, 1, 0, 0, 1, 0, 1, 0],
        ] {
            let ctrl = bits(mask);
            let k = ctrl.len();
            let q: Vec<usize> = (0..k).collect();
            let want = chain_oracle(k, &ctrl);
            let low = synth_zbar_chain(k, &q, &ctrl).unwrap();
            assert!(low.circuit.validate_lnn().is_empty());
            let mid = zbar_chain_mid_level(k, &q, &ctrl).unwrap();
            for c in [&low.circuit, &mid] {
                let r = equivalent(&simulate(c).unwrap(), &want, EquivMode::Exact, 1e-10).unwrap();
                assert!(r.pass, "{mask:?}: {r:?}");
            }
        }
    }

    #[test]
    fn single_control_chain_is_one_cz() {
        let c = synth_zbar_chain(2, &[0, 1], &[true, false]).unwrap();
        assert_eq!(c.circuit.gates(), &[Gate::H(0), cx(1, 0), Gate::H(0)]);
        assert_eq!(c.head_swap, None);
    }

    #[test]
    fn chain_counts_follow_the_closed_form() {
        let ex = bits(&[1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 0]);
        let p = partition_controls_lnn(&ex, None).unwrap();
        let q: Vec<usize> = (0..19).collect();
        let chain = synth_zbar_chain(19, &q, &p.c1_mask).unwrap();
        let k = counts(&chain.circuit).unwrap();
        // n1 = 8 ones in the first mask, k1 = 19, head CZ.
        assert_eq!(
            (k.cnot, k.t, k.h),
            (2 * 19 + 6 * 8 - 9, 8 * 8 - 8, 4 * 8 - 2)
        );
        let f2 = p.c2_mask.iter().position(|&b| b).unwrap();
        let chain = synth_zbar_chain(19, &q[f2..], &p.c2_mask[f2..]).unwrap();
        let k = counts(&chain.circuit).unwrap();
        // n2 = 4, k2 = 11, adjacent head.
        assert_eq!(
            (k.cnot, k.t, k.h),
            (2 * 11 + 6 * 4 - 12, 8 * 4 - 12, 4 * 4 - 8)
        );
        assert_eq!(chain.head_swap, Some((8, 9)));
    }

    #[test]
    fn chain_rejects_bad_masks() {
        let q = [0, 1, 2, 3];
        assert!(matches!(
            synth_zbar_chain(4, &q, &bits(&[1, 0, 1, 1])),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(matches!(
            synth_zbar_chain(4, &q, &bits(&[1, 1, 1, 0])),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(matches!(
            synth_zbar_chain(5, &[0, 1, 2, 3, 4], &bits(&[1, 0, 1, 1, 0])),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn line_ccz_is_exact() {
        let c = Circuit::from_gates(3, ccz_lnn(0, 1, 2)).unwrap();
        let mut want = Circuit::new(3);
        want.extend([Gate::H(2)]);
        want.extend(crate::ata::toffoli(0, 1, 2));
        want.push(Gate::H(2));
        let r = equivalent(
            &simulate(&c).unwrap(),
            &simulate(&want).unwrap(),
            EquivMode::Exact,
            1e-10,
        )
        .unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn placement_round_trips_through_text() {
        let p = LnnPlacement::parse("c,.,t, a,z").unwrap();
        assert_eq!(p.to_string(), "c,.,t,a,z");
        assert_eq!(p.window(), 0..5);
        assert!(LnnPlacement::parse("c,x").is_err());
        assert!(LnnPlacement::parse("c,,t").is_err());
        let q: LnnPlacement = ".,c,t,.".parse().unwrap();
        assert_eq!((q.window(), q.k()), (1..3, 2));
    }

    #[test]
    fn route_from_an_edge_is_empty() {
        let p = LnnPlacement::parse("c,c,c,t").unwrap();
        let r = route_to_edge(&p, 3, RouteStyle::TargetSwap).unwrap();
        assert!(r.prefix.is_empty() && r.suffix.is_empty());
        assert!(!r.reversed);
    }

    #[test]
    fn route_from_the_center_costs_four_per_step() {
        let p = LnnPlacement::parse("c,c,c,c,t,c,c,c,c").unwrap();
        let r = route_to_edge(&p, 4, RouteStyle::TargetSwap).unwrap();
        let cnot = r.prefix.len() + r.suffix.len();
        assert!(cnot <= 16);
        assert!(r.reversed, "ties go to the top");
        assert_eq!(r.placement.roles()[0], Role::Target);
        assert_eq!(r.line[8], 0);
    }

    #[test]
    fn prefix_is_permutation_then_absorbed_cnots() {
        let p = LnnPlacement::parse("c,t,c,.,z,c,c,c").unwrap();
        let r = route_many(&p, &[1, 4], RouteStyle::TargetSwap).unwrap();
        let plain = route_many(&p, &[1, 4], RouteStyle::Plain).unwrap();
        assert_eq!(plain.placement, r.placement);
        let mut want = plain.prefix.clone();
        want.extend(r.absorbed.iter().copied());
        let e = equivalent(
            &simulate(&r.prefix).unwrap(),
            &simulate(&want).unwrap(),
            EquivMode::Exact,
            1e-12,
        )
        .unwrap();
        assert!(e.pass);
        let round = r.prefix.compose(&r.suffix);
        let id = DenseUnitary::identity(8);
        assert!(
            equivalent(&simulate(&round).unwrap(), &id, EquivMode::Exact, 1e-12)
                .unwrap()
                .pass
        );
    }

    fn assert_oracle(c: &Circuit, spec: &MCGateSpec, p: &LnnPlacement, mode: EquivMode) {
        assert!(c.validate_lnn().is_empty(), "{p}");
        assert!(c.is_lowered());
        let u = simulate(c).unwrap();
        let v = oracle_unitary(spec, &p.layout()).unwrap();
        let r = equivalent(&u, &v, mode, 1e-9).unwrap();
        assert!(r.pass, "{p}: {r:?}");
    }

    #[test]
    fn mcsu2_basic_cost_at_six_controls() {
        let spec = MCGateSpec::mcsu2(6, axis());
        let p = LnnPlacement::parse("c,c,c,c,c,c,t").unwrap();
        let k = counts(&synth_mcsu2_lnn(&spec, &p).unwrap()).unwrap();
        assert!(k.cnot <= 8 * 7 + 12 * 6 - 48, "cnot {}", k.cnot);
    }

    #[test]
    fn mcsu2_mid_line_target_matches_the_oracle() {
        let spec = MCGateSpec::mcsu2(6, axis());
        let p = LnnPlacement::parse("c,c,c,t,c,.,c,c").unwrap();
        let c = synth_mcsu2_lnn(&spec, &p).unwrap();
        assert_oracle(&c, &spec, &p, EquivMode::Exact);
    }

    #[test]
    fn zero_angle_gives_identity() {
        let spec = MCGateSpec::mcsu2(3, AxisAngle::new(UnitVec3::Y, 0.0));
        let p = LnnPlacement::parse("c,t,c,c").unwrap();
        let c = synth_mcsu2_lnn(&spec, &p).unwrap();
        let id = DenseUnitary::identity(4);
        assert!(
            equivalent(&simulate(&c).unwrap(), &id, EquivMode::Exact, 1e-9)
                .unwrap()
                .pass
        );
    }

    /// Every arrangement of the given role multiset on a line.
    fn arrangements(roles: &[Role]) -> Vec<LnnPlacement> {
        fn go(rest: &mut Vec<Role>, cur: &mut Vec<Role>, out: &mut Vec<LnnPlacement>) {
            if rest.is_empty() {
                out.push(LnnPlacement::new(cur.clone()));
                return;
            }
            let mut tried = Vec::new();
            for i in 0..rest.len() {
                if tried.contains(&rest[i]) {
                    continue;
                }
                tried.push(rest[i]);
                let r = rest.remove(i);
                cur.push(r);
                go(rest, cur, out);
                cur.pop();
                rest.insert(i, r);
            }
        }
        let mut out = Vec::new();
        go(&mut roles.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn mcx_three_controls_every_placement() {
        let spec = MCGateSpec::mcx(3, 1);
        let roles = [
            Role::Control,
            Role::Control,
            Role::Control,
            Role::Target,
            Role::Dirty,
        ];
        for p in arrangements(&roles) {
            let c = synth_mcx_lnn(&spec, &p).unwrap();
            let mode = EquivMode::TensorIdentity {
                borrowed: p.positions(Role::Dirty),
            };
            assert_oracle(&c, &spec, &p, mode);
        }
    }

    #[test]
    fn small_mcx_gathers_controls() {
        for (n, s) in [(1, "c,.,.,t"), (2, "c,.,t,.,c"), (2, "t,c,.,c"), (1, "t,c")] {
            let spec = MCGateSpec::mcx(n, 0);
            let p = LnnPlacement::parse(s).unwrap();
            let c = synth_mcx_lnn(&spec, &p).unwrap();
            assert_oracle(&c, &spec, &p, EquivMode::GlobalPhase);
        }
        let c =
            synth_mcx_lnn(&MCGateSpec::mcx(1, 0), &LnnPlacement::parse("c,t").unwrap()).unwrap();
        assert_eq!(c.gates(), &[cx(0, 1)]);
    }

    #[test]
    fn mcu2_matches_on_the_clean_subspace() {
        let spec = MCGateSpec::mcu2(3, U2Spec::new(axis(), -0.9));
        for s in ["c,t,c,.,c,z", "z,c,c,t,.,c", "c,c,z,c,t,."] {
            let p = LnnPlacement::parse(s).unwrap();
            let c = synth_mcu2_lnn(&spec, &p).unwrap();
            let z = p.positions(Role::Clean)[0];
            assert_oracle(&c, &spec, &p, EquivMode::Subspace { qubit: z, value: 0 });
        }
    }

    #[test]
    fn mcu2_rotation_counts() {
        // Spread controls leave the second half empty; its last control then
        // moves over so the macro keeps four blocks.
        for s in ["c,c,c,t,z", "c,.,c,.,c,t,z"] {
            let spec = MCGateSpec::mcu2(3, U2Spec::new(axis(), 0.4));
            let p = LnnPlacement::parse(s).unwrap();
            assert_eq!(
                counts(&synth_mcu2_lnn(&spec, &p).unwrap()).unwrap().rot,
                11,
                "{s}"
            );
        }
        let spec = MCGateSpec::mcu2(1, U2Spec::new(axis(), 0.4));
        let p = LnnPlacement::parse("c,.,t,z").unwrap();
        assert_eq!(counts(&synth_mcu2_lnn(&spec, &p).unwrap()).unwrap().rot, 7);
    }

    #[test]
    fn multi_target_gates_match_the_oracle() {
        let su2 = MCGateSpec::new(
            GateKind::MultiSu2(vec![axis(), AxisAngle::new(UnitVec3::X, 0.7)]),
            3,
            Ancilla::None,
        )
        .unwrap();
        let p = LnnPlacement::parse("c,t,c,.,t,c").unwrap();
        assert_oracle(
            &synth_mcmt_lnn(&su2, &p).unwrap(),
            &su2,
            &p,
            EquivMode::Exact,
        );
        for (n, s) in [(3, "t,c,.,c,t,c"), (2, "c,t,t,c"), (4, "c,t,c,c,.,t,c")] {
            let x = MCGateSpec::new(GateKind::MultiX(2), n, Ancilla::None).unwrap();
            let p = LnnPlacement::parse(s).unwrap();
            assert_oracle(
                &synth_mcmt_lnn(&x, &p).unwrap(),
                &x,
                &p,
                EquivMode::GlobalPhase,
            );
        }
    }

    #[test]
    fn mcx_without_a_free_qubit_is_rejected() {
        let spec = MCGateSpec::mcx(3, 1);
        let p = LnnPlacement::parse("c,c,c,t,.,a").unwrap();
        assert!(synth_mcx_lnn(&spec, &p).is_ok());
        let p = LnnPlacement::parse("c,c,c,t").unwrap();
        assert!(synth_mcx_lnn(&spec, &p).is_err());
    }
}
