//! Dense simulation, brute-force oracles and equivalence predicates.
//!
//! A [`StateBatch`] holds several state vectors side by side: row `r` of the
//! batch is basis state `r` and column `c` is the `c`-th vector. A
//! [`DenseUnitary`] is the batch obtained by running a circuit on every basis
//! state, so entry `(r, c)` is `⟨r|U|c⟩`. Qubit `0` is the most significant
//! bit of a basis index.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::spec::{Layout, MCGateSpec, TargetOp};
use crate::su2::{self, Mat2};

/// Largest register for full-unitary simulation.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest register for oracles and state-vector simulation.
pub const MAX_ORACLE_QUBITS: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Several state vectors over the same register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateBatch {
    num_qubits: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl StateBatch {
    /// All-zero batch.
    pub fn zeros(num_qubits: usize, cols: usize) -> Self {
        Self {
            num_qubits,
            cols,
            data: vec![ZERO; (1usize << num_qubits) * cols],
        }
    }

    /// The identity: column `c` is basis state `c`.
    pub fn identity(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let mut b = Self::zeros(num_qubits, dim);
        for i in 0..dim {
            b.data[i * dim + i] = ONE;
        }
        b
    }

    /// `count` normalized states with independent complex normal entries.
    pub fn random(num_qubits: usize, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << num_qubits;
        let mut b = Self::zeros(num_qubits, count);
        for c in 0..count {
            let mut norm = 0.0;
            for r in 0..dim {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                let z = Complex64::new(re, im);
                norm += z.norm_sqr();
                b.data[r * count + c] = z;
            }
            let s = norm.sqrt().recip();
            for r in 0..dim {
                b.data[r * count + c] *= s;
            }
        }
        b
    }

    /// Register size.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of vectors.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of basis states.
    pub fn dim(&self) -> usize {
        1usize << self.num_qubits
    }

    /// Amplitude of basis state `row` in vector `col`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    fn bit(&self, q: usize) -> usize {
        1usize << (self.num_qubits - 1 - q)
    }

    /// Applies a 2×2 matrix to qubit `q`.
    pub fn apply_1q(&mut self, q: usize, m: &Mat2) {
        self.apply_controlled_1q(&[], q, m);
    }

    /// Applies a 2×2 matrix to `q` on the rows where every control is 1.
    pub fn apply_controlled_1q(&mut self, controls: &[usize], q: usize, m: &Mat2) {
        let b = self.bit(q);
        let cmask: usize = controls.iter().map(|&c| self.bit(c)).sum();
        let cols = self.cols;
        for base in 0..self.dim() {
            if base & b != 0 || base & cmask != cmask {
                continue;
            }
            let r0 = base * cols;
            let r1 = (base | b) * cols;
            let (lo, hi) = self.data.split_at_mut(r1);
            let row0 = &mut lo[r0..r0 + cols];
            let row1 = &mut hi[..cols];
            for (x, y) in row0.iter_mut().zip(row1.iter_mut()) {
                let (a, c) = (*x, *y);
                *x = m[0][0] * a + m[0][1] * c;
                *y = m[1][0] * a + m[1][1] * c;
            }
        }
    }

    /// Applies a gate that maps basis states to phased basis states.
    ///
    /// `f` receives a local index whose most significant bit is `qubits[0]`
    /// and returns the image index with its phase.
    pub fn apply_monomial(&mut self, qubits: &[usize], f: impl Fn(usize) -> (usize, Complex64)) {
        let k = qubits.len();
        let bits: Vec<usize> = qubits.iter().map(|&q| self.bit(q)).collect();
        let offset = |l: usize| -> usize {
            (0..k)
                .filter(|j| l >> (k - 1 - j) & 1 == 1)
                .map(|j| bits[j])
                .sum()
        };
        let mask: usize = bits.iter().sum();
        let moved: Vec<(usize, usize, Complex64)> = (0..1usize << k)
            .filter_map(|l| {
                let (to, ph) = f(l);
                (to != l || (ph - ONE).norm() > 0.0).then(|| (offset(l), offset(to), ph))
            })
            .collect();
        if moved.is_empty() {
            return;
        }
        let cols = self.cols;
        let mut tmp = vec![ZERO; moved.len() * cols];
        for base in 0..self.dim() {
            if base & mask != 0 {
                continue;
            }
            for (i, &(src, _, _)) in moved.iter().enumerate() {
                let r = (base + src) * cols;
                tmp[i * cols..(i + 1) * cols].copy_from_slice(&self.data[r..r + cols]);
            }
            for (i, &(_, dst, ph)) in moved.iter().enumerate() {
                let r = (base + dst) * cols;
                for (d, s) in self.data[r..r + cols]
                    .iter_mut()
                    .zip(&tmp[i * cols..(i + 1) * cols])
                {
                    *d = ph * s;
                }
            }
        }
    }

    /// Applies one gate, using defining matrices for mid-level gates.
    pub fn apply_gate(&mut self, g: &Gate) {
        let phase1 = |q: usize, p: Complex64, this: &mut Self| {
            this.apply_monomial(&[q], move |l| (l, if l == 1 { p } else { ONE }));
        };
        match *g {
            Gate::H(q) => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_1q(q, &[[s, s], [s, -s]]);
            }
            Gate::Rx(q, a) => self.apply_1q(q, &su2::rx(a)),
            Gate::Rz(q, a) => self.apply_1q(q, &su2::rz(a)),
            Gate::T(q) => phase1(
                q,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
                self,
            ),
            Gate::Tdg(q) => phase1(
                q,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
                self,
            ),
            Gate::S(q) => phase1(q, I, self),
            Gate::Sdg(q) => phase1(q, -I, self),
            Gate::Z(q) => phase1(q, -ONE, self),
            Gate::X(q) => self.apply_monomial(&[q], |l| (l ^ 1, ONE)),
            Gate::CX { control, target } => {
                self.apply_monomial(&[control, target], |l| (l ^ (l >> 1), ONE))
            }
            Gate::CZ(a, b) => {
                self.apply_monomial(&[a, b], |l| (l, if l == 3 { -ONE } else { ONE }))
            }
            Gate::Swap(a, b) => self.apply_monomial(&[a, b], |l| ((l >> 1) | ((l & 1) << 1), ONE)),
            Gate::XDelta { c1, c2, t, .. } => self.apply_monomial(&[c1, c2, t], xdelta_map),
            Gate::XDelta3 {
                c0,
                c1,
                c2,
                t,
                inverse,
            } => self.apply_monomial(&[c0, c1, t, c2], move |l| xdelta3_map(l, inverse)),
            Gate::IZ { c1, c2, t, inverse } => self.apply_monomial(&[c1, c2, t], move |l| {
                let p = match l {
                    6 => I,
                    7 => -I,
                    _ => ONE,
                };
                (l, if inverse { p.conj() } else { p })
            }),
        }
    }

    /// Applies every gate of a circuit in order.
    pub fn apply_circuit(&mut self, c: &Circuit) {
        for g in c.gates() {
            self.apply_gate(g);
        }
    }
}

/// Local map of the two-control relative-phase Toffoli on `(c1, c2, t)`.
fn xdelta_map(l: usize) -> (usize, Complex64) {
    let (a, b, x) = (l >> 2 & 1, l >> 1 & 1, l & 1);
    let x2 = x ^ (a & b);
    let mut ph = ONE;
    if a & b == 1 {
        ph *= I;
    }
    if b & x2 == 1 {
        ph = -ph;
    }
    ((a << 2) | (b << 1) | x2, ph)
}

/// Local map of the three-control relative-phase Toffoli on `(c0, c1, t, c2)`.
fn xdelta3_map(l: usize, inverse: bool) -> (usize, Complex64) {
    let diag = |s: usize| match s {
        0b0101 => I,
        0b0111 => -I,
        0b1101 => -ONE,
        _ => ONE,
    };
    let flip = |s: usize| {
        let (r1, r2, r4) = (s >> 3 & 1, s >> 2 & 1, s & 1);
        s ^ ((r1 & r2 & r4) << 1)
    };
    if inverse {
        (flip(l), diag(l).conj())
    } else {
        let out = flip(l);
        (out, diag(out))
    }
}

/// Full unitary as a row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    batch: StateBatch,
}

impl DenseUnitary {
    /// Identity on `num_qubits` qubits.
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            batch: StateBatch::identity(num_qubits),
        }
    }

    /// Matrix from row-major entries. Unitarity is not checked.
    pub fn from_entries(num_qubits: usize, entries: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self {
            batch: StateBatch {
                num_qubits,
                cols: dim,
                data: entries,
            },
        })
    }

    /// Register size.
    pub fn num_qubits(&self) -> usize {
        self.batch.num_qubits
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.batch.dim()
    }

    /// Entry `⟨row|U|col⟩`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.batch.get(row, col)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.batch.data
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut s = ZERO;
                for r in 0..d {
                    s += self.get(r, i).conj() * self.get(r, j);
                }
                let e = if i == j { s - ONE } else { s };
                worst = worst.max(e.norm());
            }
        }
        worst
    }

    /// Product `other · self` (apply `self` first).
    pub fn then_circuit(mut self, c: &Circuit) -> Self {
        self.batch.apply_circuit(c);
        self
    }
}

/// Simulates a circuit on every basis state.
pub fn simulate(circuit: &Circuit) -> Result<DenseUnitary> {
    if circuit.num_qubits() > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            requested: circuit.num_qubits(),
            limit: MAX_DENSE_QUBITS,
        });
    }
    circuit.validate()?;
    Ok(DenseUnitary::identity(circuit.num_qubits()).then_circuit(circuit))
}

/// Applies the ideal multi-controlled gate to every vector of a batch.
///
/// Ancillae and idle qubits are left untouched.
pub fn oracle_apply(spec: &MCGateSpec, layout: &Layout, batch: &mut StateBatch) {
    for (op, &t) in spec.target_ops().iter().zip(&layout.targets) {
        let m = match op {
            TargetOp::X => [[ZERO, ONE], [ONE, ZERO]],
            TargetOp::Su2(a) => a.matrix(),
            TargetOp::U2(u) => u.matrix(),
        };
        batch.apply_controlled_1q(&layout.controls, t, &m);
    }
}

/// Dense matrix of the ideal multi-controlled gate.
pub fn oracle_unitary(spec: &MCGateSpec, layout: &Layout) -> Result<DenseUnitary> {
    if layout.num_qubits > MAX_ORACLE_QUBITS {
        return Err(Error::TooManyQubits {
            requested: layout.num_qubits,
            limit: MAX_ORACLE_QUBITS,
        });
    }
    layout.check(spec)?;
    let mut u = DenseUnitary::identity(layout.num_qubits);
    oracle_apply(spec, layout, &mut u.batch);
    Ok(u)
}

/// How two unitaries are compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivMode {
    /// Entry-wise equality.
    Exact,
    /// Equality up to one global phase.
    GlobalPhase,
    /// Equality up to a global phase on the columns where `qubit` equals
    /// `value`; those columns must also stay inside the subspace.
    Subspace {
        /// Ancilla qubit.
        qubit: usize,
        /// Its fixed value.
        value: u8,
    },
    /// `u` must factor as `w ⊗ I` over the borrowed qubits; the reduced
    /// operators are then compared up to a global phase.
    TensorIdentity {
        /// Qubits that must be left untouched.
        borrowed: Vec<usize>,
    },
}

/// Outcome of an equivalence check.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivReport {
    /// Comparison mode.
    pub mode: EquivMode,
    /// Largest deviation found.
    pub max_error: f64,
    /// Tolerance applied.
    pub tolerance: f64,
    /// `max_error ≤ tolerance`.
    pub pass: bool,
}

impl EquivReport {
    fn new(mode: EquivMode, max_error: f64, tolerance: f64) -> Self {
        Self {
            mode,
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }
}

/// Unit phase `u/v` at the first anchor where `|v| > threshold`.
fn anchor_phase(
    pairs: impl Iterator<Item = (Complex64, Complex64)>,
    threshold: f64,
) -> Result<Complex64> {
    for (a, b) in pairs {
        if b.norm() > threshold {
            let r = a / b;
            return Ok(if r.norm() > 0.0 { r / r.norm() } else { ONE });
        }
    }
    Err(Error::DegenerateNormalization)
}

fn bit_of(nq: usize, q: usize) -> usize {
    1usize << (nq - 1 - q)
}

/// Compares two unitaries under `mode`.
pub fn equivalent(
    u: &DenseUnitary,
    v: &DenseUnitary,
    mode: EquivMode,
    tolerance: f64,
) -> Result<EquivReport> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    let d = u.dim();
    let nq = u.num_qubits();
    let thr = 0.5 / (d as f64).sqrt();
    let err = match &mode {
        EquivMode::Exact => u
            .entries()
            .iter()
            .zip(v.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max),
        EquivMode::GlobalPhase => {
            let ph = anchor_phase(
                u.entries().iter().copied().zip(v.entries().iter().copied()),
                thr,
            )?;
            u.entries()
                .iter()
                .zip(v.entries())
                .map(|(a, b)| (a * ph.conj() - b).norm())
                .fold(0.0, f64::max)
        }
        EquivMode::Subspace { qubit, value } => {
            let b = bit_of(nq, *qubit);
            let want = if *value == 0 { 0 } else { b };
            let cols: Vec<usize> = (0..d).filter(|c| c & b == want).collect();
            let ph = anchor_phase(
                (0..d)
                    .filter(|r| r & b == want)
                    .flat_map(|r| cols.iter().map(move |&c| (r, c)))
                    .map(|(r, c)| (u.get(r, c), v.get(r, c))),
                thr * std::f64::consts::SQRT_2,
            )?;
            let mut worst: f64 = 0.0;
            for &c in &cols {
                for r in 0..d {
                    let e = if r & b == want {
                        (u.get(r, c) * ph.conj() - v.get(r, c)).norm()
                    } else {
                        u.get(r, c).norm()
                    };
                    worst = worst.max(e);
                }
            }
            worst
        }
        EquivMode::TensorIdentity { borrowed } => {
            let bmask: usize = borrowed.iter().map(|&q| bit_of(nq, q)).sum();
            let factor_error = |w: &DenseUnitary| -> f64 {
                let mut worst: f64 = 0.0;
                for r in 0..d {
                    for c in 0..d {
                        let expected = if r & bmask == c & bmask {
                            w.get(r & !bmask, c & !bmask)
                        } else {
                            ZERO
                        };
                        worst = worst.max((w.get(r, c) - expected).norm());
                    }
                }
                worst
            };
            let fu = factor_error(u);
            let fv = factor_error(v);
            let reduced: Vec<usize> = (0..d).filter(|i| i & bmask == 0).collect();
            let ph = anchor_phase(
                reduced
                    .iter()
                    .flat_map(|&r| reduced.iter().map(move |&c| (r, c)))
                    .map(|(r, c)| (u.get(r, c), v.get(r, c))),
                0.5 / (reduced.len() as f64).sqrt(),
            )?;
            let mut worst = fu.max(fv);
            for &r in &reduced {
                for &c in &reduced {
                    worst = worst.max((u.get(r, c) * ph.conj() - v.get(r, c)).norm());
                }
            }
            worst
        }
    };
    Ok(EquivReport::new(mode, err, tolerance))
}

/// Compares a circuit with an oracle on random states.
///
/// The states have independent complex normal amplitudes and are generated
/// from `seed`. One global phase, fixed on the first state, aligns all
/// outputs; the report holds the largest Euclidean distance.
pub fn randomized_equiv(
    circuit: &Circuit,
    oracle: impl Fn(&mut StateBatch),
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<EquivReport> {
    let nq = circuit.num_qubits();
    if nq > MAX_ORACLE_QUBITS {
        return Err(Error::TooManyQubits {
            requested: nq,
            limit: MAX_ORACLE_QUBITS,
        });
    }
    let trials = trials.max(1);
    let mut a = StateBatch::random(nq, trials, seed);
    let mut b = a.clone();
    a.apply_circuit(circuit);
    oracle(&mut b);
    let overlap: Complex64 = (0..a.dim()).map(|r| b.get(r, 0).conj() * a.get(r, 0)).sum();
    let ph = if overlap.norm() > 1e-12 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    let mut worst: f64 = 0.0;
    for c in 0..trials {
        let d: f64 = (0..a.dim())
            .map(|r| (a.get(r, c) * ph.conj() - b.get(r, c)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(d);
    }
    Ok(EquivReport::new(EquivMode::GlobalPhase, worst, tolerance))
}
