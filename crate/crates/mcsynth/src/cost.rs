//! Closed-form resource formulas, comparison tables and the ancilla sweep.
//!
//! Every formula is stored as data: an affine expression in `n`, `k`, `m`,
//! `n_chi`, `lg(m)` and `lg(m+1)` (ceiling base-2 logarithms), optionally
//! split on the parity of `n`. Coefficients may be half-integers; evaluation
//! is exact and always lands on an integer inside the validity range.
//!
//! Formula identifiers have the form `family.metric`, for example
//! `mcsu2.cnot` or `lnn_mcx.t_depth`. Baseline rows of prior methods are
//! stored as leading terms (`48n`) or as asymptotic markers (`O(nk)`) and
//! are labelled as such in reports.

use std::fmt;
use std::sync::OnceLock;

use crate::ata::{synth_ata, SynthOptions};
use crate::circuit::counts;
use crate::error::{Error, Result};
use crate::lnn::{synth_lnn, LnnPlacement, Role};
use crate::spec::{Ancilla, GateKind, MCGateSpec};
use crate::su2::{AxisAngle, U2Spec, UnitVec3};

/// Arguments of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Args {
    /// Number of controls.
    pub n: usize,
    /// Number of qubits on the line (LNN formulas only).
    pub k: usize,
    /// Number of targets.
    pub m: usize,
    /// Number of extra dirty ancillae.
    pub n_chi: usize,
}

impl Args {
    /// Single-target arguments with `n` controls.
    pub fn n(n: usize) -> Self {
        Self {
            n,
            k: 0,
            m: 1,
            n_chi: 0,
        }
    }
}

impl fmt::Display for Args {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={}, k={}, m={}, n_chi={}",
            self.n, self.k, self.m, self.n_chi
        )
    }
}

/// What a formula measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Number of CX gates.
    CnotCost,
    /// CX depth.
    CnotDepth,
    /// Number of T and T† gates.
    TCost,
    /// T depth.
    TDepth,
    /// Number of Hadamard gates.
    HCost,
    /// Hadamard depth.
    HDepth,
    /// Number of S and S† gates.
    SCost,
    /// S depth.
    SDepth,
    /// Number of arbitrary-angle rotations.
    Rotations,
}

impl Metric {
    /// Suffix used in formula identifiers.
    pub fn suffix(&self) -> &'static str {
        match self {
            Metric::CnotCost => "cnot",
            Metric::CnotDepth => "cnot_depth",
            Metric::TCost => "t",
            Metric::TDepth => "t_depth",
            Metric::HCost => "h",
            Metric::HDepth => "h_depth",
            Metric::SCost => "s",
            Metric::SDepth => "s_depth",
            Metric::Rotations => "rot",
        }
    }
}

/// How a formula relates to synthesized circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Synthesized counts equal the formula.
    Exact,
    /// Synthesized counts never exceed the formula.
    Upper,
    /// Leading term of a prior method; not comparable to synthesized counts.
    LeadingTerm,
}

impl BoundKind {
    /// Label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::Upper => "upper bound",
            BoundKind::LeadingTerm => "leading term",
        }
    }
}

/// Affine form with coefficients stored in halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    halves: [i64; 7],
}

const VARS: [&str; 7] = ["", "n_chi", "lg(m+1)", "lg(m)", "n", "k", "m"];

fn ceil_log2(x: usize) -> i64 {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as i64
    }
}

impl Affine {
    /// Parses text such as `12.5n+8m-n_chi-38` or `8n+8lg(m)-8`.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty expression".into());
        }
        let mut out = Affine::default();
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                _ if first => 1,
                _ => return Err(format!("expected a sign in {text:?}")),
            };
            first = false;
            let digits = rest
                .find(|c: char| !(c.is_ascii_digit() || c == '.'))
                .unwrap_or(rest.len());
            let coef = if digits == 0 {
                2
            } else {
                let v: f64 = rest[..digits]
                    .parse()
                    .map_err(|_| format!("bad number in {text:?}"))?;
                let h = v * 2.0;
                if h.fract() != 0.0 {
                    return Err(format!("coefficient {v} is not a half-integer"));
                }
                h as i64
            };
            rest = &rest[digits..];
            let var = (1..VARS.len())
                .find(|&i| rest.starts_with(VARS[i]))
                .unwrap_or(0);
            if var == 0 && digits == 0 {
                return Err(format!("empty term in {text:?}"));
            }
            rest = &rest[VARS[var].len()..];
            out.halves[var] += sign * coef;
        }
        Ok(out)
    }

    /// Twice the value at `args`.
    fn eval_halves(&self, args: &Args, n: i64) -> i64 {
        let vals = [
            1,
            args.n_chi as i64,
            ceil_log2(args.m + 1),
            ceil_log2(args.m),
            n,
            args.k as i64,
            args.m as i64,
        ];
        self.halves.iter().zip(vals).map(|(h, v)| h * v).sum()
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = [4, 5, 6, 1, 3, 2, 0];
        let mut wrote = false;
        for &i in &order {
            let h = self.halves[i];
            if h == 0 {
                continue;
            }
            let mag = h.unsigned_abs();
            if h < 0 {
                f.write_str("-")?;
            } else if wrote {
                f.write_str("+")?;
            }
            let num = if mag.is_multiple_of(2) {
                format!("{}", mag / 2)
            } else {
                format!("{}.5", mag / 2)
            };
            if i == 0 || num != "1" {
                f.write_str(&num)?;
            }
            f.write_str(VARS[i])?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Formula body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// One affine form.
    Affine(Affine),
    /// Separate forms for even and odd `n`.
    Parity {
        /// Form used for even `n`.
        even: Affine,
        /// Form used for odd `n`.
        odd: Affine,
    },
    /// Asymptotic marker rendered verbatim.
    Marker(&'static str),
}

impl Expr {
    fn parse(text: &str) -> std::result::Result<Self, String> {
        if text.starts_with("O(") {
            return Ok(Expr::Marker(Box::leak(text.to_string().into_boxed_str())));
        }
        match text.split_once('|') {
            Some((even, odd)) => Ok(Expr::Parity {
                even: Affine::parse(even)?,
                odd: Affine::parse(odd)?,
            }),
            None => Ok(Expr::Affine(Affine::parse(text)?)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Affine(a) => write!(f, "{a}"),
            Expr::Parity { even, odd } => write!(f, "{even} ({odd} for odd n)"),
            Expr::Marker(s) => f.write_str(s),
        }
    }
}

/// Result of evaluating a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    /// Exact integer value.
    Int(i64),
    /// Asymptotic marker.
    Marker(&'static str),
}

impl Value {
    /// Integer value, if any.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            Value::Marker(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Marker(s) => f.write_str(s),
        }
    }
}

/// One registered formula.
#[derive(Debug, Clone)]
pub struct CostFormula {
    /// Identifier, `family.metric`.
    pub id: String,
    /// Expression.
    pub expr: Expr,
    /// Gate class the formula describes.
    pub gate: &'static str,
    /// Measured quantity.
    pub metric: Metric,
    /// Predicate on the arguments.
    pub validity: fn(&Args) -> bool,
    /// Human-readable validity range.
    pub validity_text: &'static str,
    /// Origin of the formula.
    pub source: &'static str,
    /// Relation to synthesized counts.
    pub bound_kind: BoundKind,
}

impl CostFormula {
    /// Evaluates the formula, checking validity first.
    pub fn evaluate(&self, args: &Args) -> Result<Value> {
        if !(self.validity)(args) {
            return Err(Error::OutOfValidity {
                id: self.id.clone(),
                args: args.to_string(),
            });
        }
        let n = args.n as i64;
        let halves = match &self.expr {
            Expr::Marker(s) => return Ok(Value::Marker(s)),
            Expr::Affine(a) => a.eval_halves(args, n),
            Expr::Parity { even, odd } if n % 2 == 0 => even.eval_halves(args, n),
            Expr::Parity { odd, .. } => odd.eval_halves(args, n),
        };
        debug_assert_eq!(halves % 2, 0, "{} is not integral at {args}", self.id);
        Ok(Value::Int(halves / 2))
    }
}

/// A family of formulas sharing gate, validity and source.
struct Family {
    name: &'static str,
    gate: &'static str,
    source: &'static str,
    kind: BoundKind,
    validity: fn(&Args) -> bool,
    validity_text: &'static str,
    rows: &'static [(Metric, &'static str)],
}

use Metric::*;

const OURS: &str = "mcsynth";

fn families() -> Vec<Family> {
    let exact = BoundKind::Exact;
    let upper = BoundKind::Upper;
    vec![
        Family {
            name: "vchain",
            gate: "V-chain Z with CS core",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 3,
            validity_text: "n >= 3",
            rows: &[
                (CnotCost, "6n-8"),
                (CnotDepth, "4n-2"),
                (TCost, "8n-12"),
                (TDepth, "4n"),
                (HCost, "4n-8"),
                (HDepth, "2n-2"),
            ],
        },
        Family {
            name: "vchain_tdepth",
            gate: "V-chain Z with CS core, T-depth variant",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 3,
            validity_text: "n >= 3",
            rows: &[
                (CnotCost, "8n-11"),
                (CnotDepth, "6n-5"),
                (TCost, "8n-12"),
                (TDepth, "2n"),
                (HCost, "4n-8"),
                (HDepth, "2n-2"),
            ],
        },
        Family {
            name: "mcsu2",
            gate: "MCSU2",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6,
            validity_text: "n >= 6",
            rows: &[
                (CnotCost, "12n-32"),
                (CnotDepth, "8n-8"),
                (TCost, "16n-48"),
                (TDepth, "8n-6|8n-3"),
                (HCost, "8n-32"),
                (HDepth, "4n-11"),
                (Rotations, "8"),
            ],
        },
        Family {
            name: "mcx",
            gate: "MCX",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 5,
            validity_text: "n >= 5",
            rows: &[
                (CnotCost, "12n-20"),
                (CnotDepth, "8n"),
                (TCost, "16n-32"),
                (TDepth, "8n+5|8n+2"),
                (HCost, "8n-20"),
            ],
        },
        Family {
            name: "mcu2",
            gate: "MCU2",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6 && a.m >= 1,
            validity_text: "n >= 6, m >= 1",
            rows: &[
                (CnotCost, "12n+8m-32"),
                (CnotDepth, "8n+8lg(m+1)-8"),
                (TCost, "16n-48"),
                (TDepth, "8n-6|8n-3"),
                (HCost, "8n-30"),
                (Rotations, "8m+3"),
            ],
        },
        Family {
            name: "tdepth",
            gate: "MCSU2, T-depth variant",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6,
            validity_text: "n >= 6",
            rows: &[
                (CnotCost, "12.5n-30|12.5n-26.5"),
                (CnotDepth, "12n-27|12n-24"),
                (TCost, "16n-48"),
                (TDepth, "4n"),
                (HCost, "9n-36|9n-37"),
                (HDepth, "4n-10"),
                (SCost, "0.5n-2|0.5n-2.5"),
                (SDepth, "1"),
                (Rotations, "8"),
            ],
        },
        Family {
            name: "mcx_tdepth",
            gate: "MCX, T-depth variant",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 5,
            validity_text: "n >= 5",
            rows: &[
                (CnotCost, "12.5n-14|12.5n-17.5"),
                (CnotDepth, "12n-12|12n-15"),
                (TCost, "16n-32"),
                (TDepth, "4n+4"),
            ],
        },
        Family {
            name: "mcu2_tdepth",
            gate: "MCU2, T-depth variant",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6 && a.m >= 1,
            validity_text: "n >= 6, m >= 1",
            rows: &[
                (CnotCost, "12.5n+8m-30|12.5n+8m-26.5"),
                (CnotDepth, "12n+8lg(m+1)-27|12n+8lg(m+1)-24"),
                (TCost, "16n-48"),
                (TDepth, "4n"),
            ],
        },
        Family {
            name: "mcmtsu2",
            gate: "MCMTSU2",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6 && a.m >= 1,
            validity_text: "n >= 6, m >= 1",
            rows: &[
                (CnotCost, "12n+8m-40"),
                (CnotDepth, "8n+8lg(m)-8"),
                (TCost, "16n-48"),
                (TDepth, "8n-6|8n-3"),
                (HCost, "8n-32"),
                (HDepth, "4n-11"),
                (Rotations, "8m"),
            ],
        },
        Family {
            name: "mcmtx",
            gate: "MCMTX",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 5 && a.m >= 2,
            validity_text: "n >= 5, m >= 2",
            rows: &[
                (CnotCost, "12n+2m-22"),
                (CnotDepth, "8n+2lg(m)"),
                (TCost, "16n-32"),
                (TDepth, "8n+5|8n+2"),
                (HCost, "8n-20"),
            ],
        },
        Family {
            name: "ancil",
            gate: "MCMTSU2 with extra dirty ancillae",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6 && a.m >= 1 && 2 * a.n_chi <= a.n - 6,
            validity_text: "n >= 6, m >= 1, n_chi <= floor((n-6)/2)",
            rows: &[
                (CnotCost, "12n+8m-8n_chi-40"),
                (CnotDepth, "8n+8lg(m)-8"),
                (TCost, "16n-16n_chi-48"),
                (TDepth, "8n-6|8n-3"),
                (HCost, "8n-8n_chi-32"),
                (HDepth, "4n-11"),
                (Rotations, "8m"),
            ],
        },
        Family {
            name: "ancil_tdepth",
            gate: "MCMTSU2 with extra dirty ancillae, T-depth variant",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 6 && a.m >= 1 && 2 * a.n_chi <= a.n - 6,
            validity_text: "n >= 6, m >= 1, n_chi <= floor((n-6)/2)",
            rows: &[
                (CnotCost, "12.5n+8m-n_chi-38|12.5n+8m-n_chi-34.5"),
                (CnotDepth, "12n+8lg(m)-27|12n+8lg(m)-24"),
                (TCost, "16n-16n_chi-48"),
                (TDepth, "4n"),
                (HCost, "9n-10n_chi-36|9n-10n_chi-37"),
                (HDepth, "4n-10"),
                (SCost, "0.5n-n_chi-2|0.5n-n_chi-2.5"),
                (SDepth, "1"),
                (Rotations, "8m"),
            ],
        },
        Family {
            name: "lnn_vchain",
            gate: "LNN V-chain Z, separated head controls",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 3 && a.k > a.n,
            validity_text: "n >= 3, k > n",
            rows: &[
                (CnotCost, "2k+6n-9"),
                (CnotDepth, "2k+2n-1"),
                (TCost, "8n-8"),
                (TDepth, "2n"),
                (HCost, "4n-2"),
                (HDepth, "2n"),
            ],
        },
        Family {
            name: "lnn_vchain_adj",
            gate: "LNN V-chain Z, adjacent head controls",
            source: OURS,
            kind: exact,
            validity: |a| a.n >= 3 && a.k > a.n,
            validity_text: "n >= 3, k > n",
            rows: &[
                (CnotCost, "2k+6n-12"),
                (CnotDepth, "2k+2n"),
                (TCost, "8n-12"),
                (TDepth, "2n"),
                (HCost, "4n-8"),
                (HDepth, "2n-2"),
            ],
        },
        Family {
            name: "lnn_basic",
            gate: "LNN MCSU2, target at the edge",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 6 && a.k > a.n,
            validity_text: "n >= 6, k > n",
            rows: &[
                (CnotCost, "8k+12n-48"),
                (CnotDepth, "8k+4n-8"),
                (TCost, "16n-32"),
                (TDepth, "4n"),
                (HCost, "8n-10"),
                (HDepth, "4n-3"),
                (Rotations, "8"),
            ],
        },
        Family {
            name: "lnn_su2",
            gate: "LNN MCSU2",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 6 && a.k > a.n,
            validity_text: "n >= 6, k > n",
            rows: &[
                (CnotCost, "10k+12n-50"),
                (CnotDepth, "9k+4n-5"),
                (TCost, "16n-32"),
                (TDepth, "4n"),
                (HCost, "8n-10"),
                (HDepth, "4n-3"),
                (Rotations, "8"),
            ],
        },
        Family {
            name: "lnn_mcx",
            gate: "LNN MCX",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 5 && a.k >= a.n + 2,
            validity_text: "n >= 5, k >= n+2",
            rows: &[
                (CnotCost, "8k+14n-34"),
                (CnotDepth, "8k+5n+1"),
                (TCost, "16n-16"),
                (TDepth, "4n+4"),
                (HCost, "8n+4"),
                (HDepth, "4n+3"),
            ],
        },
        Family {
            name: "lnn_u2",
            gate: "LNN MCU2",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 6 && a.k > a.n + 1,
            validity_text: "n >= 6, k > n+1",
            rows: &[
                (CnotCost, "12k+12n-56"),
                (CnotDepth, "10k+4n"),
                (TCost, "16n-32"),
                (TDepth, "4n"),
                (HCost, "8n-8"),
                (HDepth, "4n-1"),
                (Rotations, "11"),
            ],
        },
        Family {
            name: "lnn_row",
            gate: "LNN MCSU2, alternating control/free line",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 3 && a.k == 2 * a.n - 1,
            validity_text: "n >= 3, k = 2n-1",
            rows: &[
                (CnotCost, "12n-12"),
                (CnotDepth, "12n-12"),
                (TCost, "8n-8"),
                (TDepth, "4n-4"),
                (HCost, "4n-8"),
                (HDepth, "4n-8"),
                (Rotations, "5"),
            ],
        },
        Family {
            name: "lnn_rowg",
            gate: "LNN MCSU2, packed line",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 6 && a.k == a.n + 1,
            validity_text: "n >= 6, k = n+1",
            rows: &[
                (CnotCost, "20n-48"),
                (CnotDepth, "12n"),
                (TCost, "16n-48"),
                (TDepth, "4n"),
                (HCost, "8n-32"),
                (HDepth, "4n-11"),
                (Rotations, "8"),
            ],
        },
        Family {
            name: "lnn_mcmtsu2",
            gate: "LNN MCMTSU2",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 6 && a.m >= 1 && a.k >= a.n + a.m,
            validity_text: "n >= 6, m >= 1, k >= n+m",
            rows: &[
                (CnotCost, "24k+14n-40"),
                (CnotDepth, "24k+5n-4"),
                (TCost, "16n-32"),
                (TDepth, "4n"),
                (HCost, "8n-8"),
                (HDepth, "4n"),
                (Rotations, "8m"),
            ],
        },
        Family {
            name: "lnn_mcmtx",
            gate: "LNN MCMTX",
            source: OURS,
            kind: upper,
            validity: |a| a.n >= 5 && a.m >= 2 && a.k >= a.n + a.m,
            validity_text: "n >= 5, m >= 2, k >= n+m",
            rows: &[
                (CnotCost, "12k+14n-2m-34"),
                (CnotDepth, "12k+5n-2m+1"),
                (TCost, "16n-16"),
                (TDepth, "4n+4"),
                (HCost, "8n+2m+2"),
                (HDepth, "4n+2m+1"),
            ],
        },
    ]
}

/// Baseline rows of prior methods: (family, gate, source, term).
///
/// Every cell of a row carries the same leading term, as in the published
/// comparison tables.
const BASELINES: [(&str, &str, &str, &str); 11] = [
    ("barenco95.mcsu2", "MCSU2", "Barenco et al. 1995", "48n"),
    ("maslov16.mcsu2", "MCSU2", "Maslov 2016", "32n"),
    ("iten16.mcsu2", "MCSU2", "Iten et al. 2016", "28n"),
    ("vale23.mcsu2", "MCSU2", "Vale et al. 2023", "20n"),
    ("barenco95.mcx", "MCX", "Barenco et al. 1995", "24n"),
    (
        "maslov16.mcx",
        "MCX",
        "Maslov 2016; Iten et al. 2016",
        "16n",
    ),
    ("barenco95.mcu2", "MCU2", "Barenco et al. 1995", "48n"),
    (
        "maslov16.mcu2",
        "MCU2",
        "Maslov 2016; Iten et al. 2016",
        "32n",
    ),
    ("lnn_prior.mcsu2", "LNN MCSU2", "prior LNN methods", ""),
    ("lnn_prior.mcx", "LNN MCX", "prior LNN methods", ""),
    ("lnn_prior.mcu2", "LNN MCU2", "prior LNN methods", ""),
];

/// Read-only formula registry.
#[derive(Debug, Clone)]
pub struct Registry {
    formulas: Vec<CostFormula>,
}

impl Registry {
    /// Builds the registry of every known formula.
    pub fn standard() -> Self {
        let mut formulas = Vec::new();
        for fam in families() {
            for &(metric, text) in fam.rows {
                formulas.push(CostFormula {
                    id: format!("{}.{}", fam.name, metric.suffix()),
                    expr: Expr::parse(text).expect("registered expressions parse"),
                    gate: fam.gate,
                    metric,
                    validity: fam.validity,
                    validity_text: fam.validity_text,
                    source: fam.source,
                    bound_kind: fam.kind,
                });
            }
        }
        for (family, gate, source, term) in BASELINES {
            let cells: [(Metric, &str); 4] = if term.is_empty() {
                [
                    (CnotCost, "O(nk)"),
                    (CnotDepth, "O(k+n)"),
                    (TCost, "O(n)"),
                    (TDepth, "O(n)"),
                ]
            } else {
                [
                    (CnotCost, term),
                    (CnotDepth, term),
                    (TCost, term),
                    (TDepth, term),
                ]
            };
            for (metric, text) in cells {
                formulas.push(CostFormula {
                    id: format!("{family}.{}", metric.suffix()),
                    expr: Expr::parse(text).expect("registered expressions parse"),
                    gate,
                    metric,
                    validity: |a| a.n >= 1,
                    validity_text: "n >= 1",
                    source,
                    bound_kind: BoundKind::LeadingTerm,
                });
            }
        }
        Self { formulas }
    }

    /// All formulas in registration order.
    pub fn formulas(&self) -> &[CostFormula] {
        &self.formulas
    }

    /// Looks up a formula by identifier.
    pub fn get(&self, id: &str) -> Result<&CostFormula> {
        self.formulas
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::UnknownFormula(id.to_string()))
    }

    /// Evaluates formula `id` at `args`.
    pub fn evaluate(&self, id: &str, args: &Args) -> Result<Value> {
        self.get(id)?.evaluate(args)
    }
}

/// Shared registry instance.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::standard)
}

/// Evaluates formula `id` of the shared registry.
pub fn evaluate(id: &str, n: usize, k: usize, m: usize, n_chi: usize) -> Result<Value> {
    registry().evaluate(id, &Args { n, k, m, n_chi })
}

/// A rendered table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// Column headers.
    pub header: Vec<String>,
    /// Cell text, one vector per row.
    pub rows: Vec<Vec<String>>,
}

impl Report {
    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    /// Comma-separated rendering with quoting where needed.
    pub fn to_csv(&self) -> String {
        let field = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(field).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Circuit whose counts are placed next to the formula values.
#[derive(Debug, Clone)]
pub enum Synth {
    /// All-to-all synthesis.
    Ata(MCGateSpec, SynthOptions),
    /// LNN synthesis on a placement.
    Lnn(MCGateSpec, LnnPlacement),
}

impl Synth {
    /// Synthesizes and returns (CNOT count, T count).
    pub fn cnot_t(&self) -> Result<(usize, usize)> {
        let c = match self {
            Synth::Ata(spec, opts) => synth_ata(spec, *opts)?,
            Synth::Lnn(spec, placement) => synth_lnn(spec, placement)?,
        };
        let g = counts(&c)?;
        Ok((g.cnot, g.t))
    }
}

/// One requested report row.
#[derive(Debug, Clone)]
pub struct RowSpec {
    /// Gate label.
    pub gate: String,
    /// Ancilla label.
    pub ancilla: String,
    /// Formula family, for example `mcsu2` or `barenco95.mcsu2`.
    pub family: String,
    /// Arguments for the formulas.
    pub args: Args,
    /// Circuit to count, if any.
    pub synth: Option<Synth>,
}

/// Which rows a comparison table shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Against {
    /// Only the rows of this crate.
    Paper,
    /// Prior-method baselines as well.
    Baselines,
}

/// Header of comparison tables.
pub const REPORT_HEADER: [&str; 11] = [
    "gate",
    "ancilla",
    "source",
    "kind",
    "cnot_cost",
    "cnot_depth",
    "t_cost",
    "t_depth",
    "synth_cnot",
    "synth_t",
    "flag",
];

fn cell(reg: &Registry, family: &str, metric: Metric, args: &Args) -> (String, Option<Value>) {
    match reg.evaluate(&format!("{family}.{}", metric.suffix()), args) {
        Ok(v) => (v.to_string(), Some(v)),
        Err(Error::UnknownFormula(_)) => ("-".into(), None),
        Err(_) => ("n/a".into(), None),
    }
}

fn flag(kind: BoundKind, pairs: &[(Option<Value>, usize)]) -> String {
    if kind == BoundKind::LeadingTerm {
        return kind.label().into();
    }
    let mut ok = true;
    let mut compared = false;
    for (formula, actual) in pairs {
        if let Some(Value::Int(f)) = formula {
            compared = true;
            let a = *actual as i64;
            ok &= match kind {
                BoundKind::Exact => a == *f,
                _ => a <= *f,
            };
        }
    }
    match (compared, ok, kind) {
        (false, _, _) => "n/a".into(),
        (true, true, BoundKind::Exact) => "match".into(),
        (true, true, _) => "within".into(),
        (true, false, BoundKind::Exact) => "MISMATCH".into(),
        (true, false, _) => "EXCEEDS".into(),
    }
}

/// Builds a comparison table from row requests.
///
/// Formula cells outside their validity range render as `n/a`; missing
/// formulas as `-`. Synthesis failures leave the synthesized columns empty.
pub fn report(specs: &[RowSpec]) -> Report {
    let reg = registry();
    let mut rows = Vec::new();
    for spec in specs {
        let kind = reg
            .get(&format!("{}.cnot", spec.family))
            .map(|f| f.bound_kind)
            .unwrap_or(BoundKind::Exact);
        let source = reg
            .get(&format!("{}.cnot", spec.family))
            .map(|f| f.source)
            .unwrap_or("-");
        let (cc, cv) = cell(reg, &spec.family, CnotCost, &spec.args);
        let (cd, _) = cell(reg, &spec.family, CnotDepth, &spec.args);
        let (tc, tv) = cell(reg, &spec.family, TCost, &spec.args);
        let (td, _) = cell(reg, &spec.family, TDepth, &spec.args);
        let actual = spec.synth.as_ref().and_then(|s| s.cnot_t().ok());
        let (sc, st, fl) = match actual {
            Some((c, t)) => (
                c.to_string(),
                t.to_string(),
                flag(kind, &[(cv, c), (tv, t)]),
            ),
            None => (String::new(), String::new(), flag(kind, &[])),
        };
        rows.push(vec![
            spec.gate.clone(),
            spec.ancilla.clone(),
            source.to_string(),
            kind.label().to_string(),
            cc,
            cd,
            tc,
            td,
            sc,
            st,
            fl,
        ]);
    }
    Report {
        header: REPORT_HEADER.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}

/// Fixed target operator used for synthesized report rows.
fn sample_su2() -> AxisAngle {
    AxisAngle::new(
        UnitVec3::normalized(0.36, 0.48, 0.8).expect("non-zero vector"),
        1.1,
    )
}

fn row(gate: &str, ancilla: &str, family: &str, args: Args, synth: Option<Synth>) -> RowSpec {
    RowSpec {
        gate: gate.into(),
        ancilla: ancilla.into(),
        family: family.into(),
        args,
        synth,
    }
}

fn ata_rows(n: usize, against: Against, tdepth: bool) -> Vec<RowSpec> {
    let args = Args::n(n);
    let opts = if tdepth {
        SynthOptions::tdepth()
    } else {
        SynthOptions::default()
    };
    let su2 = MCGateSpec::mcsu2(n, sample_su2());
    let mcx = MCGateSpec::mcx(n, 1);
    let mcu2 = MCGateSpec::mcu2(n, U2Spec::new(sample_su2(), 0.4));
    let (baselines, ours): (Vec<(&str, &str)>, [&str; 3]) = if tdepth {
        (
            vec![
                ("MCSU2", "vale23.mcsu2"),
                ("MCX", "maslov16.mcx"),
                ("MCU2", "maslov16.mcu2"),
            ],
            ["tdepth", "mcx_tdepth", "mcu2_tdepth"],
        )
    } else {
        (
            vec![
                ("MCSU2", "barenco95.mcsu2"),
                ("MCSU2", "maslov16.mcsu2"),
                ("MCSU2", "iten16.mcsu2"),
                ("MCSU2", "vale23.mcsu2"),
                ("MCX", "barenco95.mcx"),
                ("MCX", "maslov16.mcx"),
                ("MCU2", "barenco95.mcu2"),
                ("MCU2", "maslov16.mcu2"),
            ],
            ["mcsu2", "mcx", "mcu2"],
        )
    };
    let groups = [
        ("MCSU2", "none", ours[0], su2),
        ("MCX", "one dirty", ours[1], mcx),
        ("MCU2", "one clean", ours[2], mcu2),
    ];
    let mut rows = Vec::new();
    for (gate, anc, family, spec) in groups {
        if against == Against::Baselines {
            for (g, b) in &baselines {
                if *g == gate {
                    rows.push(row(gate, anc, b, args, None));
                }
            }
        }
        let synth = spec.validate().is_ok().then_some(Synth::Ata(spec, opts));
        rows.push(row(gate, anc, family, args, synth));
    }
    rows
}

/// Deterministic LNN placement of `k` positions for a report row.
///
/// The target sits in the middle of the line, the helper (if any) at the
/// top, and the controls fill the remaining positions from the top.
pub fn report_placement(n: usize, k: usize, helper: Option<Role>) -> Option<LnnPlacement> {
    let used = n + 1 + usize::from(helper.is_some());
    if k < used {
        return None;
    }
    let mut roles = vec![Role::Idle; k];
    roles[k / 2] = Role::Target;
    let mut free = (0..k).filter(|&i| i != k / 2);
    if let Some(h) = helper {
        roles[free.next().expect("line has room")] = h;
    }
    for i in free.take(n) {
        roles[i] = Role::Control;
    }
    Some(LnnPlacement::new(roles))
}

fn lnn_rows(n: usize, k: usize, against: Against) -> Vec<RowSpec> {
    let args = Args {
        n,
        k,
        m: 1,
        n_chi: 0,
    };
    let groups = [
        (
            "LNN MCSU2",
            "none",
            "lnn_su2",
            "lnn_prior.mcsu2",
            MCGateSpec::mcsu2(n, sample_su2()),
            None,
        ),
        (
            "LNN MCX",
            "one dirty",
            "lnn_mcx",
            "lnn_prior.mcx",
            MCGateSpec::mcx(n, 1),
            Some(Role::Dirty),
        ),
        (
            "LNN MCU2",
            "one clean",
            "lnn_u2",
            "lnn_prior.mcu2",
            MCGateSpec::mcu2(n, U2Spec::new(sample_su2(), 0.4)),
            Some(Role::Clean),
        ),
    ];
    let mut rows = Vec::new();
    for (gate, anc, family, prior, spec, helper) in groups {
        if against == Against::Baselines {
            rows.push(row(gate, anc, prior, args, None));
        }
        let synth = report_placement(n, k, helper).map(|p| Synth::Lnn(spec, p));
        rows.push(row(gate, anc, family, args, synth));
    }
    rows
}

/// Built-in tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// All-to-all single-target gates.
    Ata,
    /// All-to-all single-target gates, T-depth variant.
    TDepth,
    /// LNN single-target gates.
    Lnn,
    /// MCSU2 CNOT/T/H cost against the number of extra dirty ancillae.
    AncillaSweep,
}

/// Builds one of the built-in tables at `n` controls (and `k` line length).
pub fn table(which: Table, n: usize, k: usize, against: Against) -> Report {
    match which {
        Table::Ata => report(&ata_rows(n, against, false)),
        Table::TDepth => report(&ata_rows(n, against, true)),
        Table::Lnn => report(&lnn_rows(n, k, against)),
        Table::AncillaSweep => ancilla_sweep(n),
    }
}

/// Formula and synthesized costs of MCSU2 for every admissible `n_chi`.
pub fn ancilla_sweep(n: usize) -> Report {
    let reg = registry();
    let header = [
        "n_chi",
        "cnot_cost",
        "t_cost",
        "h_cost",
        "synth_cnot",
        "synth_t",
        "flag",
    ];
    let mut rows = Vec::new();
    let max = n.saturating_sub(6) / 2;
    for n_chi in 0..=max {
        let args = Args {
            n,
            k: 0,
            m: 1,
            n_chi,
        };
        let (cc, cv) = cell(reg, "ancil", CnotCost, &args);
        let (tc, tv) = cell(reg, "ancil", TCost, &args);
        let (hc, _) = cell(reg, "ancil", HCost, &args);
        let ancilla = if n_chi == 0 {
            Ancilla::None
        } else {
            Ancilla::Dirty(n_chi)
        };
        let actual = MCGateSpec::new(GateKind::Su2(sample_su2()), n, ancilla)
            .ok()
            .and_then(|s| Synth::Ata(s, SynthOptions::default()).cnot_t().ok());
        let (sc, st, fl) = match actual {
            Some((c, t)) => (
                c.to_string(),
                t.to_string(),
                flag(BoundKind::Exact, &[(cv, c), (tv, t)]),
            ),
            None => (String::new(), String::new(), "n/a".into()),
        };
        rows.push(vec![n_chi.to_string(), cc, tc, hc, sc, st, fl]);
    }
    Report {
        header: header.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn published_examples() {
        assert_eq!(evaluate("mcsu2.cnot", 6, 0, 1, 0).unwrap(), Value::Int(40));
        assert_eq!(
            evaluate("lnn_mcx.cnot", 5, 7, 1, 0).unwrap(),
            Value::Int(92)
        );
        assert_eq!(evaluate("tdepth.cnot", 7, 0, 1, 0).unwrap(), Value::Int(61));
        assert_eq!(evaluate("tdepth.cnot", 6, 0, 1, 0).unwrap(), Value::Int(45));
        assert_eq!(
            evaluate("mcsu2.t_depth", 7, 0, 1, 0).unwrap(),
            Value::Int(53)
        );
    }

    #[test]
    fn out_of_range_and_unknown_ids_are_errors() {
        assert!(matches!(
            evaluate("mcsu2.cnot", 5, 0, 1, 0),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            evaluate("ancil.cnot", 10, 0, 1, 3),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            evaluate("lnn_mcx.cnot", 6, 7, 1, 0),
            Err(Error::OutOfValidity { .. })
        ));
        assert!(matches!(
            evaluate("nope.cnot", 6, 0, 1, 0),
            Err(Error::UnknownFormula(_))
        ));
    }

    #[test]
    fn identifiers_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.formulas().iter().map(|f| f.id.as_str()).collect();
        ids.sort_unstable();
        let len = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), len);
    }

    #[test]
    fn expressions_render_and_reparse() {
        for text in ["12.5n+8m-n_chi-38", "8n+8lg(m)-8", "0.5n-2", "8", "-3k+n"] {
            let a = Affine::parse(text).unwrap();
            assert_eq!(Affine::parse(&a.to_string()).unwrap(), a, "{text}");
        }
        assert_eq!(Affine::parse("12n-32").unwrap().to_string(), "12n-32");
        assert!(Affine::parse("1.25n").is_err());
        assert!(Affine::parse("n+").is_err());
        assert!(Affine::parse("").is_err());
    }

    #[test]
    fn logarithms_round_up() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
        assert_eq!(
            evaluate("mcmtsu2.cnot_depth", 6, 0, 3, 0).unwrap(),
            Value::Int(56)
        );
    }

    #[test]
    fn baselines_are_leading_terms_and_markers() {
        let f = registry().get("barenco95.mcsu2.cnot").unwrap();
        assert_eq!(f.bound_kind, BoundKind::LeadingTerm);
        assert_eq!(f.evaluate(&Args::n(10)).unwrap(), Value::Int(480));
        assert_eq!(
            evaluate("lnn_prior.mcx.cnot", 10, 20, 1, 0).unwrap(),
            Value::Marker("O(nk)")
        );
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = report(&[]);
        assert!(r.rows.is_empty());
        assert_eq!(r.to_text().lines().count(), 2);
        assert_eq!(r.to_csv(), REPORT_HEADER.join(",") + "\n");
    }

    #[test]
    fn ata_table_at_ten_controls() {
        let r = table(Table::Ata, 10, 0, Against::Baselines);
        let sources: Vec<&str> = r.rows.iter().map(|row| row[2].as_str()).collect();
        assert_eq!(sources.len(), 11);
        assert_eq!(sources[4], OURS);
        let ours = &r.rows[4];
        assert_eq!((ours[0].as_str(), ours[4].as_str()), ("MCSU2", "88"));
        assert_eq!(ours[8], "88");
        for row in r.rows.iter().filter(|row| row[2] == OURS) {
            assert_eq!(row[10], "match", "{row:?}");
        }
        assert!(r.to_csv().lines().all(|l| !l.is_empty()));
    }

    #[test]
    fn tdepth_and_lnn_tables_flag_every_row() {
        let r = table(Table::TDepth, 9, 0, Against::Paper);
        assert_eq!(r.rows.len(), 3);
        assert!(r.rows.iter().all(|row| row[10] == "match"), "{r:?}");
        let r = table(Table::Lnn, 7, 14, Against::Baselines);
        assert_eq!(r.rows.len(), 6);
        assert_eq!(r.rows[0][4], "O(nk)");
        for row in r.rows.iter().filter(|row| row[2] == OURS) {
            assert_eq!(row[10], "within", "{row:?}");
        }
    }

    #[test]
    fn sweep_drops_eight_cnots_per_ancilla() {
        let r = ancilla_sweep(20);
        assert_eq!(r.rows.len(), 8);
        let cnots: Vec<i64> = r.rows.iter().map(|row| row[1].parse().unwrap()).collect();
        assert!(cnots.windows(2).all(|w| w[0] - w[1] == 8));
        assert!(r.rows.iter().all(|row| row[6] == "match"), "{r:?}");
    }

    proptest! {
        #[test]
        fn in_range_values_are_non_negative_integers(
            n in 1usize..60, dk in 0usize..30, m in 1usize..9, n_chi in 0usize..20,
        ) {
            let args = Args { n, k: n + dk, m, n_chi };
            for f in registry().formulas() {
                if let Ok(Value::Int(v)) = f.evaluate(&args) {
                    prop_assert!(v >= 0, "{} = {v} at {args}", f.id);
                }
            }
            let row_args = Args { k: 2 * n.max(3) - 1, n: n.max(3), ..args };
            let v = registry().evaluate("lnn_row.cnot", &row_args).unwrap();
            prop_assert!(v.as_int().unwrap() >= 0);
        }

        #[test]
        fn sweep_formula_is_linear_in_ancillae(n in 8usize..60, m in 1usize..6) {
            let max = (n - 6) / 2;
            for n_chi in 1..=max {
                let a = evaluate("ancil.cnot", n, 0, m, n_chi - 1).unwrap().as_int().unwrap();
                let b = evaluate("ancil.cnot", n, 0, m, n_chi).unwrap().as_int().unwrap();
                prop_assert_eq!(a - b, 8);
                let a = evaluate("ancil.t", n, 0, m, n_chi - 1).unwrap().as_int().unwrap();
                let b = evaluate("ancil.t", n, 0, m, n_chi).unwrap().as_int().unwrap();
                prop_assert_eq!(a - b, 16);
            }
        }
    }
}
