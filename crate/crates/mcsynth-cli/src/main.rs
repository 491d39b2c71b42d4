//! `mcsynth` command-line front end: synthesize, verify, count and report.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcsynth::ata::{synth_mcsu2_on, synth_mcu2_on, synth_mcx_on, SynthOptions};
use mcsynth::circuit::{
    counts, critical_path_depth, export_qasm, import_qasm, GateClass, GateCounts,
};
use mcsynth::cost::{self, Against, Table};
use mcsynth::lnn::{default_placement, synth_lnn, LnnPlacement, Role};
use mcsynth::sim::{
    equivalent, oracle_apply, oracle_unitary, randomized_equiv, simulate, EquivMode,
    MAX_DENSE_QUBITS,
};
use mcsynth::su2::{AxisAngle, U2Spec, UnitVec3};
use mcsynth::{Ancilla, Circuit, GateKind, Layout, MCGateSpec};
use serde_json::json;

/// Synthesis of multi-controlled gates into Clifford+T circuits.
#[derive(Debug, Parser)]
#[command(name = "mcsynth", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a gate, write OpenQASM 2.0 and print its counts.
    Synth {
        #[command(flatten)]
        gate: GateFlags,
        /// Output QASM file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a QASM file against the gate described by the flags.
    Verify {
        /// QASM file to check.
        file: PathBuf,
        /// Optional marker separating the file from the gate flags.
        #[arg(long)]
        spec: bool,
        #[command(flatten)]
        gate: GateFlags,
        /// Comparison mode; defaults to the natural mode of the gate.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Compare on this many random states instead of the full unitary.
        #[arg(long)]
        random_trials: Option<usize>,
        /// Seed of the random states.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest accepted entry-wise error.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print the gate counts of a QASM file.
    Count {
        /// QASM file to count.
        file: PathBuf,
    },
    /// Print a cost-model table.
    Report {
        /// Table to print.
        #[arg(long, value_enum)]
        table: TableArg,
        /// Number of controls.
        #[arg(long)]
        n: usize,
        /// Line length for LNN tables; defaults to 2n.
        #[arg(long)]
        k: Option<usize>,
        /// Emit CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
        /// Leave out the rows of prior methods.
        #[arg(long)]
        no_baselines: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GateArg {
    Mcx,
    Mcsu2,
    Mcu2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Connectivity {
    Ata,
    Lnn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Standard,
    Tdepth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    GlobalPhase,
    Subspace,
    TensorId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableArg {
    Ata,
    Lnn,
    Tdepth,
    AncillaSweep,
}

/// Flags describing the gate to synthesize or verify against.
#[derive(Debug, Clone, Args)]
struct GateFlags {
    /// Gate family.
    #[arg(long, value_enum)]
    gate: GateArg,
    /// Number of controls.
    #[arg(long)]
    controls: usize,
    /// Number of targets.
    #[arg(long, default_value_t = 1)]
    targets: usize,
    /// Qubit connectivity.
    #[arg(long, value_enum, default_value = "ata")]
    connectivity: Connectivity,
    /// Role letters per line position: c, t, a (dirty), z (clean), . (idle).
    #[arg(long)]
    placement: Option<String>,
    /// Helper qubits: none, dirty:K or clean:1.
    #[arg(long)]
    ancilla: Option<String>,
    /// Rotation axis as X,Y,Z (unit norm).
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    axis: String,
    /// Rotation angle in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    angle: f64,
    /// Global phase of a U(2) target in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phase: f64,
    /// Relative-phase Toffoli family (all-to-all only).
    #[arg(long, value_enum, default_value = "standard")]
    variant: Variant,
}

/// Failure of a command, mapped to the process exit code.
#[derive(Debug)]
enum Failure {
    /// Invalid flags or specification (exit 2).
    Usage(String),
    /// Runtime failure or failed verification (exit 1).
    Runtime(String),
}

type CliResult<T> = Result<T, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

fn parse_ancilla(text: &str) -> CliResult<Ancilla> {
    let bad = || {
        usage(format!(
            "invalid --ancilla {text:?}; expected none, dirty:K or clean:1"
        ))
    };
    if text == "none" {
        return Ok(Ancilla::None);
    }
    let (kind, count) = text.split_once(':').ok_or_else(bad)?;
    let count: usize = count.parse().map_err(|_| bad())?;
    match (kind, count) {
        (_, 0) => Ok(Ancilla::None),
        ("dirty", k) => Ok(Ancilla::Dirty(k)),
        ("clean", 1) => Ok(Ancilla::Clean(1)),
        _ => Err(bad()),
    }
}

fn parse_axis(text: &str) -> CliResult<UnitVec3> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("invalid --axis {text:?}; expected X,Y,Z")))?;
    match parts[..] {
        [x, y, z] => UnitVec3::new(x, y, z).map_err(usage),
        _ => Err(usage(format!("invalid --axis {text:?}; expected X,Y,Z"))),
    }
}

/// A validated gate request.
struct Request {
    spec: MCGateSpec,
    layout: Layout,
    placement: Option<LnnPlacement>,
    options: SynthOptions,
}

impl GateFlags {
    fn spec(&self) -> CliResult<MCGateSpec> {
        let n = self.controls;
        let m = self.targets;
        let su2 = AxisAngle::new(parse_axis(&self.axis)?, self.angle);
        let ancilla = match &self.ancilla {
            Some(text) => parse_ancilla(text)?,
            None => match self.gate {
                GateArg::Mcx if m == 1 && n >= 3 => Ancilla::Dirty(1),
                GateArg::Mcu2 => Ancilla::Clean(1),
                _ => Ancilla::None,
            },
        };
        let kind = match (self.gate, m) {
            (_, 0) => return Err(usage("--targets must be at least 1")),
            (GateArg::Mcx, 1) => GateKind::X,
            (GateArg::Mcx, m) => GateKind::MultiX(m),
            (GateArg::Mcsu2, 1) => GateKind::Su2(su2),
            (GateArg::Mcsu2, m) => GateKind::MultiSu2(vec![su2; m]),
            (GateArg::Mcu2, 1) => GateKind::U2(U2Spec::new(su2, self.phase)),
            (GateArg::Mcu2, m) => GateKind::MultiU2(vec![U2Spec::new(su2, self.phase); m]),
        };
        MCGateSpec::new(kind, n, ancilla).map_err(usage)
    }

    fn request(&self) -> CliResult<Request> {
        let spec = self.spec()?;
        let options = match self.variant {
            Variant::Standard => SynthOptions::default(),
            Variant::Tdepth => SynthOptions::tdepth(),
        };
        let placement = match &self.placement {
            Some(text) => Some(LnnPlacement::parse(text).map_err(usage)?),
            None => None,
        };
        if let Some(p) = &placement {
            let roles = p.roles();
            let dirty = roles.iter().filter(|r| **r == Role::Dirty).count();
            let clean = roles.iter().filter(|r| **r == Role::Clean).count();
            if self.ancilla.is_some()
                && (dirty < spec.ancilla.dirty() || clean != spec.ancilla.clean())
            {
                return Err(usage("--placement does not hold the requested ancillae"));
            }
        }
        match self.connectivity {
            Connectivity::Ata => {
                let layout = match &placement {
                    Some(p) => p.layout(),
                    None => Layout::ata(&spec),
                };
                layout.check(&spec).map_err(usage)?;
                Ok(Request {
                    spec,
                    layout,
                    placement: None,
                    options,
                })
            }
            Connectivity::Lnn => {
                if self.variant != Variant::Standard {
                    return Err(usage("--variant is only available for --connectivity ata"));
                }
                let p = placement.unwrap_or_else(|| default_placement(&spec));
                p.check(&spec).map_err(usage)?;
                Ok(Request {
                    spec,
                    layout: p.layout(),
                    placement: Some(p),
                    options,
                })
            }
        }
    }
}

impl Request {
    fn synthesize(&self) -> CliResult<Circuit> {
        let c = match &self.placement {
            Some(p) => synth_lnn(&self.spec, p),
            None => match self.spec.kind {
                GateKind::X | GateKind::MultiX(_) => {
                    synth_mcx_on(&self.spec, &self.layout, self.options)
                }
                GateKind::Su2(_) | GateKind::MultiSu2(_) => {
                    synth_mcsu2_on(&self.spec, &self.layout, self.options)
                }
                GateKind::U2(_) | GateKind::MultiU2(_) => {
                    synth_mcu2_on(&self.spec, &self.layout, self.options)
                }
            },
        };
        c.map_err(usage)
    }

    /// Qubits that only need to be restored, not acted on.
    fn borrowed(&self) -> Vec<usize> {
        let l = &self.layout;
        (0..l.num_qubits)
            .filter(|q| !l.controls.contains(q) && !l.targets.contains(q) && !l.clean.contains(q))
            .collect()
    }

    fn default_mode(&self) -> Mode {
        if self.spec.ancilla.clean() > 0 {
            Mode::Subspace
        } else if self.spec.is_x() {
            Mode::TensorId
        } else {
            Mode::Exact
        }
    }

    fn equiv_mode(&self, mode: Mode) -> CliResult<EquivMode> {
        Ok(match mode {
            Mode::Exact => EquivMode::Exact,
            Mode::GlobalPhase => EquivMode::GlobalPhase,
            Mode::TensorId => EquivMode::TensorIdentity {
                borrowed: self.borrowed(),
            },
            Mode::Subspace => {
                let qubit = *self
                    .layout
                    .clean
                    .first()
                    .ok_or_else(|| usage("--mode subspace needs a clean ancilla"))?;
                EquivMode::Subspace { qubit, value: 0 }
            }
        })
    }
}

fn counts_json(circuit: &Circuit) -> CliResult<serde_json::Value> {
    let g: GateCounts = counts(circuit).map_err(runtime)?;
    let mut obj = serde_json::Map::new();
    obj.insert("qubits".into(), json!(circuit.num_qubits()));
    for class in GateClass::ALL {
        obj.insert(class.label().into(), json!(g.count(class)));
    }
    obj.insert("depth".into(), json!(g.depth));
    for class in GateClass::ALL {
        obj.insert(format!("{}_depth", class.label()), json!(g.depth(class)));
    }
    for class in [GateClass::Cnot, GateClass::T, GateClass::H] {
        let d = critical_path_depth(circuit, class).map_err(runtime)?;
        obj.insert(format!("{}_critical_path", class.label()), json!(d));
    }
    Ok(serde_json::Value::Object(obj))
}

fn read_circuit(path: &Path) -> CliResult<Circuit> {
    let text = fs::read_to_string(path)
        .map_err(|e| runtime(format!("cannot read {}: {e}", path.display())))?;
    import_qasm(&text).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Synth { gate, out } => {
            let req = gate.request()?;
            let circuit = req.synthesize()?;
            let qasm = export_qasm(&circuit).map_err(runtime)?;
            fs::write(&out, qasm)
                .map_err(|e| runtime(format!("cannot write {}: {e}", out.display())))?;
            println!("{}", counts_json(&circuit)?);
            Ok(())
        }
        Command::Verify {
            file,
            spec: _,
            gate,
            mode,
            random_trials,
            seed,
            tol,
        } => {
            let req = gate.request()?;
            let circuit = read_circuit(&file)?;
            if circuit.num_qubits() != req.layout.num_qubits {
                return Err(runtime(format!(
                    "circuit has {} qubits, the gate needs {}",
                    circuit.num_qubits(),
                    req.layout.num_qubits
                )));
            }
            let mode = mode.unwrap_or_else(|| req.default_mode());
            let trials = match random_trials {
                Some(t) => Some(t),
                None if circuit.num_qubits() > MAX_DENSE_QUBITS => Some(32),
                None => None,
            };
            let report = match trials {
                Some(trials) => {
                    if mode == Mode::Subspace {
                        return Err(usage("--random-trials does not support --mode subspace"));
                    }
                    randomized_equiv(
                        &circuit,
                        |b| oracle_apply(&req.spec, &req.layout, b),
                        trials,
                        seed,
                        tol,
                    )
                    .map_err(runtime)?
                }
                None => {
                    let u = simulate(&circuit).map_err(runtime)?;
                    let v = oracle_unitary(&req.spec, &req.layout).map_err(runtime)?;
                    equivalent(&u, &v, req.equiv_mode(mode)?, tol).map_err(runtime)?
                }
            };
            println!(
                "{}",
                json!({
                    "pass": report.pass,
                    "mode": match trials {
                        Some(_) => "random-trials".to_string(),
                        None => mode.to_possible_value().expect("named").get_name().to_string(),
                    },
                    "max_error": report.max_error,
                    "tolerance": report.tolerance,
                })
            );
            if report.pass {
                Ok(())
            } else {
                Err(runtime(format!(
                    "verification failed: max error {:e} exceeds {:e}",
                    report.max_error, report.tolerance
                )))
            }
        }
        Command::Count { file } => {
            let circuit = read_circuit(&file)?;
            println!("{}", counts_json(&circuit)?);
            Ok(())
        }
        Command::Report {
            table,
            n,
            k,
            csv,
            no_baselines,
        } => {
            let which = match table {
                TableArg::Ata => Table::Ata,
                TableArg::Lnn => Table::Lnn,
                TableArg::Tdepth => Table::TDepth,
                TableArg::AncillaSweep => Table::AncillaSweep,
            };
            let against = if no_baselines {
                Against::Paper
            } else {
                Against::Baselines
            };
            let r = cost::table(which, n, k.unwrap_or(2 * n), against);
            if csv {
                print!("{}", r.to_csv());
            } else {
                print!("{}", r.to_text());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
