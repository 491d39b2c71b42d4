//! OpenQASM 2.0 export and import for lowered circuits.

use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// Formats an angle with 17 significant digits in positional notation.
///
/// Seventeen significant digits are enough for any `f64` to parse back to the
/// identical value.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0.0000000000000000".to_string()
        } else {
            "0.0000000000000000".to_string()
        };
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) < digits.len() - 1 {
        let split = exp as usize + 1;
        format!("{}.{}", &digits[..split], &digits[split..])
    } else {
        format!(
            "{}{}.0",
            digits,
            "0".repeat(exp as usize + 1 - digits.len())
        )
    };
    format!("{sign}{body}")
}

/// Renders a lowered circuit as OpenQASM 2.0.
pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    s.push_str(&format!("qreg q[{}];\n", circuit.num_qubits()));
    for (i, g) in circuit.gates().iter().enumerate() {
        let line = match *g {
            Gate::H(q) | Gate::T(q) | Gate::Tdg(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) => {
                format!("{} q[{}];", g.name(), q)
            }
            Gate::Rx(q, a) | Gate::Rz(q, a) => {
                format!("{}({}) q[{}];", g.name(), format_angle(a), q)
            }
            Gate::CX { control, target } => format!("cx q[{control}],q[{target}];"),
            _ => {
                return Err(Error::MidLevelGate {
                    gate: i,
                    name: g.name(),
                })
            }
        };
        s.push_str(&line);
        s.push('\n');
    }
    Ok(s)
}

fn qasm_err(line: usize, message: impl Into<String>) -> Error {
    Error::Qasm {
        line,
        message: message.into(),
    }
}

fn parse_qubit(tok: &str, line: usize) -> Result<usize> {
    let tok = tok.trim();
    let inner = tok
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| qasm_err(line, format!("expected q[i], found `{tok}`")))?;
    inner
        .trim()
        .parse()
        .map_err(|_| qasm_err(line, format!("bad qubit index `{inner}`")))
}

/// Evaluates an angle made of numbers, `pi`, unary minus, `*` and `/`.
fn parse_angle(expr: &str, line: usize) -> Result<f64> {
    let expr = expr.trim();
    if let Ok(v) = expr.parse::<f64>() {
        return Ok(v);
    }
    let (neg, rest) = match expr.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, expr),
    };
    let mut value = 1.0;
    let mut op = '*';
    let mut token = String::new();
    let apply = |value: &mut f64, op: char, tok: &str| -> Result<()> {
        let t = tok.trim();
        let v = if t == "pi" {
            std::f64::consts::PI
        } else {
            t.parse::<f64>()
                .map_err(|_| qasm_err(line, format!("bad angle term `{t}`")))?
        };
        if op == '*' {
            *value *= v;
        } else {
            *value /= v;
        }
        Ok(())
    };
    for ch in rest.chars() {
        if ch == '*' || ch == '/' {
            apply(&mut value, op, &token)?;
            token.clear();
            op = ch;
        } else {
            token.push(ch);
        }
    }
    apply(&mut value, op, &token)?;
    Ok(if neg { -value } else { value })
}

/// Parses OpenQASM 2.0 text produced by [`export_qasm`] or a compatible tool.
///
/// Supported statements: the header, `include`, one `qreg q[N]`, `barrier`
/// (ignored) and the gates `h t tdg s sdg x z rx rz cx`.
pub fn import_qasm(text: &str) -> Result<Circuit> {
    let mut num_qubits: Option<usize> = None;
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| qasm_err(line_no, "missing `;`"))?
            .trim();
        if stmt.starts_with("OPENQASM")
            || stmt.starts_with("include")
            || stmt.starts_with("barrier")
        {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            let n = parse_qubit(rest, line_no)?;
            if num_qubits.replace(n).is_some() {
                return Err(qasm_err(line_no, "only one register is supported"));
            }
            continue;
        }
        let (head, args) = match stmt.find(" q[") {
            Some(p) => (stmt[..p].trim(), stmt[p..].trim()),
            None => {
                return Err(qasm_err(
                    line_no,
                    format!("unrecognised statement `{stmt}`"),
                ))
            }
        };
        let (name, param) = match head.split_once('(') {
            Some((n, p)) => (
                n.trim(),
                Some(
                    p.strip_suffix(')')
                        .ok_or_else(|| qasm_err(line_no, "unclosed parameter list"))?,
                ),
            ),
            None => (head, None),
        };
        let qubits = args
            .split(',')
            .map(|t| parse_qubit(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        let one = |qs: &[usize]| -> Result<usize> {
            match qs {
                [q] => Ok(*q),
                _ => Err(qasm_err(line_no, format!("`{name}` takes one qubit"))),
            }
        };
        let angle = || -> Result<f64> {
            parse_angle(
                param.ok_or_else(|| qasm_err(line_no, format!("`{name}` needs an angle")))?,
                line_no,
            )
        };
        let g = match name {
            "h" => Gate::H(one(&qubits)?),
            "t" => Gate::T(one(&qubits)?),
            "tdg" => Gate::Tdg(one(&qubits)?),
            "s" => Gate::S(one(&qubits)?),
            "sdg" => Gate::Sdg(one(&qubits)?),
            "x" => Gate::X(one(&qubits)?),
            "z" => Gate::Z(one(&qubits)?),
            "rx" => Gate::Rx(one(&qubits)?, angle()?),
            "rz" => Gate::Rz(one(&qubits)?, angle()?),
            "cx" | "CX" => match qubits[..] {
                [c, t] => Gate::CX {
                    control: c,
                    target: t,
                },
                _ => return Err(qasm_err(line_no, "`cx` takes two qubits")),
            },
            other => return Err(qasm_err(line_no, format!("unsupported gate `{other}`"))),
        };
        gates.push(g);
    }
    let n = num_qubits.ok_or_else(|| qasm_err(0, "missing qreg declaration"))?;
    Circuit::from_gates(n, gates).map_err(|e| qasm_err(0, e.to_string()))
}
