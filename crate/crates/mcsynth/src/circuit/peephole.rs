//! Local cancellation of adjacent inverse gate pairs.

use super::Gate;

/// Removes pairs of mutually inverse gates that meet with nothing in between
/// on any of their qubits.
///
/// Only gates accepted by `eligible` are considered. Pairs must act on the
/// same qubits in the same roles, so `CX(a→b)` cancels `CX(a→b)` but not
/// `CX(b→a)`. Cancellation cascades: removing a pair can expose another.
pub fn cancel_adjacent_inverses(gates: &[Gate], eligible: impl Fn(&Gate) -> bool) -> Vec<Gate> {
    let width = gates
        .iter()
        .flat_map(|g| g.qubits())
        .max()
        .map_or(0, |q| q + 1);
    let mut live: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); width];
    for g in gates {
        let qs = g.qubits();
        let top = stacks[qs[0]].last().copied();
        let cancels = eligible(g)
            && top.is_some_and(|i| {
                let prev = live[i].expect("stack holds live gates");
                eligible(&prev)
                    && prev == g.inverse()
                    && qs.iter().all(|&q| stacks[q].last() == Some(&i))
            });
        if cancels {
            let i = top.expect("checked above");
            for &q in &qs {
                stacks[q].pop();
            }
            live[i] = None;
        } else {
            let i = live.len();
            live.push(Some(*g));
            for &q in &qs {
                stacks[q].push(i);
            }
        }
    }
    live.into_iter().flatten().collect()
}

/// True for Hadamard gates.
pub fn is_h(g: &Gate) -> bool {
    matches!(g, Gate::H(_))
}

/// True for CX gates.
pub fn is_cx(g: &Gate) -> bool {
    matches!(g, Gate::CX { .. })
}
