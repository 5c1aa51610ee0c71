//! Reversible `popcount == 1` flag by a balanced tree of saturating counters.
//!
//! Every tree node holds `o = [count >= 1]` and `t = [count >= 2]` for its
//! leaves. Two children combine through `s = o1 ∧ o2`, `o = o1 ⊕ o2 ⊕ s` and
//! `t = t1 ∨ t2 ∨ s`; the flag is `o ∧ ¬t` at the root.

use crate::circuits::gate::{Circuit, Control, Gate, Mcp};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, Sign};

/// Measured depth constants: the compute circuit has depth at most
/// `HAMMING_DEPTH_PER_LEVEL · ⌈log₂ a⌉ + HAMMING_DEPTH_OFFSET`.
pub const HAMMING_DEPTH_PER_LEVEL: usize = 6;
pub const HAMMING_DEPTH_OFFSET: usize = 1;

/// Compute half of the flag circuit. Running `gates` in reverse undoes it,
/// clearing the flag and the workspace.
#[derive(Debug, Clone, PartialEq)]
pub struct HammingFlag {
    pub gates: Vec<Gate>,
    pub workspace: usize,
}

#[derive(Clone, Copy)]
struct Node {
    o: usize,
    /// `None` while the count is known to be below 2.
    t: Option<usize>,
}

/// Number of workspace qubits needed for an `a`-bit input.
pub fn hamming_workspace(a: usize) -> usize {
    hamming_flag_gates(&(0..a).collect::<Vec<_>>(), a, a + 1).workspace
}

/// Gates computing `[popcount(input) == 1]` into `flag`, using fresh
/// workspace qubits numbered from `work_start`.
pub fn hamming_flag_gates(input: &[usize], flag: usize, work_start: usize) -> HammingFlag {
    let mut gates = Vec::new();
    let mut next = work_start;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut level: Vec<Node> = input.iter().map(|&q| Node { o: q, t: None }).collect();
    while level.len() > 1 {
        let mut up = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            let [l, r] = match pair {
                [l, r] => [*l, *r],
                [single] => {
                    up.push(*single);
                    continue;
                }
                _ => unreachable!(),
            };
            let s = fresh();
            let o = fresh();
            gates.push(Gate::toffoli(l.o, r.o, s));
            gates.push(Gate::cnot(l.o, o));
            gates.push(Gate::cnot(r.o, o));
            gates.push(Gate::cnot(s, o));
            let t = match (l.t, r.t) {
                (None, None) => s,
                (lt, rt) => {
                    let t = fresh();
                    let controls = [lt, rt, Some(s)]
                        .into_iter()
                        .flatten()
                        .map(Control::negative)
                        .collect();
                    gates.push(Gate::Mcp(Mcp::new(
                        controls,
                        vec![(t, Pauli::X)],
                        Sign::Plus,
                    )));
                    gates.push(Gate::X(t));
                    t
                }
            };
            up.push(Node { o, t: Some(t) });
        }
        level = up;
    }
    let root = level[0];
    match root.t {
        None => gates.push(Gate::cnot(root.o, flag)),
        Some(t) => gates.push(Gate::Mcp(Mcp::new(
            vec![Control::positive(root.o), Control::negative(t)],
            vec![(flag, Pauli::X)],
            Sign::Plus,
        ))),
    }
    HammingFlag {
        gates,
        workspace: next - work_start,
    }
}

/// Standalone flag circuit with registers `input`, `flag` and `work`.
pub fn build_hamming_flag(a: usize) -> Result<Circuit> {
    if a == 0 {
        return Err(Error::InvalidArgument("Hamming flag needs a >= 1".into()));
    }
    let input: Vec<usize> = (0..a).collect();
    let h = hamming_flag_gates(&input, a, a + 1);
    let mut c = Circuit::new(a + 1 + h.workspace);
    c.add_register("input", 0, a)?;
    c.add_register("flag", a, 1)?;
    if h.workspace > 0 {
        c.add_register("work", a + 1, h.workspace)?;
    }
    c.extend(h.gates)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::schedule_layers;

    #[test]
    fn one_bit_is_a_cnot() {
        let c = build_hamming_flag(1).unwrap();
        assert_eq!(c.gates(), &[Gate::cnot(0, 1)]);
    }

    #[test]
    fn depth_bound_holds() {
        for a in 1..=64 {
            let c = build_hamming_flag(a).unwrap();
            let levels = (a as f64).log2().ceil() as usize;
            let depth = schedule_layers(&c).depth;
            assert!(
                depth <= HAMMING_DEPTH_PER_LEVEL * levels + HAMMING_DEPTH_OFFSET,
                "a={a}: depth {depth}"
            );
        }
    }
}
