use crate::circuits::gate::{Circuit, Gate};
use crate::error::{Error, Result};

/// CNOT tree copying `instances[0]` onto every other instance.
///
/// Each round doubles the number of instances holding the value, so the tree
/// has `⌈log₂ instances.len()⌉` rounds. All instances must have equal width.
pub fn fanout_gates(instances: &[Vec<usize>]) -> Vec<Gate> {
    let m = instances.len();
    let mut gates = Vec::new();
    let mut filled = 1;
    while filled < m {
        let count = filled.min(m - filled);
        for h in 0..count {
            for (&s, &t) in instances[h].iter().zip(&instances[filled + h]) {
                gates.push(Gate::cnot(s, t));
            }
        }
        filled += count;
    }
    gates
}

/// Fanout of an `a`-qubit source register into `copies` fresh registers.
/// Registers are `source`, `copy1`, ..., `copy{copies}`.
pub fn build_fanout(a: usize, copies: usize) -> Result<Circuit> {
    if a == 0 || copies == 0 {
        return Err(Error::InvalidArgument(
            "fanout needs a nonempty register and at least one copy".into(),
        ));
    }
    let mut c = Circuit::new(a * (copies + 1));
    let mut instances = vec![c.add_register("source", 0, a)?.qubits()];
    for i in 1..=copies {
        instances.push(c.add_register(&format!("copy{i}"), i * a, a)?.qubits());
    }
    c.extend(fanout_gates(&instances))?;
    Ok(c)
}
