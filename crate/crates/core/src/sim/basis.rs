use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{BitVector, Pauli, Sign};

/// Runs a classical reversible circuit (X, CNOT, TOFFOLI and `+X`-target
/// MCPs) on a computational basis state.
pub fn simulate_basis(circuit: &Circuit, input: &BitVector) -> Result<BitVector> {
    Error::check_dim(circuit.n_qubits(), input.len())?;
    let mut s = input.clone();
    for g in circuit.gates() {
        match g {
            Gate::X(q) => s.flip(*q),
            Gate::Cnot { control, target } => {
                if s.get(*control) {
                    s.flip(*target);
                }
            }
            Gate::Toffoli { controls, target } => {
                if s.get(controls[0]) && s.get(controls[1]) {
                    s.flip(*target);
                }
            }
            Gate::Mcp(m) if m.sign == Sign::Plus && m.targets.iter().all(|t| t.1 == Pauli::X) => {
                if m.controls
                    .iter()
                    .all(|c| s.get(c.qubit) == c.polarity.active_value())
                {
                    for &(q, _) in &m.targets {
                        s.flip(q);
                    }
                }
            }
            other => {
                return Err(Error::UnsupportedGate(format!(
                    "{other} is not a classical permutation"
                )))
            }
        }
    }
    Ok(s)
}

/// Output of a QROM-shaped circuit on `|address⟩|0…⟩`: the data register
/// contents, plus whether every other qubit came back to its input value.
pub fn qrom_readout(circuit: &Circuit, address: &BitVector) -> Result<(BitVector, bool)> {
    let addr = circuit
        .register("address")
        .ok_or_else(|| Error::Register("circuit has no address register".into()))?;
    let data = circuit
        .register("data")
        .ok_or_else(|| Error::Register("circuit has no data register".into()))?;
    Error::check_dim(addr.len, address.len())?;
    let mut input = BitVector::zeros(circuit.n_qubits());
    for b in address.iter_ones() {
        input.set(addr.start + b, true);
    }
    let out = simulate_basis(circuit, &input)?;
    let word = out.slice(data.start, data.len);
    let restored = (0..circuit.n_qubits())
        .filter(|&q| q < data.start || q >= data.end())
        .all(|q| out.get(q) == input.get(q));
    Ok((word, restored))
}
