use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::sim::statevector::{StateVector, DEFAULT_QUBIT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceConfig {
    pub trials: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub qubit_cap: usize,
}

impl Default for EquivalenceConfig {
    fn default() -> Self {
        Self {
            trials: 20,
            tolerance: 1e-9,
            seed: 0x5eed,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Largest `1 - |⟨ψ₁|ψ₂⟩|` over the trials.
    pub max_deviation: f64,
    pub trials: usize,
    pub ancilla_restored: bool,
    pub seed: u64,
    pub tolerance: f64,
}

/// Qubits of the named registers, concatenated in the given order.
fn shared_qubits(c: &Circuit, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|name| {
            c.register(name)
                .map(|r| r.qubits())
                .ok_or_else(|| Error::Register(format!("register {name} missing")))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.concat())
}

fn embed(s: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .filter(|(b, _)| s >> b & 1 == 1)
        .map(|(_, &q)| 1 << q)
        .sum()
}

/// Runs `c` on `input` (over the shared qubits, auxiliaries `|0⟩`) and
/// returns the shared-register state plus the weight left outside it.
fn run_embedded(
    c: &Circuit,
    qubits: &[usize],
    input: &[Complex64],
    cap: usize,
) -> Result<(Vec<Complex64>, f64)> {
    if c.n_qubits() > cap {
        return Err(Error::QubitCap {
            qubits: c.n_qubits(),
            cap,
        });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << c.n_qubits()];
    let index: Vec<usize> = (0..input.len()).map(|s| embed(s, qubits)).collect();
    for (s, &i) in index.iter().enumerate() {
        amps[i] = input[s];
    }
    let mut state = StateVector::from_amplitudes(amps)?;
    state.apply_circuit(c)?;
    let out: Vec<Complex64> = index.iter().map(|&i| state.amplitudes()[i]).collect();
    let inside: f64 = out.iter().map(|a| a.norm_sqr()).sum();
    Ok((out, (1.0 - inside).max(0.0)))
}

/// Random-state equivalence on the named shared registers, which must have
/// equal total width in both circuits. All other qubits start in `|0⟩` and
/// must end there.
pub fn circuits_equivalent(
    c1: &Circuit,
    c2: &Circuit,
    shared: &[&str],
    config: &EquivalenceConfig,
) -> Result<EquivalenceVerdict> {
    let q1 = shared_qubits(c1, shared)?;
    let q2 = shared_qubits(c2, shared)?;
    if q1.len() != q2.len() {
        return Err(Error::Register(format!(
            "shared registers span {} qubits in one circuit and {} in the other",
            q1.len(),
            q2.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut max_dev: f64 = 0.0;
    let mut restored = true;
    for _ in 0..config.trials {
        let psi = StateVector::random(q1.len(), &mut rng)?;
        let (o1, leak1) = run_embedded(c1, &q1, psi.amplitudes(), config.qubit_cap)?;
        let (o2, leak2) = run_embedded(c2, &q2, psi.amplitudes(), config.qubit_cap)?;
        let overlap: Complex64 = o1.iter().zip(&o2).map(|(a, b)| a.conj() * b).sum();
        max_dev = max_dev.max(1.0 - overlap.norm());
        if leak1 > config.tolerance || leak2 > config.tolerance {
            restored = false;
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: restored && max_dev <= config.tolerance,
        max_deviation: max_dev,
        trials: config.trials,
        ancilla_restored: restored,
        seed: config.seed,
        tolerance: config.tolerance,
    })
}

/// Matrix of `c` restricted to the shared registers with auxiliaries in
/// `|0⟩`; column `s` is the image of basis state `s`. Errors when an
/// auxiliary qubit is left excited.
pub fn restricted_unitary(
    c: &Circuit,
    shared: &[&str],
    tolerance: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let qubits = shared_qubits(c, shared)?;
    let dim = 1 << qubits.len();
    let mut cols = Vec::with_capacity(dim);
    for s in 0..dim {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[s] = Complex64::new(1.0, 0.0);
        let (col, leak) = run_embedded(c, &qubits, &e, DEFAULT_QUBIT_CAP)?;
        if leak > tolerance {
            return Err(Error::Verification(format!(
                "auxiliary qubits left excited on basis input {s}"
            )));
        }
        cols.push(col);
    }
    Ok(cols)
}

/// Full-matrix comparison up to one global phase.
pub fn matrices_equal_up_to_phase(a: &[Vec<Complex64>], b: &[Vec<Complex64>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut phase = None;
    for (ca, cb) in a.iter().zip(b) {
        for (&x, &y) in ca.iter().zip(cb) {
            if phase.is_none() && x.norm() > 1e-6 {
                phase = Some(y / x);
            }
            let p = phase.unwrap_or(Complex64::new(1.0, 0.0));
            if (x * p - y).norm() > tol {
                return false;
            }
        }
    }
    true
}
