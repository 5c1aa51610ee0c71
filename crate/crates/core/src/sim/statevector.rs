use num_complex::Complex64;
use rand::Rng;

use crate::circuits::{Circuit, Gate, Mcp};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

/// Default simulator width limit.
pub const DEFAULT_QUBIT_CAP: usize = 22;

/// Dense state; basis index bit `q` is qubit `q` (qubit 0 least significant).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::QubitCap { qubits: n, cap })
    } else {
        Ok(())
    }
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::basis_with_cap(n, index, DEFAULT_QUBIT_CAP)
    }

    pub fn basis_with_cap(n: usize, index: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        *amps
            .get_mut(index)
            .ok_or_else(|| Error::InvalidArgument(format!("basis index {index} out of range")))? =
            Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Takes raw amplitudes and normalizes them.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(
                "amplitude count must be a power of two".into(),
            ));
        }
        let n = amps.len().trailing_zeros() as usize;
        let mut s = Self { n, amps };
        let norm = s.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        for a in &mut s.amps {
            *a /= norm;
        }
        Ok(s)
    }

    /// Normalized state with independent uniform real and imaginary parts.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        check_cap(n, DEFAULT_QUBIT_CAP)?;
        let amps = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        Error::check_dim(self.n, other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        Error::check_dim(self.n, circuit.n_qubits())?;
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        match gate {
            Gate::H(q) => {
                let bit = 1 << q;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | bit]);
                        self.amps[i] = (a + b) * s;
                        self.amps[i | bit] = (a - b) * s;
                    }
                }
            }
            Gate::S(q) => self.phase_where(1 << q, 1 << q, Complex64::i()),
            Gate::Z(q) => self.phase_where(1 << q, 1 << q, Complex64::new(-1.0, 0.0)),
            Gate::Cz(a, b) => {
                let m = (1 << a) | (1 << b);
                self.phase_where(m, m, Complex64::new(-1.0, 0.0));
            }
            Gate::X(q) => self.flip_where(0, 0, 1 << q),
            Gate::Cnot { control, target } => {
                self.flip_where(1 << control, 1 << control, 1 << target)
            }
            Gate::Toffoli { controls, target } => {
                let m = (1 << controls[0]) | (1 << controls[1]);
                self.flip_where(m, m, 1 << target);
            }
            Gate::Mcp(m) => self.apply_mcp(m),
        }
        Ok(())
    }

    fn phase_where(&mut self, mask: usize, value: usize, phase: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == value {
                *a *= phase;
            }
        }
    }

    fn flip_where(&mut self, mask: usize, value: usize, flip: usize) {
        for i in 0..self.amps.len() {
            if i & mask == value && i & flip == 0 {
                self.amps.swap(i, i | flip);
            }
        }
    }

    fn apply_mcp(&mut self, m: &Mcp) {
        let (mut cmask, mut cval) = (0usize, 0usize);
        for c in &m.controls {
            cmask |= 1 << c.qubit;
            if c.polarity.active_value() {
                cval |= 1 << c.qubit;
            }
        }
        let (mut xmask, mut zmask, mut ys) = (0usize, 0usize, 0u32);
        for &(q, l) in &m.targets {
            let (x, z) = l.bits();
            if x {
                xmask |= 1 << q;
            }
            if z {
                zmask |= 1 << q;
            }
            if l == Pauli::Y {
                ys += 1;
            }
        }
        // P|b⟩ = sign · i^{#Y} · (-1)^{|b ∧ zmask|} |b ⊕ xmask⟩.
        let base = Complex64::i().powu(ys) * m.sign.value();
        let phase = |b: usize| {
            if (b & zmask).count_ones() % 2 == 1 {
                -base
            } else {
                base
            }
        };
        for i in 0..self.amps.len() {
            if i & cmask != cval {
                continue;
            }
            let j = i ^ xmask;
            if xmask == 0 {
                self.amps[i] *= phase(i);
            } else if i < j {
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[j] = a * phase(i);
                self.amps[i] = b * phase(j);
            }
        }
    }
}

/// Runs `circuit` on `state` and returns the result.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_circuit(circuit)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{build_fanout, Control};
    use crate::pauli::Sign;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitudes()[0], Complex64::new(h, 0.0)));
        assert!(close(s.amplitudes()[1], Complex64::new(h, 0.0)));
    }

    #[test]
    fn signed_controlled_z() {
        // |1⟩ on qubit 0, |+⟩ on qubit 1; controlled -Z maps |+⟩ to -|−⟩.
        let mut s = StateVector::basis(2, 1).unwrap();
        s.apply_gate(&Gate::H(1)).unwrap();
        s.apply_gate(&Gate::Mcp(Mcp::new(
            vec![Control::positive(0)],
            vec![(1, Pauli::Z)],
            Sign::Minus,
        )))
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitudes()[1], Complex64::new(-h, 0.0)));
        assert!(close(s.amplitudes()[3], Complex64::new(h, 0.0)));
    }

    #[test]
    fn fanout_copies_value() {
        let c = build_fanout(2, 2).unwrap();
        let mut s = StateVector::basis(6, 0b11).unwrap();
        s.apply_circuit(&c).unwrap();
        assert!(close(s.amplitudes()[0b111111], Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            StateVector::basis_with_cap(5, 0, 4),
            Err(Error::QubitCap { qubits: 5, cap: 4 })
        ));
    }
}
