use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{IndependentBasis, Pauli, PauliString, Sign};

/// Clifford circuit mapping set element `j` to `signs[j] · Z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub circuit: Circuit,
    pub signs: Vec<Sign>,
}

/// Checks that `set` is pairwise commuting, linearly independent and fits
/// on `n` qubits.
pub fn audit_parallel_set(set: &[PauliString], n: usize) -> Result<()> {
    if set.len() > n {
        return Err(Error::Capacity {
            size: set.len(),
            capacity: n,
        });
    }
    let mut basis = IndependentBasis::new(2 * n);
    for (i, p) in set.iter().enumerate() {
        Error::check_dim(n, p.n_qubits())?;
        for (j, q) in set[..i].iter().enumerate() {
            if p.symplectic_product(q)? {
                return Err(Error::NonCommuting {
                    first: j,
                    second: i,
                });
            }
        }
        if !basis.try_extend(&p.symplectic_vector())? {
            return Err(Error::Dependent { index: i });
        }
    }
    Ok(())
}

/// Synthesizes an H/S/CNOT/CZ circuit `U` with `U P_j U† = s_j Z_j`.
///
/// Element `j` is handled after elements `< j` already sit on `Z_0..Z_{j-1}`;
/// commutation then forces its X part onto qubits `>= j`, which are free.
pub fn synth_diagonalizing_clifford(set: &[PauliString], n: usize) -> Result<Diagonalization> {
    audit_parallel_set(set, n)?;
    let mut work: Vec<PauliString> = set.to_vec();
    let mut circuit = Circuit::new(n);

    let mut emit = |g: Gate, work: &mut Vec<PauliString>| -> Result<()> {
        for p in work.iter_mut() {
            g.conjugate(p)?;
        }
        circuit.push(g)
    };

    for j in 0..set.len() {
        let p = work[j].clone();
        if p.unsigned() == PauliString::single(n, j, Pauli::Z) {
            continue;
        }
        let pivot = (j..n).find(|&q| p.x_bits().get(q));
        let q = match pivot {
            Some(q) => q,
            None => {
                let q = (j..n)
                    .find(|&q| p.z_bits().get(q))
                    .ok_or(Error::Dependent { index: j })?;
                emit(Gate::H(q), &mut work)?;
                q
            }
        };
        if work[j].get(q) == Pauli::Y {
            emit(Gate::S(q), &mut work)?;
        }
        let xs: Vec<usize> = (j..n)
            .filter(|&r| r != q && work[j].x_bits().get(r))
            .collect();
        for r in xs {
            emit(Gate::cnot(q, r), &mut work)?;
        }
        let zs: Vec<usize> = (0..n)
            .filter(|&r| r != q && work[j].z_bits().get(r))
            .collect();
        for r in zs {
            emit(Gate::Cz(q, r), &mut work)?;
        }
        if work[j].get(q) == Pauli::Y {
            emit(Gate::S(q), &mut work)?;
        }
        emit(Gate::H(q), &mut work)?;
        if q != j {
            emit(Gate::cnot(q, j), &mut work)?;
            emit(Gate::cnot(j, q), &mut work)?;
            emit(Gate::cnot(q, j), &mut work)?;
        }
        debug_assert_eq!(work[j].unsigned(), PauliString::single(n, j, Pauli::Z));
    }
    let signs = work.iter().map(PauliString::sign).collect();
    Ok(Diagonalization { circuit, signs })
}
