use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{BitMatrix, BitVector, Pauli, PauliString, Sign};

/// A Clifford unitary `U` stored as the signed images `U X_i U†` and
/// `U Z_i U†` of the single-qubit generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    /// `images[i]` is the image of `X_i`, `images[n + i]` that of `Z_i`.
    images: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let images = (0..n)
            .map(|q| PauliString::single(n, q, Pauli::X))
            .chain((0..n).map(|q| PauliString::single(n, q, Pauli::Z)))
            .collect();
        Self { n, images }
    }

    /// Builds a tableau from explicit generator images, checking that they
    /// satisfy the canonical commutation relations.
    pub fn from_images(x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        let n = x_images.len();
        Error::check_dim(n, z_images.len())?;
        for p in x_images.iter().chain(&z_images) {
            Error::check_dim(n, p.n_qubits())?;
        }
        let mut images = x_images;
        images.extend(z_images);
        let t = Self { n, images };
        if !t.is_symplectic() {
            return Err(Error::InvalidArgument(
                "generator images violate the commutation relations".into(),
            ));
        }
        Ok(t)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> &PauliString {
        &self.images[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliString {
        &self.images[self.n + q]
    }

    /// All `2n` images, X generators first.
    pub fn images(&self) -> &[PauliString] {
        &self.images
    }

    /// Row `i` is the `(x|z)` vector of image `i`.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.images
                .iter()
                .map(PauliString::symplectic_vector)
                .collect(),
        )
        .expect("images have 2n columns")
    }

    /// Bit `i` set when image `i` carries a minus sign.
    pub fn phase_bits(&self) -> BitVector {
        let bits: Vec<bool> = self.images.iter().map(|p| p.sign().is_negative()).collect();
        BitVector::from_bools(&bits)
    }

    /// `M Λ Mᵀ = Λ`, checked pairwise on the images.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        for i in 0..2 * n {
            for j in i..2 * n {
                let expected = j == i + n && i < n;
                let sp = self.images[i]
                    .symplectic_product(&self.images[j])
                    .expect("images share n");
                if sp != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Composes a gate after the current unitary: `U <- G U`.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        for p in &mut self.images {
            gate.conjugate(p)?;
        }
        Ok(())
    }

    /// `U p U†`, sign included.
    pub fn conjugate_pauli(&self, p: &PauliString) -> Result<PauliString> {
        Error::check_dim(self.n, p.n_qubits())?;
        // p = sign · i^{#Y} · Π_q X_q^{x_q} Z_q^{z_q}.
        let mut acc = PauliString::identity(self.n);
        let mut k = p.y_count() as u32 + if p.sign().is_negative() { 2 } else { 0 };
        for q in 0..self.n {
            let (x, z) = p.get(q).bits();
            if x {
                let (r, kk) = acc.mul_with_phase(self.x_image(q))?;
                acc = r;
                k += kk as u32;
            }
            if z {
                let (r, kk) = acc.mul_with_phase(self.z_image(q))?;
                acc = r;
                k += kk as u32;
            }
        }
        match k % 4 {
            0 => Ok(acc),
            2 => Ok(acc.with_sign(Sign::Minus)),
            _ => Err(Error::ImaginaryPhase),
        }
    }

    /// `self` followed by `other`: the tableau of `V U`.
    pub fn then(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        Error::check_dim(self.n, other.n)?;
        let images = self
            .images
            .iter()
            .map(|p| other.conjugate_pauli(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, images })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// Tableau of a circuit made of H, S, X, Z, CNOT and CZ gates.
pub fn tableau_from_circuit(circuit: &Circuit) -> Result<CliffordTableau> {
    tableau_from_gates(circuit.n_qubits(), circuit.gates())
}

pub fn tableau_from_gates(n: usize, gates: &[Gate]) -> Result<CliffordTableau> {
    let mut t = CliffordTableau::identity(n);
    for g in gates {
        t.apply_gate(g)?;
    }
    Ok(t)
}

/// Conjugates `p` through a gate sequence in time order.
pub fn conjugate_through(gates: &[Gate], p: &PauliString) -> Result<PauliString> {
    let mut out = p.clone();
    for g in gates {
        g.validate(out.n_qubits())?;
        g.conjugate(&mut out)?;
    }
    Ok(out)
}
