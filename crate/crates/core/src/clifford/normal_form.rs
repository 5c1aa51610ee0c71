//! Layered normal form `CX · CZ · P · H · CZ · P · H` for Clifford tableaux.
//!
//! The target tableau is peeled from the output side: a Hadamard layer makes
//! the Z images' X parts invertible, a CZ/P layer clears their Z parts, a full
//! Hadamard layer turns them into pure Z, a second CZ/P layer clears the X
//! images' Z parts and CNOTs reduce the remaining linear map to the identity.
//! Signs are repaired afterwards by solving for `Z` insertions at the two
//! phase layers.

use std::fmt;

use crate::circuits::{Circuit, Gate};
use crate::clifford::tableau::{conjugate_through, tableau_from_gates, CliffordTableau};
use crate::error::Result;
use crate::pauli::{gauss_jordan, solve, BitMatrix, BitVector, Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageKind {
    Cx,
    Cz,
    P,
    H,
}

impl StageKind {
    pub fn is_two_qubit(self) -> bool {
        matches!(self, StageKind::Cx | StageKind::Cz)
    }

    pub fn name(self) -> &'static str {
        match self {
            StageKind::Cx => "CX",
            StageKind::Cz => "CZ",
            StageKind::P => "P",
            StageKind::H => "H",
        }
    }

    pub fn admits(self, gate: &Gate) -> bool {
        matches!(
            (self, gate),
            (StageKind::Cx, Gate::Cnot { .. })
                | (StageKind::Cz, Gate::Cz(..))
                | (StageKind::P, Gate::S(_) | Gate::Z(_))
                | (StageKind::H, Gate::H(_))
        )
    }
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full stage order; a normal form uses a subsequence of it.
pub const STAGE_ORDER: [StageKind; 7] = [
    StageKind::Cx,
    StageKind::Cz,
    StageKind::P,
    StageKind::H,
    StageKind::Cz,
    StageKind::P,
    StageKind::H,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub kind: StageKind,
    pub gates: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagedCircuit {
    n_qubits: usize,
    stages: Vec<Stage>,
}

impl StagedCircuit {
    pub fn new(n_qubits: usize, stages: Vec<Stage>) -> Self {
        Self { n_qubits, stages }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn total_two_qubit_stages(&self) -> usize {
        self.stages.iter().filter(|s| s.kind.is_two_qubit()).count()
    }

    pub fn single_qubit_stages(&self) -> usize {
        self.stages.len() - self.total_two_qubit_stages()
    }

    pub fn kinds(&self) -> Vec<StageKind> {
        self.stages.iter().map(|s| s.kind).collect()
    }

    /// Whether the stage kinds form a subsequence of [`STAGE_ORDER`] and
    /// every gate matches its stage.
    pub fn is_well_formed(&self) -> bool {
        let mut slot = 0;
        for s in &self.stages {
            match STAGE_ORDER[slot..].iter().position(|&k| k == s.kind) {
                Some(p) => slot += p + 1,
                None => return false,
            }
            if !s.gates.iter().all(|g| s.kind.admits(g)) {
                return false;
            }
        }
        true
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.stages.iter().flat_map(|s| s.gates.iter())
    }

    pub fn to_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.n_qubits);
        c.extend(self.gates().cloned())
            .expect("stage gates fit the register");
        c
    }
}

/// CZ and S gates realizing the quadratic form of a symmetric matrix.
fn quadratic_layer(b: &BitMatrix) -> (Vec<Gate>, Vec<Gate>) {
    let n = b.rows();
    let mut cz = Vec::new();
    let mut p = Vec::new();
    for i in 0..n {
        if b.get(i, i) {
            p.push(Gate::S(i));
        }
        for j in i + 1..n {
            if b.get(i, j) {
                cz.push(Gate::Cz(i, j));
            }
        }
    }
    (cz, p)
}

/// Z parts of the pure-Z vectors in the span of `rows` (each `(x|z)`, 2n bits).
fn pure_z_span(rows: &[BitVector], n: usize) -> Vec<BitVector> {
    let mut rows = rows.to_vec();
    let mut used = vec![false; rows.len()];
    for col in 0..n {
        if let Some(p) = (0..rows.len()).find(|&r| !used[r] && rows[r].get(col)) {
            used[p] = true;
            let pivot = rows[p].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != p && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
        }
    }
    rows.iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(r, _)| r.slice(n, n))
        .collect()
}

/// Row additions taking an invertible matrix to the identity, no swaps.
fn reduce_to_identity(m: &BitMatrix) -> Vec<(usize, usize)> {
    let n = m.rows();
    let mut w = m.clone();
    let mut ops = Vec::new();
    for col in 0..n {
        if !w.get(col, col) {
            let r = (col + 1..n)
                .find(|&r| w.get(r, col))
                .expect("matrix is invertible");
            w.add_row(r, col);
            ops.push((r, col));
        }
        for r in 0..n {
            if r != col && w.get(r, col) {
                w.add_row(col, r);
                ops.push((col, r));
            }
        }
    }
    debug_assert!(w.is_identity());
    ops
}

fn x_and_z_blocks(images: &[PauliString]) -> (BitMatrix, BitMatrix) {
    let n = images.len();
    let xs = images.iter().map(|p| p.x_bits().clone()).collect();
    let zs = images.iter().map(|p| p.z_bits().clone()).collect();
    (
        BitMatrix::from_rows(n, xs).expect("square block"),
        BitMatrix::from_rows(n, zs).expect("square block"),
    )
}

fn apply_all(w: &mut CliffordTableau, gates: &[Gate]) {
    for g in gates {
        w.apply_gate(g)
            .expect("Clifford gate on the tableau register");
    }
}

/// Decomposes `t` into at most seven typed stages with at most three
/// two-qubit stages; replaying the stages reproduces `t` exactly.
pub fn normal_form_stages(t: &CliffordTableau) -> StagedCircuit {
    let n = t.n_qubits();
    let mut w = t.clone();

    // Output-side Hadamards on the pivot columns of the pure-Z part of the
    // Z images' span.
    let z_rows: Vec<BitVector> = (0..n).map(|q| w.z_image(q).symplectic_vector()).collect();
    let pure = pure_z_span(&z_rows, n);
    let t2: Vec<usize> = if pure.is_empty() {
        Vec::new()
    } else {
        let m = BitMatrix::from_rows(n, pure).expect("n columns");
        gauss_jordan(&m)
            .expect("pure-Z span rows are independent")
            .pivots
    };
    let h_t2: Vec<Gate> = t2.iter().map(|&q| Gate::H(q)).collect();
    apply_all(&mut w, &h_t2);

    let (xr, zr) = x_and_z_blocks(&w.images()[n..]);
    let b2 = xr
        .inverse()
        .expect("Z images have invertible X block")
        .mul(&zr)
        .expect("square blocks");
    debug_assert!(b2.is_symmetric());
    let (cz2, p2) = quadratic_layer(&b2);
    apply_all(&mut w, &cz2);
    apply_all(&mut w, &p2);

    let h_all: Vec<Gate> = (0..n).map(Gate::H).collect();
    apply_all(&mut w, &h_all);

    let (a, c) = x_and_z_blocks(&w.images()[..n]);
    let a_inv = a.inverse().expect("X images have invertible X block");
    let b1 = a_inv.mul(&c).expect("square blocks");
    debug_assert!(b1.is_symmetric());
    let (cz1, p1) = quadratic_layer(&b1);
    apply_all(&mut w, &cz1);
    apply_all(&mut w, &p1);

    // Appending CNOT(c, t) adds column c of the X block to column t, which is
    // a row addition on its transpose.
    let ops = reduce_to_identity(&a.transpose());
    let cnots: Vec<Gate> = ops.iter().map(|&(s, t)| Gate::cnot(s, t)).collect();
    apply_all(&mut w, &cnots);
    debug_assert!(w
        .images()
        .iter()
        .zip(CliffordTableau::identity(n).images())
        .all(|(p, q)| p.unsigned() == *q));

    let cx: Vec<Gate> = cnots.into_iter().rev().collect();
    let mut stages = vec![
        Stage {
            kind: StageKind::Cx,
            gates: cx,
        },
        Stage {
            kind: StageKind::Cz,
            gates: cz1,
        },
        Stage {
            kind: StageKind::P,
            gates: p1,
        },
        Stage {
            kind: StageKind::H,
            gates: h_all,
        },
        Stage {
            kind: StageKind::Cz,
            gates: cz2,
        },
        Stage {
            kind: StageKind::P,
            gates: p2,
        },
        Stage {
            kind: StageKind::H,
            gates: h_t2,
        },
    ];
    fix_phases(t, &mut stages);

    let h_cancels = t2.len() == n && stages[4].gates.is_empty() && stages[5].gates.is_empty();
    let stages = stages
        .into_iter()
        .enumerate()
        .filter(|(i, s)| !s.gates.is_empty() && !(h_cancels && (*i == 3 || *i == 6)))
        .map(|(_, s)| s)
        .collect();
    StagedCircuit::new(n, stages)
}

/// Appends `Z` gates to the two phase stages so the replay matches `t`'s
/// signs. A `Z` inserted mid-circuit acts as a Pauli at the end after being
/// pushed through the later gates, and flips exactly the images it
/// anticommutes with.
fn fix_phases(t: &CliffordTableau, stages: &mut [Stage]) {
    let n = t.n_qubits();
    let all: Vec<Gate> = stages.iter().flat_map(|s| s.gates.clone()).collect();
    let v = tableau_from_gates(n, &all).expect("Clifford stages");
    let diff: Vec<bool> = v
        .images()
        .iter()
        .zip(t.images())
        .map(|(a, b)| a.sign() != b.sign())
        .collect();
    if !diff.iter().any(|&d| d) {
        return;
    }
    let after = |stage: usize| -> Vec<Gate> {
        stages[stage + 1..]
            .iter()
            .flat_map(|s| s.gates.clone())
            .collect()
    };
    let after_p1 = after(2);
    let after_p2 = after(5);
    let mut columns = Vec::with_capacity(2 * n);
    for tail in [&after_p1, &after_p2] {
        for q in 0..n {
            let r = conjugate_through(tail, &PauliString::single(n, q, Pauli::Z))
                .expect("Clifford stages");
            let col: Vec<bool> = v
                .images()
                .iter()
                .map(|img| r.symplectic_product(img).expect("same width"))
                .collect();
            columns.push(BitVector::from_bools(&col));
        }
    }
    let a = BitMatrix::from_rows(2 * n, columns)
        .expect("2n columns")
        .transpose();
    let x = solve(&a, &BitVector::from_bools(&diff))
        .expect("dimensions agree")
        .expect("Z insertions at both phase layers span every Pauli correction");
    for k in x.iter_ones() {
        let (stage, q) = if k < n { (2, k) } else { (5, k - n) };
        stages[stage].gates.push(Gate::Z(q));
    }
}

/// Convenience: replays a staged circuit into a tableau.
pub fn replay(staged: &StagedCircuit) -> Result<CliffordTableau> {
    let gates: Vec<Gate> = staged.gates().cloned().collect();
    tableau_from_gates(staged.n_qubits(), &gates)
}
