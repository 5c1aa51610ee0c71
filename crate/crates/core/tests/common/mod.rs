//! Dense-matrix oracles and random instance generators shared by the
//! integration tests. Nothing here goes through the tableau or the
//! statevector simulator.

#![allow(dead_code)]

use lcupar::circuits::{Circuit, Gate};
use lcupar::{Observable, Pauli, PauliString, PauliTerm, Sign};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn letter_matrix(p: Pauli) -> [[Complex64; 2]; 2] {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match p {
        Pauli::I => [[o, z], [z, o]],
        Pauli::X => [[z, o], [o, z]],
        Pauli::Y => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        Pauli::Z => [[o, z], [z, -o]],
    }
}

pub fn identity(dim: usize) -> Mat {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|col| if r == col { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

/// Kronecker-product matrix of a signed Pauli string; bit `q` of a basis
/// index is qubit `q`.
pub fn pauli_matrix(p: &PauliString) -> Mat {
    let n = p.n_qubits();
    let dim = 1 << n;
    let letters: Vec<[[Complex64; 2]; 2]> = (0..n).map(|q| letter_matrix(p.get(q))).collect();
    let s = p.sign().value();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|col| {
                    letters
                        .iter()
                        .enumerate()
                        .fold(c(s, 0.0), |acc, (q, m)| acc * m[r >> q & 1][col >> q & 1])
                })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    let mut out = vec![vec![c(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(a: &Mat) -> Mat {
    let dim = a.len();
    (0..dim)
        .map(|i| (0..dim).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub fn scale(a: &Mat, s: Complex64) -> Mat {
    a.iter()
        .map(|row| row.iter().map(|x| x * s).collect())
        .collect()
}

pub fn close(a: &Mat, b: &Mat, tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| (x - y).norm() <= tol))
}

/// Matrix of a permutation-with-phase gate built column by column from its
/// action on basis states.
fn from_columns(dim: usize, f: impl Fn(usize) -> Vec<(usize, Complex64)>) -> Mat {
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for (row, col, v) in
        (0..dim).flat_map(|col| f(col).into_iter().map(move |(row, v)| (row, col, v)))
    {
        m[row][col] += v;
    }
    m
}

pub fn gate_matrix(g: &Gate, n: usize) -> Mat {
    let dim = 1 << n;
    let bit = |b: usize, q: usize| b >> q & 1 == 1;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match g {
        Gate::H(q) => from_columns(dim, |b| {
            let (lo, hi) = (b & !(1 << q), b | (1 << q));
            if bit(b, *q) {
                vec![(lo, c(h, 0.0)), (hi, c(-h, 0.0))]
            } else {
                vec![(lo, c(h, 0.0)), (hi, c(h, 0.0))]
            }
        }),
        Gate::S(q) => from_columns(dim, |b| {
            vec![(b, if bit(b, *q) { c(0.0, 1.0) } else { c(1.0, 0.0) })]
        }),
        Gate::Z(q) => from_columns(dim, |b| {
            vec![(
                b,
                if bit(b, *q) {
                    c(-1.0, 0.0)
                } else {
                    c(1.0, 0.0)
                },
            )]
        }),
        Gate::X(q) => from_columns(dim, |b| vec![(b ^ (1 << q), c(1.0, 0.0))]),
        Gate::Cnot { control, target } => from_columns(dim, |b| {
            let t = if bit(b, *control) {
                b ^ (1 << target)
            } else {
                b
            };
            vec![(t, c(1.0, 0.0))]
        }),
        Gate::Cz(a, q) => from_columns(dim, |b| {
            let v = if bit(b, *a) && bit(b, *q) { -1.0 } else { 1.0 };
            vec![(b, c(v, 0.0))]
        }),
        Gate::Toffoli { controls, target } => from_columns(dim, |b| {
            let t = if bit(b, controls[0]) && bit(b, controls[1]) {
                b ^ (1 << target)
            } else {
                b
            };
            vec![(t, c(1.0, 0.0))]
        }),
        Gate::Mcp(m) => {
            let mut p = PauliString::identity(n).with_sign(m.sign);
            for &(q, l) in &m.targets {
                p.set(q, l);
            }
            let pm = pauli_matrix(&p);
            from_columns(dim, |b| {
                let active = m
                    .controls
                    .iter()
                    .all(|ctl| bit(b, ctl.qubit) == ctl.polarity.active_value());
                if active {
                    (0..dim).map(|r| (r, pm[r][b])).collect()
                } else {
                    vec![(b, c(1.0, 0.0))]
                }
            })
        }
    }
}

/// Dense unitary of a whole circuit (gates applied left to right).
pub fn circuit_matrix(circ: &Circuit) -> Mat {
    let n = circ.n_qubits();
    circ.gates()
        .iter()
        .fold(identity(1 << n), |acc, g| matmul(&gate_matrix(g, n), &acc))
}

pub fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliString {
    let letters: String = (0..n)
        .map(|_| *['I', 'X', 'Y', 'Z'].choose(rng).unwrap())
        .collect();
    let p = PauliString::parse(&letters).unwrap();
    p.with_sign(Sign::from_bit(rng.gen()))
}

pub fn random_clifford_gate<R: Rng>(n: usize, rng: &mut R) -> Gate {
    let q = rng.gen_range(0..n);
    let kinds = if n > 1 { 6 } else { 4 };
    match rng.gen_range(0..kinds) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::X(q),
        3 => Gate::Z(q),
        k => {
            let mut r = rng.gen_range(0..n - 1);
            if r >= q {
                r += 1;
            }
            if k == 4 {
                Gate::cnot(q, r)
            } else {
                Gate::Cz(q, r)
            }
        }
    }
}

pub fn random_clifford_circuit<R: Rng>(n: usize, gates: usize, rng: &mut R) -> Circuit {
    let mut circ = Circuit::new(n);
    for _ in 0..gates {
        circ.push(random_clifford_gate(n, rng)).unwrap();
    }
    circ
}

/// Conjugates `p` by each gate in turn using dense matrices:
/// `U p U†` for the circuit unitary `U`.
pub fn dense_conjugate(circ: &Circuit, p: &PauliString) -> Mat {
    let u = circuit_matrix(circ);
    matmul(&matmul(&u, &pauli_matrix(p)), &adjoint(&u))
}

/// Random set of `k` commuting, independent signed strings on `n` qubits:
/// the images of `±Z_0..±Z_{k-1}` under a random Clifford. Conjugation is
/// done letter by letter with the single-gate rules below, not the tableau.
pub fn random_parallel_set<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<PauliString> {
    let gates: Vec<Gate> = (0..6 * n + 4)
        .map(|_| random_clifford_gate(n, rng))
        .collect();
    (0..k)
        .map(|j| {
            let mut p = PauliString::single(n, j, Pauli::Z).with_sign(Sign::from_bit(rng.gen()));
            for g in &gates {
                g.conjugate(&mut p).unwrap();
            }
            p
        })
        .collect()
}

/// Brute-force commutation from letters: strings commute iff they differ in
/// a non-identity letter on an even number of qubits.
pub fn letters_commute(p: &PauliString, q: &PauliString) -> bool {
    (0..p.n_qubits())
        .filter(|&i| {
            let (a, b) = (p.get(i), q.get(i));
            a != Pauli::I && b != Pauli::I && a != b
        })
        .count()
        % 2
        == 0
}

pub fn random_observable<R: Rng>(n: usize, terms: usize, rng: &mut R) -> Observable {
    let ts: Vec<PauliTerm> = (0..terms)
        .map(|_| PauliTerm::new(random_pauli(n, rng), rng.gen_range(-1.0..1.0)).unwrap())
        .collect();
    Observable::from_terms(n, ts).unwrap()
}
