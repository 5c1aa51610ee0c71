mod common;

use common::{close, matmul, pauli_matrix, scale};
use lcupar::pauli::{gauss_jordan, gf2_rank, independent_extend, Extension, IndependentBasis};
use lcupar::{BitMatrix, BitVector, Error, Observable, PauliString};
use num_complex::Complex64;
use proptest::prelude::*;

fn all_strings(n: usize) -> Vec<PauliString> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| "IXYZ".chars().map(move |ch| format!("{s}{ch}")))
            .collect();
    }
    out.iter().map(|s| PauliString::parse(s).unwrap()).collect()
}

#[test]
fn products_match_dense_matrices() {
    let mut checked = 0;
    for n in 1..=2 {
        let strings = all_strings(n);
        for p in &strings {
            for q in &strings {
                let (r, k) = p.mul_with_phase(q).unwrap();
                let phase = Complex64::i().powu(k as u32);
                let want = matmul(&pauli_matrix(p), &pauli_matrix(q));
                assert!(
                    close(&scale(&pauli_matrix(&r), phase), &want, 1e-12),
                    "{p} * {q}"
                );
                // Commutation from the bit form agrees with the matrices.
                let qp = matmul(&pauli_matrix(q), &pauli_matrix(p));
                assert_eq!(!p.symplectic_product(q).unwrap(), close(&qp, &want, 1e-12));
                if n == 2 {
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 256);
}

#[test]
fn signed_products() {
    let p = PauliString::parse("-XI").unwrap();
    let q = PauliString::parse("XZ").unwrap();
    assert_eq!(p.multiply(&q).unwrap(), PauliString::parse("-IZ").unwrap());
    let x = PauliString::parse("X").unwrap();
    let z = PauliString::parse("Z").unwrap();
    assert_eq!(x.multiply(&z).unwrap_err(), Error::ImaginaryPhase);
}

#[test]
fn reduction_log_replays() {
    for rows in [
        vec!["11", "01"],
        vec!["111", "011", "001"],
        vec!["100", "010"],
    ] {
        let m = BitMatrix::parse_rows(&rows).unwrap();
        let red = gauss_jordan(&m).unwrap();
        let mut replay = m.clone();
        for op in &red.log {
            replay.add_row(op.source, op.target);
        }
        assert_eq!(replay, red.reduced);
        for (i, &p) in red.pivots.iter().enumerate() {
            assert!((0..m.rows()).all(|r| red.reduced.get(r, p) == (r == i)));
        }
    }
    let m = BitMatrix::parse_rows(&["11", "01"]).unwrap();
    let red = gauss_jordan(&m).unwrap();
    assert_eq!(red.log.len(), 1);
    assert_eq!((red.log[0].source, red.log[0].target), (1, 0));
    assert!(gauss_jordan(&BitMatrix::identity(3))
        .unwrap()
        .log
        .is_empty());
    assert_eq!(
        gauss_jordan(&BitMatrix::parse_rows(&["110", "011", "101"]).unwrap()).unwrap_err(),
        Error::Dependent { index: 2 }
    );
}

#[test]
fn observable_merging() {
    let obs = Observable::from_pairs(&[
        (1.0, "ZZ"),
        (-0.5, "XI"),
        (1.0, "ZZ"),
        (0.25, "XI"),
        (0.25, "XI"),
    ])
    .unwrap();
    assert_eq!(obs.len(), 1);
    assert_eq!(obs.stats().dropped, 1);
    assert!((obs.l1_norm() - 2.0).abs() < 1e-12);
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    (proptest::collection::vec(0..4usize, n), any::<bool>()).prop_map(|(ls, neg)| {
        let text: String = ls.iter().map(|&i| ['I', 'X', 'Y', 'Z'][i]).collect();
        let p = PauliString::parse(&text).unwrap();
        if neg {
            p.with_sign(lcupar::Sign::Minus)
        } else {
            p
        }
    })
}

fn bitvec_strategy(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

proptest! {
    #[test]
    fn symplectic_form_is_symmetric_and_bilinear(
        (p, q, r) in (1..80usize).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n), pauli_strategy(n)))
    ) {
        prop_assert_eq!(p.symplectic_product(&q).unwrap(), q.symplectic_product(&p).unwrap());
        prop_assert!(!p.symplectic_product(&p).unwrap());
        let (qr, _) = q.mul_with_phase(&r).unwrap();
        prop_assert_eq!(
            p.symplectic_product(&qr).unwrap(),
            p.symplectic_product(&q).unwrap() ^ p.symplectic_product(&r).unwrap()
        );
    }

    #[test]
    fn products_are_associative(
        (p, q, r) in (1..70usize).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n), pauli_strategy(n)))
    ) {
        let (pq, a) = p.mul_with_phase(&q).unwrap();
        let (pq_r, b) = pq.mul_with_phase(&r).unwrap();
        let (qr, c) = q.mul_with_phase(&r).unwrap();
        let (p_qr, d) = p.mul_with_phase(&qr).unwrap();
        prop_assert_eq!(&pq_r, &p_qr);
        prop_assert_eq!((a + b) % 4, (c + d) % 4);
    }

    #[test]
    fn rank_survives_row_operations(
        (rows, ops) in (1..10usize, 1..90usize).prop_flat_map(|(r, c)| (
            proptest::collection::vec(bitvec_strategy(c), r),
            proptest::collection::vec((0..r, 0..r, any::<bool>()), 0..20),
        ))
    ) {
        let cols = rows[0].len();
        let m = BitMatrix::from_rows(cols, rows).unwrap();
        let rank = gf2_rank(&m);
        let mut w = m.clone();
        for (a, b, swap) in ops {
            if swap {
                let mut v: Vec<BitVector> = w.row_vectors().to_vec();
                v.swap(a, b);
                w = BitMatrix::from_rows(cols, v).unwrap();
            } else if a != b {
                w.add_row(a, b);
            }
        }
        prop_assert_eq!(gf2_rank(&w), rank);
    }

    #[test]
    fn accepted_extensions_count_the_rank(
        vs in (1..70usize).prop_flat_map(|c| proptest::collection::vec(bitvec_strategy(c), 1..30))
    ) {
        let cols = vs[0].len();
        let mut basis = IndependentBasis::new(cols);
        let mut plain = BitMatrix::zeros(0, cols);
        let mut accepted = 0;
        for v in &vs {
            let incremental = basis.try_extend(v).unwrap();
            let (decision, next) = independent_extend(&plain, v).unwrap();
            prop_assert_eq!(incremental, decision == Extension::Accept);
            plain = next;
            accepted += usize::from(incremental);
        }
        let stacked = BitMatrix::from_rows(cols, vs.clone()).unwrap();
        prop_assert_eq!(accepted, gf2_rank(&stacked));
    }
}
