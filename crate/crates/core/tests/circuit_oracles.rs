mod common;

use std::collections::BTreeSet;

use common::{circuit_matrix, close, pauli_matrix, random_observable};
use lcupar::circuits::{
    build_fanout, build_hamming_flag, build_qrom_parallel, build_qrom_serial,
    build_select_parallel, build_select_parallel_with, build_select_serial, diagonalize_controls,
    emit_circuit, parse_circuit, schedule_layers, synthesize_partition, Circuit, Control, Gate,
    Mcp, QromTable,
};
use lcupar::resources::{t_count, CostModelConfig};
use lcupar::sim::{
    circuits_equivalent, matrices_equal_up_to_phase, qrom_readout, restricted_unitary,
    simulate_basis, EquivalenceConfig, StateVector,
};
use lcupar::{partition_parallel, partition_qrom_addresses, BitVector, Observable, Pauli, Sign};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bv(s: &str) -> BitVector {
    BitVector::parse(s).unwrap()
}

fn word(v: u64, w: usize) -> BitVector {
    BitVector::from_u64(v, w)
}

/// `Σ_j |j⟩⟨j| ⊗ P_j` on (system, index), identity on unused patterns.
fn select_oracle(obs: &Observable, a: usize) -> common::Mat {
    let n = obs.n_qubits();
    let dim = 1 << (n + a);
    let mut m = common::identity(dim);
    for (j, t) in obs.terms().iter().enumerate() {
        let p = pauli_matrix(&t.pauli);
        for r in 0..1 << n {
            for c in 0..1 << n {
                m[(j << n) | r][(j << n) | c] = p[r][c];
            }
        }
    }
    m
}

#[test]
fn serial_select_matches_block_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let obs = random_observable(3, 5, &mut rng);
        let c = build_select_serial(&obs).unwrap();
        let a = c.register("index").unwrap().len;
        assert!(close(&circuit_matrix(&c), &select_oracle(&obs, a), 1e-9));
    }
}

#[test]
fn serial_select_control_layout() {
    let obs = Observable::from_pairs(&[(1.0, "X")]).unwrap();
    let c = build_select_serial(&obs).unwrap();
    assert_eq!(
        c.gates(),
        &[Gate::Mcp(Mcp::new(
            vec![Control::negative(1)],
            vec![(0, Pauli::X)],
            Sign::Plus
        ))]
    );
    let obs =
        Observable::from_pairs(&[(1.0, "XI"), (0.5, "YI"), (0.4, "ZI"), (0.3, "-XX")]).unwrap();
    let c = build_select_serial(&obs).unwrap();
    let patterns: Vec<String> = c
        .gates()
        .iter()
        .map(|g| match g {
            Gate::Mcp(m) => m
                .controls
                .iter()
                .map(|c| if c.polarity.active_value() { '1' } else { '0' })
                .collect(),
            _ => panic!("unexpected gate"),
        })
        .collect();
    // Index bit 0 is the first control; term j is selected by binary j.
    assert_eq!(patterns, ["00", "10", "01", "11"]);
    assert_eq!(t_count(&c, &CostModelConfig::default()), 16);
}

#[test]
fn schedule_examples() {
    let mut c = Circuit::new(4);
    c.extend([Gate::cnot(0, 1), Gate::cnot(2, 3)]).unwrap();
    assert_eq!(schedule_layers(&c).depth, 1);
    let obs = Observable::from_pairs(&[
        (1.0, "XII"),
        (0.9, "IXI"),
        (0.8, "IIX"),
        (0.7, "ZII"),
        (0.6, "IZI"),
        (0.5, "IIZ"),
        (0.4, "YII"),
        (0.3, "IYI"),
    ])
    .unwrap();
    assert_eq!(
        schedule_layers(&build_select_serial(&obs).unwrap()).t_depth,
        8
    );
}

#[test]
fn fanout_truth_table() {
    let c = build_fanout(2, 3).unwrap();
    for j in 0..4usize {
        let mut s = StateVector::basis(8, j).unwrap();
        s.apply_circuit(&c).unwrap();
        let expect = j | j << 2 | j << 4 | j << 6;
        assert!((s.amplitudes()[expect] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn one_term_parallel_select_is_serial_plus_fanout() {
    let obs = Observable::from_pairs(&[(1.0, "Z")]).unwrap();
    let (p, _) = partition_parallel(&obs, 1).unwrap();
    let cl = synthesize_partition(&obs, &p).unwrap();
    assert!(cl[0].circuit.is_empty());
    let par = build_select_parallel(&obs, &p, &cl).unwrap();
    assert_eq!(par.gates(), build_select_serial(&obs).unwrap().gates());
    // Forcing a second index instance adds a one-CNOT fanout around it.
    let par = build_select_parallel_with(&obs, &p, &cl, 2).unwrap();
    assert_eq!(par.gates().first(), Some(&Gate::cnot(1, 2)));
    assert_eq!(par.gates().last(), Some(&Gate::cnot(1, 2)));
}

#[test]
fn parallel_select_full_matrix_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..6 {
        let obs = random_observable(3, 6, &mut rng);
        let (p, _) = partition_parallel(&obs, 3).unwrap();
        let cl = synthesize_partition(&obs, &p).unwrap();
        let serial = build_select_serial(&obs).unwrap();
        let par = build_select_parallel(&obs, &p, &cl).unwrap();
        let v = circuits_equivalent(
            &serial,
            &par,
            &["system", "index"],
            &EquivalenceConfig::default(),
        )
        .unwrap();
        assert!(v.equivalent, "{v:?}");
        let a = serial.register("index").unwrap().len;
        let u = restricted_unitary(&par, &["system", "index"], 1e-9).unwrap();
        // Columns of `u` index basis states; transpose the row-major oracle.
        let oracle = select_oracle(&obs, a);
        let cols: Vec<Vec<Complex64>> = (0..oracle.len())
            .map(|c| oracle.iter().map(|row| row[c]).collect())
            .collect();
        assert!(matrices_equal_up_to_phase(&u, &cols, 1e-9));
    }
}

#[test]
fn corrupted_parallel_select_is_rejected() {
    let obs = Observable::from_pairs(&[(1.0, "ZZ"), (0.5, "XX"), (0.2, "ZI")]).unwrap();
    let (p, _) = partition_parallel(&obs, 2).unwrap();
    let mut cl = synthesize_partition(&obs, &p).unwrap();
    cl[0].signs[0] = cl[0].signs[0].flipped();
    let serial = build_select_serial(&obs).unwrap();
    let par = build_select_parallel(&obs, &p, &cl).unwrap();
    let v = circuits_equivalent(
        &serial,
        &par,
        &["system", "index"],
        &EquivalenceConfig::default(),
    )
    .unwrap();
    assert!(!v.equivalent);
}

fn check_qrom_truth_table(table: &QromTable, c: &Circuit) {
    for v in 0..1u64 << table.address_width() {
        let addr = word(v, table.address_width());
        let (data, restored) = qrom_readout(c, &addr).unwrap();
        assert_eq!(data, table.lookup(&addr), "address {addr}");
        assert!(restored, "address {addr} left scratch qubits dirty");
    }
}

#[test]
fn serial_qrom_random_width_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let t = lcupar::pipeline::random_qrom_table(3, 2, rng.gen_range(1..=8), &mut rng).unwrap();
        check_qrom_truth_table(&t, &build_qrom_serial(&t).unwrap());
    }
}

#[test]
fn control_conjugation_on_all_inputs() {
    let addrs = [bv("1100"), bv("0110"), bv("0011"), bv("1011")];
    let d = diagonalize_controls(&addrs).unwrap();
    let units: Vec<BitVector> = d.pivots.iter().map(|&p| BitVector::unit(4, p)).collect();
    assert_eq!(d.transformed, units);
    let data: Vec<BitVector> = (0..4).map(|i| BitVector::unit(4, i)).collect();
    let original = QromTable::new(4, 4, addrs.iter().cloned().zip(data.clone()).collect()).unwrap();
    let unit_table = QromTable::new(4, 4, units.into_iter().zip(data).collect()).unwrap();
    // C, then the unit-pattern QROM, then C† must equal the original QROM.
    let mut conj = Circuit::new(8);
    conj.add_register("address", 0, 4).unwrap();
    conj.add_register("data", 4, 4).unwrap();
    let qubits: Vec<usize> = (0..4).collect();
    let cgates = d.gates_on(&qubits);
    conj.extend(cgates.iter().cloned()).unwrap();
    conj.append(&build_qrom_serial(&unit_table).unwrap())
        .unwrap();
    conj.extend(cgates.into_iter().rev()).unwrap();
    let direct = build_qrom_serial(&original).unwrap();
    for v in 0..16 {
        let input = word(v, 8);
        assert_eq!(
            simulate_basis(&conj, &input).unwrap(),
            simulate_basis(&direct, &input).unwrap()
        );
    }
}

#[test]
fn hamming_two_bits() {
    let c = build_hamming_flag(2).unwrap();
    for (x, flag) in [(0u64, false), (1, true), (2, true), (3, false)] {
        let mut input = BitVector::zeros(c.n_qubits());
        input.set(0, x & 1 == 1);
        input.set(1, x & 2 == 2);
        assert_eq!(simulate_basis(&c, &input).unwrap().get(2), flag);
    }
}

#[test]
fn parallel_qrom_examples() {
    let t = QromTable::new(1, 1, vec![(bv("1"), bv("1"))]).unwrap();
    let p = partition_qrom_addresses(&t.addresses(), 1).unwrap();
    let c = build_qrom_parallel(&t, &p).unwrap();
    assert_eq!(c.count(lcupar::circuits::GateKind::Toffoli), 0);
    check_qrom_truth_table(&t, &c);

    let t = QromTable::new(
        3,
        2,
        vec![
            (bv("100"), bv("11")),
            (bv("010"), bv("01")),
            (bv("001"), bv("10")),
        ],
    )
    .unwrap();
    let p = partition_qrom_addresses(&t.addresses(), 3).unwrap();
    assert_eq!(p.sets.len(), 1);
    check_qrom_truth_table(&t, &build_qrom_parallel(&t, &p).unwrap());
}

#[test]
fn width_four_full_set() {
    let addrs = [bv("1100"), bv("0110"), bv("0011"), bv("1011")];
    let data: Vec<BitVector> = (0..4).map(|i| BitVector::unit(4, i)).collect();
    let t = QromTable::new(4, 4, addrs.into_iter().zip(data).collect()).unwrap();
    let p = partition_qrom_addresses(&t.addresses(), 4).unwrap();
    assert_eq!(p.sets.len(), 1);
    let par = build_qrom_parallel(&t, &p).unwrap();
    let ser = build_qrom_serial(&t).unwrap();
    check_qrom_truth_table(&t, &par);
    check_qrom_truth_table(&t, &ser);

    // All four data writes share one layer in the parallel circuit; the
    // serial MCPs all sit on the address register and need four.
    let data = par.register("data").unwrap();
    let sched = schedule_layers(&par);
    let write_layers: BTreeSet<usize> = sched
        .layers
        .iter()
        .enumerate()
        .filter(|(_, gates)| {
            gates.iter().any(|&i| {
                let g = &par.gates()[i];
                g.is_t_bearing()
                    && g.qubits()
                        .iter()
                        .any(|q| (data.start..data.end()).contains(q))
            })
        })
        .map(|(l, _)| l)
        .collect();
    assert_eq!(write_layers.len(), 1);
    assert_eq!(schedule_layers(&ser).t_depth, 4);
}

#[test]
fn random_parallel_qrom_truth_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..30 {
        let w = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=3);
        let entries = rng.gen_range(1..=1usize << w);
        let t = lcupar::pipeline::random_qrom_table(w, d, entries, &mut rng).unwrap();
        let p = partition_qrom_addresses(&t.addresses(), w).unwrap();
        let c = build_qrom_parallel(&t, &p).unwrap();
        check_qrom_truth_table(&t, &c);
    }
}

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::S),
        q.clone().prop_map(Gate::X),
        q.clone().prop_map(Gate::Z),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::cnot(a, b)),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::Cz(a, b)),
        (q.clone(), q.clone(), q.clone())
            .prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c)
            .prop_map(|(a, b, c)| Gate::toffoli(a, b, c)),
        (
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..n),
            any::<u8>(),
            any::<bool>()
        )
            .prop_map(move |(qs, bits, neg)| {
                let (controls, targets) = qs.split_at(qs.len() / 2);
                let controls = controls
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| {
                        Control::new(q, lcupar::circuits::Polarity::from_bit(bits >> i & 1 == 1))
                    })
                    .collect();
                let targets = targets
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| (q, [Pauli::X, Pauli::Y, Pauli::Z][(bits as usize + i) % 3]))
                    .collect();
                Gate::Mcp(Mcp::new(controls, targets, Sign::from_bit(neg)))
            }),
    ]
}

proptest! {
    #[test]
    fn circuit_text_round_trips(gates in (3..7usize).prop_flat_map(|n| proptest::collection::vec(gate_strategy(n), 0..30).prop_map(move |g| (n, g)))) {
        let (n, gates) = gates;
        let mut c = Circuit::new(n);
        c.add_register("system", 0, n - 1).unwrap();
        c.extend(gates).unwrap();
        let text = emit_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_circuit(&back), text);
    }

    #[test]
    fn inverse_undoes_circuit(gates in proptest::collection::vec(gate_strategy(4), 0..20), seed in any::<u64>()) {
        let mut c = Circuit::new(4);
        c.extend(gates).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = StateVector::random(4, &mut rng).unwrap();
        let mut s = psi.clone();
        s.apply_circuit(&c).unwrap();
        s.apply_circuit(&c.inverse()).unwrap();
        prop_assert!((psi.inner(&s).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn simulator_matches_dense_gates(gates in proptest::collection::vec(gate_strategy(4), 1..12), seed in any::<u64>()) {
        let mut c = Circuit::new(4);
        c.extend(gates).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = StateVector::random(4, &mut rng).unwrap();
        let mut s = psi.clone();
        s.apply_circuit(&c).unwrap();
        let u = circuit_matrix(&c);
        for (r, row) in u.iter().enumerate() {
            let want: Complex64 = row.iter().zip(psi.amplitudes()).map(|(a, b)| a * b).sum();
            prop_assert!((want - s.amplitudes()[r]).norm() < 1e-9);
        }
    }
}
