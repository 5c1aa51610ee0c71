use crate::circuits::fanout::fanout_gates;
use crate::circuits::gate::{Circuit, Gate, Mcp};
use crate::clifford::{synth_diagonalizing_clifford, Diagonalization};
use crate::error::{Error, Result};
use crate::grouping::Partition;
use crate::pauli::{Observable, Pauli, PauliString};

/// Index register width `⌈log₂ L⌉`, at least 1.
pub fn index_width(term_count: usize) -> usize {
    let mut a = 0;
    while (1usize << a) < term_count {
        a += 1;
    }
    a.max(1)
}

/// Serial SELECT: one MCP per non-identity term, controlled on the binary
/// pattern of the term index. Registers `system` then `index`.
pub fn build_select_serial(obs: &Observable) -> Result<Circuit> {
    if obs.is_empty() {
        return Err(Error::InvalidArgument(
            "SELECT needs at least one term".into(),
        ));
    }
    let n = obs.n_qubits();
    let a = index_width(obs.len());
    let mut c = Circuit::new(n + a);
    let system = c.add_register("system", 0, n)?.qubits();
    let index = c.add_register("index", n, a)?.qubits();
    for (j, t) in obs.terms().iter().enumerate() {
        if Some(j) == obs.identity_index() {
            continue;
        }
        c.push(Gate::Mcp(Mcp::new(
            Mcp::binary_controls(&index, j as u64),
            Mcp::targets_from(&t.pauli, &system),
            t.pauli.sign(),
        )))?;
    }
    Ok(c)
}

/// Diagonalizing Cliffords for every set of `partition`, synthesized on the
/// unsigned term strings so the signs they report are pure conjugation signs.
pub fn synthesize_partition(
    obs: &Observable,
    partition: &Partition,
) -> Result<Vec<Diagonalization>> {
    let n = obs.n_qubits();
    partition
        .sets
        .iter()
        .map(|set| {
            let paulis: Vec<PauliString> = set
                .term_indices
                .iter()
                .map(|&j| obs.terms()[j].pauli.unsigned())
                .collect();
            synth_diagonalizing_clifford(&paulis, n)
        })
        .collect()
}

/// Parallel SELECT with as many index instances as the largest set.
pub fn build_select_parallel(
    obs: &Observable,
    partition: &Partition,
    cliffords: &[Diagonalization],
) -> Result<Circuit> {
    let instances = partition.max_set_size().max(1);
    build_select_parallel_with(obs, partition, cliffords, instances)
}

/// Parallel SELECT on `instances` copies of the index register (the index
/// register itself counts as instance 0).
///
/// Layout: `system`, `index`, `copy1`, ... Per set: the set's Clifford, one
/// MCP per member on its own index instance and system qubit, then the
/// Clifford's inverse. The whole sequence sits between a fanout and its
/// uncompute.
pub fn build_select_parallel_with(
    obs: &Observable,
    partition: &Partition,
    cliffords: &[Diagonalization],
    instances: usize,
) -> Result<Circuit> {
    let n = obs.n_qubits();
    Error::check_dim(n, partition.n_qubits)?;
    Error::check_dim(partition.sets.len(), cliffords.len())?;
    let needed = partition.max_set_size();
    if instances < needed.max(1) {
        return Err(Error::Capacity {
            size: needed,
            capacity: instances,
        });
    }
    let a = index_width(obs.len());
    let mut c = Circuit::new(n + instances * a);
    c.add_register("system", 0, n)?;
    let mut regs = vec![c.add_register("index", n, a)?.qubits()];
    for i in 1..instances {
        regs.push(c.add_register(&format!("copy{i}"), n + i * a, a)?.qubits());
    }

    let fanout = fanout_gates(&regs);
    c.extend(fanout.iter().cloned())?;
    for (set, diag) in partition.sets.iter().zip(cliffords) {
        Error::check_dim(set.len(), diag.signs.len())?;
        Error::check_dim(n, diag.circuit.n_qubits())?;
        c.append(&diag.circuit)?;
        for (r, &j) in set.term_indices.iter().enumerate() {
            let term = obs
                .terms()
                .get(j)
                .ok_or_else(|| Error::InvalidArgument(format!("term index {j} out of range")))?;
            c.push(Gate::Mcp(Mcp::new(
                Mcp::binary_controls(&regs[r], j as u64),
                vec![(r, Pauli::Z)],
                diag.signs[r] * term.pauli.sign(),
            )))?;
        }
        c.append(&diag.circuit.inverse())?;
    }
    c.extend(fanout.into_iter().rev())?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::gate::{Control, Polarity};
    use crate::circuits::schedule_layers;
    use crate::grouping::partition_parallel;
    use crate::pauli::Sign;

    #[test]
    fn widths() {
        assert_eq!(index_width(1), 1);
        assert_eq!(index_width(2), 1);
        assert_eq!(index_width(3), 2);
        assert_eq!(index_width(8), 3);
        assert_eq!(index_width(9), 4);
    }

    #[test]
    fn single_term() {
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
    }

    #[test]
    fn four_term_control_layout() {
        let obs =
            Observable::from_pairs(&[(1.0, "XI"), (1.0, "ZZ"), (-1.0, "YI"), (1.0, "IX")]).unwrap();
        let c = build_select_serial(&obs).unwrap();
        let patterns: Vec<Vec<Polarity>> = c
            .gates()
            .iter()
            .map(|g| match g {
                Gate::Mcp(m) => m.controls.iter().map(|c| c.polarity).collect(),
                _ => unreachable!(),
            })
            .collect();
        use Polarity::{Negative as N, Positive as P};
        assert_eq!(
            patterns,
            vec![vec![N, N], vec![P, N], vec![N, P], vec![P, P]]
        );
        assert_eq!(schedule_layers(&c).t_depth, 4);
    }

    #[test]
    fn one_group_split_in_two() {
        let obs = Observable::from_pairs(&[(1.0, "ZZ"), (1.0, "ZI"), (1.0, "IZ")]).unwrap();
        let (p, _) = partition_parallel(&obs, 2).unwrap();
        assert_eq!(p.set_count(), 2);
        let cl = synthesize_partition(&obs, &p).unwrap();
        let par = build_select_parallel(&obs, &p, &cl).unwrap();
        let ser = build_select_serial(&obs).unwrap();
        assert_eq!(schedule_layers(&par).t_depth, 2);
        assert_eq!(schedule_layers(&ser).t_depth, 3);
    }

    #[test]
    fn too_few_instances() {
        let obs = Observable::from_pairs(&[(1.0, "ZI"), (1.0, "IZ")]).unwrap();
        let (p, _) = partition_parallel(&obs, 2).unwrap();
        let cl = synthesize_partition(&obs, &p).unwrap();
        assert!(matches!(
            build_select_parallel_with(&obs, &p, &cl, 1),
            Err(Error::Capacity { .. })
        ));
    }
}
