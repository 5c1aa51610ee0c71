use std::collections::HashSet;

use crate::circuits::fanout::fanout_gates;
use crate::circuits::gate::{Circuit, Control, Gate, Mcp};
use crate::circuits::hamming::{hamming_flag_gates, hamming_workspace};
use crate::error::{Error, Result};
use crate::grouping::QromPartition;
use crate::pauli::{BitVector, Pauli, Sign};

/// Classical table `l -> d_l` read by a QROM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QromTable {
    address_width: usize,
    data_width: usize,
    entries: Vec<(BitVector, BitVector)>,
}

impl QromTable {
    pub fn new(
        address_width: usize,
        data_width: usize,
        entries: Vec<(BitVector, BitVector)>,
    ) -> Result<Self> {
        if address_width == 0 || data_width == 0 {
            return Err(Error::InvalidArgument(
                "QROM widths must be positive".into(),
            ));
        }
        if entries.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut seen = HashSet::new();
        for (addr, data) in &entries {
            Error::check_dim(address_width, addr.len())?;
            Error::check_dim(data_width, data.len())?;
            if !seen.insert(addr.clone()) {
                return Err(Error::Duplicate(addr.to_string()));
            }
        }
        Ok(Self {
            address_width,
            data_width,
            entries,
        })
    }

    pub fn address_width(&self) -> usize {
        self.address_width
    }

    pub fn data_width(&self) -> usize {
        self.data_width
    }

    pub fn entries(&self) -> &[(BitVector, BitVector)] {
        &self.entries
    }

    pub fn addresses(&self) -> Vec<BitVector> {
        self.entries.iter().map(|e| e.0.clone()).collect()
    }

    /// Data word stored at `address`, zero when absent.
    pub fn lookup(&self, address: &BitVector) -> BitVector {
        self.entries
            .iter()
            .find(|e| &e.0 == address)
            .map(|e| e.1.clone())
            .unwrap_or_else(|| BitVector::zeros(self.data_width))
    }
}

fn x_targets(data: &BitVector, data_qubits: &[usize]) -> Vec<(usize, Pauli)> {
    data.iter_ones()
        .map(|b| (data_qubits[b], Pauli::X))
        .collect()
}

fn pattern_controls(address: &BitVector, qubits: &[usize]) -> Vec<Control> {
    address
        .iter()
        .zip(qubits)
        .map(|(bit, &q)| {
            if bit {
                Control::positive(q)
            } else {
                Control::negative(q)
            }
        })
        .collect()
}

/// One MCP per entry with a nonzero data word. Registers `address`, `data`.
pub fn build_qrom_serial(table: &QromTable) -> Result<Circuit> {
    let (w, d) = (table.address_width, table.data_width);
    let mut c = Circuit::new(w + d);
    let address = c.add_register("address", 0, w)?.qubits();
    let data = c.add_register("data", w, d)?.qubits();
    for (addr, word) in &table.entries {
        if word.is_zero() {
            continue;
        }
        c.push(Gate::Mcp(Mcp::new(
            pattern_controls(addr, &address),
            x_targets(word, &data),
            Sign::Plus,
        )))?;
    }
    Ok(c)
}

/// CNOT network `C` on the address register and the unit patterns it
/// produces: running `C` maps address `l` to `e_{pivots[l]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlDiagonalization {
    /// `(control, target)` pairs in time order, indices within the register.
    pub cnots: Vec<(usize, usize)>,
    pub pivots: Vec<usize>,
    pub transformed: Vec<BitVector>,
}

impl ControlDiagonalization {
    pub fn gates_on(&self, qubits: &[usize]) -> Vec<Gate> {
        self.cnots
            .iter()
            .map(|&(c, t)| Gate::cnot(qubits[c], qubits[t]))
            .collect()
    }
}

/// Row-reduces the qubit-by-address bit matrix with CNOTs (row additions)
/// until every address column is a distinct unit vector.
pub fn diagonalize_controls(addresses: &[BitVector]) -> Result<ControlDiagonalization> {
    let Some(first) = addresses.first() else {
        return Ok(ControlDiagonalization {
            cnots: Vec::new(),
            pivots: Vec::new(),
            transformed: Vec::new(),
        });
    };
    let w = first.len();
    let mut cols: Vec<BitVector> = Vec::with_capacity(addresses.len());
    for a in addresses {
        Error::check_dim(w, a.len())?;
        cols.push(a.clone());
    }
    let mut used = vec![false; w];
    let mut pivots = Vec::with_capacity(cols.len());
    let mut cnots = Vec::new();
    for l in 0..cols.len() {
        let p = (0..w)
            .find(|&r| !used[r] && cols[l].get(r))
            .ok_or(Error::Dependent { index: l })?;
        used[p] = true;
        pivots.push(p);
        for r in 0..w {
            if r != p && cols[l].get(r) {
                cnots.push((p, r));
                // CNOT(p -> r) adds bit p into bit r of every address.
                for col in cols.iter_mut() {
                    if col.get(p) {
                        col.flip(r);
                    }
                }
            }
        }
    }
    Ok(ControlDiagonalization {
        cnots,
        pivots,
        transformed: cols,
    })
}

/// Parallel QROM. Per address set: diagonalize the controls, fan the
/// address out, compute the `popcount == 1` flag and copy it, apply one
/// doubly-controlled data write per entry on its own copy, then undo
/// everything but the writes. The zero address and singleton sets are
/// written serially.
///
/// Registers: `address`, `data`, `copy1..`, `flags`, `work`.
pub fn build_qrom_parallel(table: &QromTable, partition: &QromPartition) -> Result<Circuit> {
    let (w, d) = (table.address_width, table.data_width);
    Error::check_dim(w, partition.width)?;
    let covered: usize = partition.sets.iter().map(Vec::len).sum::<usize>()
        + usize::from(partition.zero_pattern.is_some());
    Error::check_dim(table.entries.len(), covered)?;

    let k = partition
        .sets
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(1)
        .max(1);
    if k > w {
        return Err(Error::Capacity {
            size: k,
            capacity: w,
        });
    }
    let work = hamming_workspace(w);
    let n_qubits = w + d + (k - 1) * w + k + work;
    let mut c = Circuit::new(n_qubits);
    let mut instances = vec![c.add_register("address", 0, w)?.qubits()];
    let data = c.add_register("data", w, d)?.qubits();
    for i in 1..k {
        instances.push(
            c.add_register(&format!("copy{i}"), w + d + (i - 1) * w, w)?
                .qubits(),
        );
    }
    let flags = c.add_register("flags", w + d + (k - 1) * w, k)?.qubits();
    let work_start = w + d + (k - 1) * w + k;
    if work > 0 {
        c.add_register("work", work_start, work)?;
    }

    if let Some(z) = partition.zero_pattern {
        let (addr, word) = &table.entries[z];
        if !word.is_zero() {
            c.push(Gate::Mcp(Mcp::new(
                pattern_controls(addr, &instances[0]),
                x_targets(word, &data),
                Sign::Plus,
            )))?;
        }
    }

    let flag_instances: Vec<Vec<usize>> = flags.iter().map(|&f| vec![f]).collect();
    for set in &partition.sets {
        let entries: Vec<&(BitVector, BitVector)> = set
            .iter()
            .map(|&i| {
                table
                    .entries
                    .get(i)
                    .ok_or_else(|| Error::InvalidArgument(format!("entry {i} out of range")))
            })
            .collect::<Result<_>>()?;
        if entries.iter().all(|e| e.1.is_zero()) {
            continue;
        }
        if let [(addr, word)] = entries.as_slice() {
            // A lone entry gains nothing from the flag machinery.
            c.push(Gate::Mcp(Mcp::new(
                pattern_controls(addr, &instances[0]),
                x_targets(word, &data),
                Sign::Plus,
            )))?;
            continue;
        }
        let addrs: Vec<BitVector> = entries.iter().map(|e| e.0.clone()).collect();
        let diag = diagonalize_controls(&addrs)?;
        let m = set.len();

        let mut compute = diag.gates_on(&instances[0]);
        compute.extend(fanout_gates(&instances[..m]));
        compute.extend(hamming_flag_gates(&instances[0], flags[0], work_start).gates);
        compute.extend(fanout_gates(&flag_instances[..m]));

        c.extend(compute.iter().cloned())?;
        for (r, (entry, &p)) in entries.iter().zip(&diag.pivots).enumerate() {
            let targets = x_targets(&entry.1, &data);
            let gate = match targets.as_slice() {
                [] => continue,
                [(t, _)] => Gate::toffoli(instances[r][p], flags[r], *t),
                _ => Gate::Mcp(Mcp::new(
                    vec![
                        Control::positive(instances[r][p]),
                        Control::positive(flags[r]),
                    ],
                    targets,
                    Sign::Plus,
                )),
            };
            c.push(gate)?;
        }
        c.extend(compute.into_iter().rev())?;
    }
    Ok(c)
}
