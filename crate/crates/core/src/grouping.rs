//! Partitioning of Pauli terms into commuting, linearly independent
//! "parallel sets", plus the same greedy for QROM address patterns.
//!
//! All greedy passes visit terms by descending `|c|` (ties by input order) and
//! QROM patterns by unsigned value, so results are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{BitVector, IndependentBasis, Observable};

/// Term indices applied together after one diagonalizing Clifford.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelSet {
    pub term_indices: Vec<usize>,
    pub capacity: usize,
}

impl ParallelSet {
    pub fn len(&self) -> usize {
        self.term_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.term_indices.is_empty()
    }
}

/// The excluded identity term; it only shifts the operator by a scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityTerm {
    pub index: usize,
    /// Signed coefficient.
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub n_qubits: usize,
    pub capacity: usize,
    pub source_term_count: usize,
    pub identity: Option<IdentityTerm>,
    pub sets: Vec<ParallelSet>,
}

impl Partition {
    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn partitioned_terms(&self) -> usize {
        self.sets.iter().map(ParallelSet::len).sum()
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(ParallelSet::len).max().unwrap_or(0)
    }

    /// Capacities above the register size cannot be realized without
    /// enlarging the system register; such partitions are statistics only.
    pub fn capacity_exceeds_register(&self) -> bool {
        self.capacity > self.n_qubits
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillingReport {
    pub capacity: usize,
    pub set_count: usize,
    pub partitioned_terms: usize,
    pub mean_set_size: f64,
    pub filling_factor: f64,
    pub set_size_histogram: BTreeMap<usize, usize>,
}

impl FillingReport {
    fn from_sizes(sizes: impl Iterator<Item = usize>, capacity: usize) -> Result<Self> {
        let mut histogram = BTreeMap::new();
        let mut total = 0;
        let mut count = 0;
        for s in sizes {
            *histogram.entry(s).or_insert(0) += 1;
            total += s;
            count += 1;
        }
        if count == 0 {
            return Err(Error::EmptyStatistic);
        }
        if capacity == 0 {
            return Err(Error::InvalidArgument("capacity must be at least 1".into()));
        }
        let mean = total as f64 / count as f64;
        Ok(Self {
            capacity,
            set_count: count,
            partitioned_terms: total,
            mean_set_size: mean,
            filling_factor: mean / capacity as f64,
            set_size_histogram: histogram,
        })
    }

    pub fn for_partition(partition: &Partition) -> Result<Self> {
        Self::from_sizes(
            partition.sets.iter().map(ParallelSet::len),
            partition.capacity,
        )
    }
}

/// Mean set size over capacity.
pub fn filling_factor(partition: &Partition) -> Result<f64> {
    Ok(FillingReport::for_partition(partition)?.filling_factor)
}

/// Approximate minimum clique cover of the commutation graph by sequential
/// first-fit: each term joins the first group it commutes with entirely.
/// The identity term is left out.
pub fn partition_commuting(obs: &Observable) -> Vec<Vec<usize>> {
    let terms = obs.terms();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in obs.greedy_order() {
        if Some(j) == obs.identity_index() {
            continue;
        }
        let p = &terms[j].pauli;
        let slot = groups.iter().position(|g| {
            g.iter().all(|&k| {
                !p.symplectic_product(&terms[k].pauli)
                    .expect("terms share n_qubits")
            })
        });
        match slot {
            Some(g) => groups[g].push(j),
            None => groups.push(vec![j]),
        }
    }
    groups
}

/// Splits each commuting group into linearly independent sets of at most
/// `capacity` terms by first-fit in group order.
pub fn refine_independent(
    obs: &Observable,
    groups: &[Vec<usize>],
    capacity: usize,
) -> Result<Partition> {
    if capacity == 0 {
        return Err(Error::InvalidArgument("capacity must be at least 1".into()));
    }
    let n = obs.n_qubits();
    let mut sets = Vec::new();
    for group in groups {
        let mut local: Vec<(IndependentBasis, Vec<usize>)> = Vec::new();
        for &j in group {
            let v = obs.terms()[j].pauli.symplectic_vector();
            let mut placed = false;
            for (basis, members) in local.iter_mut() {
                if members.len() < capacity && basis.try_extend(&v)? {
                    members.push(j);
                    placed = true;
                    break;
                }
            }
            if !placed {
                let mut basis = IndependentBasis::new(2 * n);
                if !basis.try_extend(&v)? {
                    // Only the identity reduces to zero on its own.
                    return Err(Error::InvalidArgument(format!(
                        "term {j} is the identity and cannot join a parallel set"
                    )));
                }
                local.push((basis, vec![j]));
            }
        }
        sets.extend(local.into_iter().map(|(_, term_indices)| ParallelSet {
            term_indices,
            capacity,
        }));
    }
    let identity = obs
        .identity_index()
        .map(|index| crate::grouping::IdentityTerm {
            index,
            coefficient: obs.terms()[index].signed_value(),
        });
    Ok(Partition {
        n_qubits: n,
        capacity,
        source_term_count: obs.len(),
        identity,
        sets,
    })
}

/// Commuting partition followed by independence refinement.
pub fn partition_parallel(obs: &Observable, capacity: usize) -> Result<(Partition, FillingReport)> {
    let groups = partition_commuting(obs);
    let partition = refine_independent(obs, &groups, capacity)?;
    let report = FillingReport::for_partition(&partition)?;
    Ok((partition, report))
}

/// Greedy independent-set partition of QROM address patterns.
#[derive(Debug, Clone, PartialEq)]
pub struct QromPartition {
    pub width: usize,
    /// Sets of indices into the input pattern list; the zero pattern is not
    /// in any of them.
    pub sets: Vec<Vec<usize>>,
    /// Index of the all-zero pattern. It activates on the all-zero address,
    /// which no CNOT conjugation can map to a unit vector, so it stays serial.
    pub zero_pattern: Option<usize>,
    /// Statistics over `sets` only; `None` when the zero pattern is the only
    /// input.
    pub report: Option<FillingReport>,
    /// Filling factor counting the zero pattern as one extra singleton set.
    pub filling_with_zero: f64,
}

/// Orders bit vectors by their unsigned value (bit 0 least significant).
pub fn cmp_unsigned(a: &BitVector, b: &BitVector) -> Ordering {
    a.words()
        .iter()
        .rev()
        .cmp(b.words().iter().rev())
        .then(a.len().cmp(&b.len()))
}

pub fn partition_qrom_addresses(patterns: &[BitVector], width: usize) -> Result<QromPartition> {
    if width == 0 {
        return Err(Error::InvalidArgument(
            "address width must be at least 1".into(),
        ));
    }
    let mut seen = HashSet::with_capacity(patterns.len());
    for p in patterns {
        Error::check_dim(width, p.len())?;
        if !seen.insert(p) {
            return Err(Error::Duplicate(p.to_string()));
        }
    }
    let mut order: Vec<usize> = (0..patterns.len()).collect();
    order.sort_by(|&a, &b| cmp_unsigned(&patterns[a], &patterns[b]));

    let mut zero_pattern = None;
    let mut sets: Vec<(IndependentBasis, Vec<usize>)> = Vec::new();
    // Indices into `sets` that still have room, in creation order.
    let mut open: Vec<usize> = Vec::new();
    for i in order {
        let v = &patterns[i];
        if v.is_zero() {
            zero_pattern = Some(i);
            continue;
        }
        let mut target = None;
        for (slot, &s) in open.iter().enumerate() {
            if sets[s].0.try_extend(v)? {
                target = Some((slot, s));
                break;
            }
        }
        match target {
            Some((slot, s)) => {
                sets[s].1.push(i);
                if sets[s].1.len() == width {
                    open.remove(slot);
                }
            }
            None => {
                let mut basis = IndependentBasis::new(width);
                basis.try_extend(v)?;
                sets.push((basis, vec![i]));
                if width > 1 {
                    open.push(sets.len() - 1);
                }
            }
        }
    }
    let sets: Vec<Vec<usize>> = sets.into_iter().map(|(_, m)| m).collect();
    let report = if sets.is_empty() {
        None
    } else {
        Some(FillingReport::from_sizes(sets.iter().map(Vec::len), width)?)
    };
    let (terms, count) = report
        .as_ref()
        .map_or((0, 0), |r| (r.partitioned_terms, r.set_count));
    let extra = usize::from(zero_pattern.is_some());
    let filling_with_zero = (terms + extra) as f64 / ((count + extra) * width) as f64;
    Ok(QromPartition {
        width,
        sets,
        zero_pattern,
        report,
        filling_with_zero,
    })
}
