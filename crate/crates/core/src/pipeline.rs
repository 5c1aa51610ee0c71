//! End-to-end runs and sweeps built from the other modules, plus the sample
//! input generators.

use rand::Rng;

use crate::circuits::{
    build_select_parallel, build_select_serial, emit_circuit, emit_staged, synthesize_partition,
    Circuit, QromTable,
};
use crate::clifford::{
    constant_depth_cost_with, normal_form_stages, tableau_from_circuit, ConstantDepthCost,
    Diagonalization, StagedCircuit,
};
use crate::error::{Error, Result};
use crate::grouping::{partition_parallel, partition_qrom_addresses, FillingReport, Partition};
use crate::io::{parse_observable_str, partition_to_toml, RunManifest, SweepRow, Verification};
use crate::pauli::{BitVector, Observable, PauliString, PauliTerm};
use crate::resources::{estimate_from_partition, CostModelConfig, ResourceReport};
use crate::sim::{circuits_equivalent, EquivalenceConfig};

/// Largest width for which all `2^n` patterns are enumerated.
pub const QROM_SWEEP_MAX: usize = 16;

/// Every `n`-bit pattern in ascending unsigned order.
pub fn all_patterns(n: usize) -> Vec<BitVector> {
    (0..1u64 << n)
        .map(|v| BitVector::from_bools(&(0..n).map(|b| v >> b & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Unit-weight observable over every tensor product of `I` and `X` on `n`
/// qubits, the identity included.
pub fn all_x_observable(n: usize) -> Result<Observable> {
    let terms = all_patterns(n)
        .into_iter()
        .map(|x| {
            let letters: String = x.iter().map(|b| if b { 'X' } else { 'I' }).collect();
            PauliTerm::new(PauliString::parse(&letters)?, 1.0)
        })
        .collect::<Result<Vec<_>>>()?;
    Observable::from_terms(n, terms)
}

/// Table over `entries` distinct random addresses with random nonzero data.
pub fn random_qrom_table<R: Rng>(
    address_width: usize,
    data_width: usize,
    entries: usize,
    rng: &mut R,
) -> Result<QromTable> {
    if address_width >= 64 || entries > 1 << address_width {
        return Err(Error::InvalidArgument(format!(
            "{entries} entries do not fit a {address_width}-bit address"
        )));
    }
    let mut values: Vec<u64> = (0..1u64 << address_width).collect();
    for i in 0..entries {
        let j = rng.gen_range(i..values.len());
        values.swap(i, j);
    }
    let word = |v: u64, w: usize| {
        BitVector::from_bools(&(0..w).map(|b| v >> b & 1 == 1).collect::<Vec<_>>())
    };
    let rows = values[..entries]
        .iter()
        .map(|&a| {
            let d = rng.gen_range(1..1u64 << data_width.min(63));
            (word(a, address_width), word(d, data_width))
        })
        .collect();
    QromTable::new(address_width, data_width, rows)
}

/// Rows of the exhaustive QROM filling sweep plus its trend check.
#[derive(Debug, Clone, PartialEq)]
pub struct QromSweep {
    pub rows: Vec<SweepRow>,
    /// Filling never decreases from `n = 4` on, zero pattern excluded.
    /// Counting alone rules this out from 4 to 5: 31 patterns need at least
    /// 7 sets of 5, so filling is at most 31/35 there against 15/16 at 4.
    pub monotone_from_4: bool,
    /// The same trend with the zero pattern as its own set.
    pub monotone_with_zero_from_4: bool,
}

/// Partitions all `2^n` patterns for each `n` in `2..=max_n`, one thread per
/// width. Rows come back in ascending `n`.
pub fn qrom_filling_sweep(max_n: usize) -> Result<QromSweep> {
    if !(2..=QROM_SWEEP_MAX).contains(&max_n) {
        return Err(Error::InvalidArgument(format!(
            "sweep bound {max_n} outside 2..={QROM_SWEEP_MAX}"
        )));
    }
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = (2..=max_n)
            .map(|n| {
                s.spawn(move || {
                    let p = partition_qrom_addresses(&all_patterns(n), n)?;
                    SweepRow::from_qrom(&p)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let monotone = |f: fn(&SweepRow) -> f64| {
        rows.windows(2)
            .filter(|w| w[0].n >= 4)
            .all(|w| f(&w[1]) >= f(&w[0]))
    };
    let monotone_from_4 = monotone(|r| r.filling);
    let monotone_with_zero_from_4 = monotone(|r| r.filling_with_zero.unwrap_or(r.filling));
    Ok(QromSweep {
        rows,
        monotone_from_4,
        monotone_with_zero_from_4,
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PipelineConfig {
    /// Set capacity; the system width when absent.
    pub capacity: Option<usize>,
    pub equivalence: EquivalenceConfig,
    pub cost: CostModelConfig,
}

/// Everything one pipeline run produces.
#[derive(Debug, Clone)]
pub struct PipelineArtifacts {
    pub observable: Observable,
    pub partition: Partition,
    pub filling: FillingReport,
    pub cliffords: Vec<Diagonalization>,
    pub staged: Vec<StagedCircuit>,
    pub clifford_cost: ConstantDepthCost,
    pub serial: Circuit,
    pub parallel: Circuit,
    pub verification: Verification,
    pub report: ResourceReport,
    pub manifest: RunManifest,
}

impl PipelineArtifacts {
    pub fn partition_toml(&self) -> Result<String> {
        partition_to_toml(&self.partition)
    }

    /// Staged normal forms of every set's Clifford, separated by
    /// `# set <k>` lines.
    pub fn cliffords_text(&self) -> String {
        self.staged
            .iter()
            .enumerate()
            .map(|(k, s)| format!("# set {k}\n{}", emit_staged(s)))
            .collect()
    }

    pub fn serial_text(&self) -> String {
        emit_circuit(&self.serial)
    }

    pub fn parallel_text(&self) -> String {
        emit_circuit(&self.parallel)
    }
}

/// Partition, synthesize, build both SELECTs, verify when small enough and
/// estimate resources for observable file contents `source`.
pub fn run_pipeline(source: &str, config: &PipelineConfig) -> Result<PipelineArtifacts> {
    let obs = parse_observable_str(source)?;
    let n = obs.n_qubits();
    let capacity = config.capacity.unwrap_or(n);
    let (partition, filling) = partition_parallel(&obs, capacity)?;
    let cliffords = synthesize_partition(&obs, &partition)?;
    let staged: Vec<StagedCircuit> = cliffords
        .iter()
        .map(|d| tableau_from_circuit(&d.circuit).map(|t| normal_form_stages(&t)))
        .collect::<Result<_>>()?;
    let mut clifford_cost = ConstantDepthCost::default();
    for s in &staged {
        let c = constant_depth_cost_with(s, n, config.cost.d_stage);
        clifford_cost.ancilla_qubits = clifford_cost.ancilla_qubits.max(c.ancilla_qubits);
        clifford_cost.depth_units += c.depth_units;
        clifford_cost.resource_state_count += c.resource_state_count;
    }
    let serial = build_select_serial(&obs)?;
    let parallel = build_select_parallel(&obs, &partition, &cliffords)?;
    let eq = &config.equivalence;
    let verification = if parallel.n_qubits() > eq.qubit_cap {
        Verification::Skipped {
            qubits: parallel.n_qubits(),
            cap: eq.qubit_cap,
        }
    } else {
        Verification::Checked(circuits_equivalent(
            &serial,
            &parallel,
            &["system", "index"],
            eq,
        )?)
    };
    let report = estimate_from_partition(&obs, &partition, &config.cost)?;
    let mut manifest =
        RunManifest::new("pipeline", eq.seed, eq.tolerance, eq.qubit_cap, config.cost);
    manifest.capacity = Some(capacity);
    manifest.add_input("observable", source.as_bytes());
    Ok(PipelineArtifacts {
        observable: obs,
        partition,
        filling,
        cliffords,
        staged,
        clifford_cost,
        serial,
        parallel,
        verification,
        report,
        manifest,
    })
}
