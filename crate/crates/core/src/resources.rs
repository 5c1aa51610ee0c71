//! Analytic qubit, T-count, T-depth and space-time volume model for serial
//! versus parallel SELECT.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuits::{index_width, Circuit};
use crate::clifford::DEFAULT_D_STAGE;
use crate::error::{Error, Result};
use crate::grouping::{filling_factor, Partition};
use crate::pauli::Observable;

/// How many index-register instances the parallel layout is charged for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CopiesConvention {
    /// One instance per system qubit.
    N,
    /// One instance per member of the largest set.
    MaxSetSize,
}

impl fmt::Display for CopiesConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CopiesConvention::N => "n",
            CopiesConvention::MaxSetSize => "max-set-size",
        })
    }
}

impl FromStr for CopiesConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(CopiesConvention::N),
            "max-set-size" => Ok(CopiesConvention::MaxSetSize),
            _ => Err(Error::InvalidArgument(format!(
                "copies convention `{s}` (expected n or max-set-size)"
            ))),
        }
    }
}

/// Optional magic-state factory footprint, added to both qubit columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TFactoryModel {
    pub qubits_per_factory: usize,
    pub factories: usize,
}

impl TFactoryModel {
    pub fn qubits(&self) -> usize {
        self.qubits_per_factory * self.factories
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModelConfig {
    /// T gates per control-reduction step; an MCP with `c` controls costs
    /// `t_per_control_pair · (c - 1)`.
    pub t_per_control_pair: usize,
    /// Cost serial SELECT as a unary-iteration ladder, `4 · (L - 1)`.
    pub unary_iteration: bool,
    pub d_stage: usize,
    pub copies_convention: CopiesConvention,
    pub factory: Option<TFactoryModel>,
}

impl Default for CostModelConfig {
    fn default() -> Self {
        Self {
            t_per_control_pair: 4,
            unary_iteration: false,
            d_stage: DEFAULT_D_STAGE,
            copies_convention: CopiesConvention::N,
            factory: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub n_qubits: usize,
    pub term_count: usize,
    pub set_count: usize,
    pub index_width: usize,
    pub index_instances: usize,
    pub qubits_serial: usize,
    pub qubits_parallel: usize,
    pub t_depth_serial: usize,
    pub t_depth_parallel: usize,
    pub t_count: usize,
    pub depth_reduction_factor: f64,
    pub qubit_factor: f64,
    pub stv_ratio: f64,
    pub filling_factor: Option<f64>,
    /// `n · 𝓕 / log₂ n`, the asymptotic space-time saving.
    pub asymptotic_saving: Option<f64>,
    pub config: CostModelConfig,
}

impl ResourceReport {
    /// Space-time volume ratio recomputed from the report's own fields.
    pub fn recomputed_stv_ratio(&self) -> f64 {
        (self.qubits_serial * self.t_depth_serial) as f64
            / (self.qubits_parallel * self.t_depth_parallel) as f64
    }
}

/// Model T-count of serial SELECT over `term_count` controlled terms on an
/// `a`-bit index.
pub fn t_count_select(term_count: usize, a: usize, config: &CostModelConfig) -> usize {
    if config.unary_iteration {
        4 * term_count.saturating_sub(1)
    } else {
        term_count * config.t_per_control_pair * a.saturating_sub(1)
    }
}

/// Naive T-count of a circuit: `t_per_control_pair · (c - 1)` per TOFFOLI
/// or MCP with `c` controls.
pub fn t_count(circuit: &Circuit, config: &CostModelConfig) -> usize {
    circuit
        .gates()
        .iter()
        .filter(|g| g.is_t_bearing())
        .map(|g| config.t_per_control_pair * (g.control_count() - 1))
        .sum()
}

/// Estimate with `n` index instances (the `n` copies convention).
pub fn estimate_select(
    n: usize,
    term_count: usize,
    set_count: usize,
    config: &CostModelConfig,
) -> Result<ResourceReport> {
    estimate_select_with_instances(n, term_count, set_count, n, config)
}

pub fn estimate_select_with_instances(
    n: usize,
    term_count: usize,
    set_count: usize,
    instances: usize,
    config: &CostModelConfig,
) -> Result<ResourceReport> {
    estimate(
        n,
        term_count,
        set_count,
        index_width(term_count),
        instances,
        config,
    )
}

fn estimate(
    n: usize,
    term_count: usize,
    set_count: usize,
    a: usize,
    instances: usize,
    config: &CostModelConfig,
) -> Result<ResourceReport> {
    if set_count == 0 || set_count > term_count {
        return Err(Error::InvalidArgument(format!(
            "set count {set_count} must lie in 1..={term_count}"
        )));
    }
    let factory = config.factory.map_or(0, |f| f.qubits());
    let qubits_serial = n + a + factory;
    let qubits_parallel = n + instances * a + 3 * n + factory;
    let mut report = ResourceReport {
        n_qubits: n,
        term_count,
        set_count,
        index_width: a,
        index_instances: instances,
        qubits_serial,
        qubits_parallel,
        t_depth_serial: term_count,
        t_depth_parallel: set_count,
        t_count: t_count_select(term_count, a, config),
        depth_reduction_factor: term_count as f64 / set_count as f64,
        qubit_factor: qubits_parallel as f64 / qubits_serial as f64,
        stv_ratio: 0.0,
        filling_factor: None,
        asymptotic_saving: None,
        config: *config,
    };
    report.stv_ratio = report.recomputed_stv_ratio();
    Ok(report)
}

/// Estimate from a measured partition. The term count excludes the identity,
/// which is never applied as a controlled gate; the index width still
/// covers every input term.
pub fn estimate_from_partition(
    obs: &Observable,
    partition: &Partition,
    config: &CostModelConfig,
) -> Result<ResourceReport> {
    let n = obs.n_qubits();
    let instances = match config.copies_convention {
        CopiesConvention::N => n,
        CopiesConvention::MaxSetSize => partition.max_set_size().max(1),
    };
    let mut report = estimate(
        n,
        partition.partitioned_terms(),
        partition.set_count(),
        index_width(obs.len()),
        instances,
        config,
    )?;
    let f = filling_factor(partition)?;
    report.filling_factor = Some(f);
    report.asymptotic_saving = (n > 1).then(|| n as f64 * f / (n as f64).log2());
    Ok(report)
}
