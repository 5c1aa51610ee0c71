//! Input files, reports, CSV rows and run manifests.
//!
//! Observable files hold `<coefficient> <pauli>` lines; QROM tables hold
//! `<address bits> <data bits>` lines with the leftmost character as bit 0.
//! Both accept `#` comments and blank lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuits::QromTable;
use crate::error::{Error, Result};
use crate::grouping::{Partition, QromPartition};
use crate::pauli::{BitVector, Observable, PauliString, PauliTerm};
use crate::resources::{CostModelConfig, ResourceReport};
use crate::sim::EquivalenceVerdict;

/// Version stamped into partition files and CSV header comments.
pub const FORMAT_VERSION: u32 = 1;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn two_fields(body: &str, line: usize) -> Result<(&str, &str)> {
    let mut it = body.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(perr(line, format!("expected two fields, found `{body}`"))),
    }
}

pub fn parse_observable_str(text: &str) -> Result<Observable> {
    let mut terms = Vec::new();
    let mut width = None;
    for (line, body) in content_lines(text) {
        let (coef, letters) = two_fields(body, line)?;
        let c: f64 = coef
            .parse()
            .map_err(|_| perr(line, format!("`{coef}` is not a number")))?;
        let p = PauliString::parse(letters).map_err(|e| perr(line, e.to_string()))?;
        let n = *width.get_or_insert(p.n_qubits());
        if p.n_qubits() != n {
            return Err(Error::DimensionAt {
                line,
                expected: n,
                found: p.n_qubits(),
            });
        }
        terms.push(PauliTerm::new(p, c).map_err(|e| perr(line, e.to_string()))?);
    }
    let n = width.ok_or_else(|| perr(1, "no terms"))?;
    Observable::from_terms(n, terms)
}

pub fn parse_observable(path: &Path) -> Result<Observable> {
    parse_observable_str(&std::fs::read_to_string(path)?)
}

fn parse_bits(tok: &str, line: usize) -> Result<BitVector> {
    BitVector::parse(tok).ok_or_else(|| perr(line, format!("`{tok}` is not a bit string")))
}

pub fn parse_qrom_table_str(text: &str) -> Result<QromTable> {
    let mut entries = Vec::new();
    let mut widths = None;
    for (line, body) in content_lines(text) {
        let (a, d) = two_fields(body, line)?;
        let (addr, data) = (parse_bits(a, line)?, parse_bits(d, line)?);
        let (aw, dw) = *widths.get_or_insert((addr.len(), data.len()));
        if addr.len() != aw || data.len() != dw {
            return Err(perr(
                line,
                format!(
                    "row widths ({}, {}) differ from ({aw}, {dw})",
                    addr.len(),
                    data.len()
                ),
            ));
        }
        entries.push((addr, data));
    }
    let (aw, dw) = widths.ok_or(Error::EmptyTable)?;
    QromTable::new(aw, dw, entries)
}

pub fn parse_qrom_table(path: &Path) -> Result<QromTable> {
    parse_qrom_table_str(&std::fs::read_to_string(path)?)
}

pub fn emit_qrom_table(table: &QromTable) -> String {
    let mut out = String::new();
    for (a, d) in table.entries() {
        writeln!(out, "{a} {d}").unwrap();
    }
    out
}

pub fn emit_observable(obs: &Observable) -> String {
    let mut out = String::new();
    for t in obs.terms() {
        writeln!(out, "{} {}", t.signed_value(), t.pauli.unsigned()).unwrap();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PartitionFile {
    format_version: u32,
    partition: Partition,
}

pub fn partition_to_toml(p: &Partition) -> Result<String> {
    toml::to_string(&PartitionFile {
        format_version: FORMAT_VERSION,
        partition: p.clone(),
    })
    .map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn partition_from_toml(text: &str) -> Result<Partition> {
    let file: PartitionFile =
        toml::from_str(text).map_err(|e| perr(toml_line(text, &e), e.message()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(perr(
            1,
            format!(
                "partition format version {} is not supported",
                file.format_version
            ),
        ));
    }
    Ok(file.partition)
}

fn toml_line(text: &str, e: &toml::de::Error) -> usize {
    e.span()
        .map(|s| text[..s.start.min(text.len())].lines().count().max(1))
        .unwrap_or(1)
}

/// Checks a loaded partition against the observable it claims to cover.
pub fn check_partition(obs: &Observable, p: &Partition) -> Result<()> {
    Error::check_dim(obs.n_qubits(), p.n_qubits)?;
    Error::check_dim(obs.len(), p.source_term_count)?;
    let mut seen = vec![false; obs.len()];
    if let Some(id) = &p.identity {
        if obs.identity_index() != Some(id.index) {
            return Err(Error::InvalidArgument(format!(
                "term {} is not the identity",
                id.index
            )));
        }
        seen[id.index] = true;
    }
    for s in &p.sets {
        for &i in &s.term_indices {
            match seen.get_mut(i) {
                Some(f) if !*f => *f = true,
                Some(_) => return Err(Error::Duplicate(format!("term index {i}"))),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "term index {i} out of range"
                    )))
                }
            }
        }
    }
    match seen.iter().position(|f| !f) {
        Some(i) => Err(Error::InvalidArgument(format!("term {i} is in no set"))),
        None => Ok(()),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// `key: value` lines.
pub fn resource_report_text(r: &ResourceReport) -> String {
    let mut out = String::new();
    let rows: [(&str, String); 19] = [
        ("n_qubits", r.n_qubits.to_string()),
        ("term_count", r.term_count.to_string()),
        ("set_count", r.set_count.to_string()),
        ("index_width", r.index_width.to_string()),
        ("index_instances", r.index_instances.to_string()),
        ("qubits_serial", r.qubits_serial.to_string()),
        ("qubits_parallel", r.qubits_parallel.to_string()),
        ("t_depth_serial", r.t_depth_serial.to_string()),
        ("t_depth_parallel", r.t_depth_parallel.to_string()),
        ("t_count", r.t_count.to_string()),
        (
            "depth_reduction_factor",
            format!("{:.4}", r.depth_reduction_factor),
        ),
        ("qubit_factor", format!("{:.4}", r.qubit_factor)),
        ("stv_ratio", format!("{:.4}", r.stv_ratio)),
        (
            "filling_factor",
            r.filling_factor.map_or("-".into(), |f| format!("{f:.4}")),
        ),
        (
            "asymptotic_saving",
            r.asymptotic_saving
                .map_or("-".into(), |f| format!("{f:.4}")),
        ),
        ("copies_convention", r.config.copies_convention.to_string()),
        (
            "t_per_control_pair",
            r.config.t_per_control_pair.to_string(),
        ),
        ("unary_iteration", r.config.unary_iteration.to_string()),
        ("d_stage", r.config.d_stage.to_string()),
    ];
    for (k, v) in rows {
        writeln!(out, "{k}: {v}").unwrap();
    }
    out
}

pub const RESOURCE_CSV_HEADER: &str = "n_qubits,term_count,set_count,index_width,index_instances,\
qubits_serial,qubits_parallel,t_depth_serial,t_depth_parallel,t_count,depth_reduction_factor,\
qubit_factor,stv_ratio,filling_factor,asymptotic_saving,copies_convention,t_per_control_pair,\
unary_iteration,d_stage";

pub fn resource_report_csv(r: &ResourceReport) -> String {
    format!(
        "# resource-report v{FORMAT_VERSION}\n{RESOURCE_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.n_qubits,
        r.term_count,
        r.set_count,
        r.index_width,
        r.index_instances,
        r.qubits_serial,
        r.qubits_parallel,
        r.t_depth_serial,
        r.t_depth_parallel,
        r.t_count,
        r.depth_reduction_factor,
        r.qubit_factor,
        r.stv_ratio,
        opt(r.filling_factor),
        opt(r.asymptotic_saving),
        r.config.copies_convention,
        r.config.t_per_control_pair,
        r.config.unary_iteration,
        r.config.d_stage,
    )
}

/// Outcome of the verification step: a verdict, or a skip when the circuits
/// are wider than the simulator cap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verification {
    Checked(EquivalenceVerdict),
    Skipped { qubits: usize, cap: usize },
}

impl Verification {
    pub fn passed(&self) -> Option<bool> {
        match self {
            Verification::Checked(v) => Some(v.equivalent),
            Verification::Skipped { .. } => None,
        }
    }
}

pub fn verdict_text(v: &Verification) -> String {
    match v {
        Verification::Checked(v) => format!(
            "verdict: {}\nmax_deviation: {:e}\ntrials: {}\nancilla_restored: {}\nseed: {}\ntolerance: {:e}\n",
            if v.equivalent { "EQUIVALENT" } else { "NOT EQUIVALENT" },
            v.max_deviation,
            v.trials,
            v.ancilla_restored,
            v.seed,
            v.tolerance
        ),
        Verification::Skipped { qubits, cap } => {
            format!("verdict: SKIPPED(size)\nqubits: {qubits}\ncap: {cap}\n")
        }
    }
}

pub const VERDICT_CSV_HEADER: &str = "verdict,max_deviation,trials,ancilla_restored,seed,tolerance";

pub fn verdict_csv(v: &Verification) -> String {
    let row = match v {
        Verification::Checked(v) => format!(
            "{},{},{},{},{},{}",
            if v.equivalent {
                "equivalent"
            } else {
                "not-equivalent"
            },
            v.max_deviation,
            v.trials,
            v.ancilla_restored,
            v.seed,
            v.tolerance
        ),
        Verification::Skipped { .. } => "skipped-size,,,,,".into(),
    };
    format!("# verdict v{FORMAT_VERSION}\n{VERDICT_CSV_HEADER}\n{row}\n")
}

/// One point of a depth-reduction or filling sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub term_count: usize,
    pub set_count: usize,
    pub depth_reduction: f64,
    /// `depth_reduction / n`.
    pub filling: f64,
    /// QROM sweeps only: filling with the all-zero pattern as its own set.
    pub filling_with_zero: Option<f64>,
}

impl SweepRow {
    pub fn new(n: usize, term_count: usize, set_count: usize) -> Result<Self> {
        if n == 0 || set_count == 0 {
            return Err(Error::EmptyStatistic);
        }
        let depth_reduction = term_count as f64 / set_count as f64;
        Ok(Self {
            n,
            term_count,
            set_count,
            depth_reduction,
            filling: depth_reduction / n as f64,
            filling_with_zero: None,
        })
    }

    pub fn from_partition(p: &Partition) -> Result<Self> {
        Self::new(p.n_qubits, p.partitioned_terms(), p.set_count())
    }

    pub fn from_qrom(p: &QromPartition) -> Result<Self> {
        let r = p.report.as_ref().ok_or(Error::EmptyStatistic)?;
        let mut row = Self::new(p.width, r.partitioned_terms, r.set_count)?;
        row.filling_with_zero = Some(p.filling_with_zero);
        Ok(row)
    }
}

pub const SWEEP_CSV_HEADER: &str =
    "n,term_count,set_count,depth_reduction,filling,filling_with_zero";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("# sweep v{FORMAT_VERSION}\n{SWEEP_CSV_HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.term_count,
            r.set_count,
            r.depth_reduction,
            r.filling,
            opt(r.filling_with_zero)
        )
        .unwrap();
    }
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Everything needed to reproduce a run's outputs byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Input name to SHA-256 of its bytes.
    pub input_digests: BTreeMap<String, String>,
    pub seed: u64,
    pub capacity: Option<usize>,
    pub tolerance: f64,
    pub qubit_cap: usize,
    pub config: CostModelConfig,
    pub term_order: String,
    pub qrom_order: String,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        seed: u64,
        tolerance: f64,
        qubit_cap: usize,
        config: CostModelConfig,
    ) -> Self {
        Self {
            command: command.into(),
            input_digests: BTreeMap::new(),
            seed,
            capacity: None,
            tolerance,
            qubit_cap,
            config,
            term_order: "descending |coefficient|, ties by input position".into(),
            qrom_order: "ascending unsigned address value".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.input_digests.insert(name.into(), sha256_hex(bytes));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))
    }
}
