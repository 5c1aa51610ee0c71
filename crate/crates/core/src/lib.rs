//! Parallel compilation of LCU SELECT and QROM circuits.
//!
//! Pauli terms are grouped into commuting, linearly independent sets; each
//! set is rotated onto single-qubit `Z` operators by a Clifford so that all
//! of its controlled gates run in one layer on fanned-out index copies.

pub mod circuits;
pub mod clifford;
pub mod error;
pub mod grouping;
pub mod io;
pub mod pauli;
pub mod pipeline;
pub mod resources;
pub mod sim;

pub use error::{Error, ErrorClass, Result};
pub use grouping::{
    filling_factor, partition_commuting, partition_parallel, partition_qrom_addresses,
    refine_independent, FillingReport, IdentityTerm, ParallelSet, Partition, QromPartition,
};
pub use pauli::{BitMatrix, BitVector, Observable, Pauli, PauliString, PauliTerm, Sign};
