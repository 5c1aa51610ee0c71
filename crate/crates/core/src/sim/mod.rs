//! Verification engines: dense statevector simulation, classical basis-state
//! simulation and serial/parallel equivalence checks.

mod basis;
mod equivalence;
mod statevector;

pub use basis::{qrom_readout, simulate_basis};
pub use equivalence::{
    circuits_equivalent, matrices_equal_up_to_phase, restricted_unitary, EquivalenceConfig,
    EquivalenceVerdict,
};
pub use statevector::{apply_circuit, StateVector, DEFAULT_QUBIT_CAP};
