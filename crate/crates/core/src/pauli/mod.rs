//! Pauli operators in symplectic binary form and the GF(2) linear algebra
//! shared by the rest of the crate.

pub mod bits;
mod observable;
mod string;

pub use bits::{
    gauss_jordan, gf2_rank, independent_extend, solve, BitMatrix, BitVector, Extension,
    IndependentBasis, Reduction, RowOp,
};
pub use observable::{IngestStats, Observable, PauliTerm, DROP_THRESHOLD};
pub use string::{multiply, symplectic_product, Pauli, PauliString, Sign};
