//! Clifford tableaux, diagonalizing synthesis, staged normal form and the
//! constant-depth execution cost model.

mod cost;
mod normal_form;
mod synth;
mod tableau;

pub use cost::{constant_depth_cost, constant_depth_cost_with, ConstantDepthCost, DEFAULT_D_STAGE};
pub use normal_form::{normal_form_stages, replay, Stage, StageKind, StagedCircuit, STAGE_ORDER};
pub use synth::{audit_parallel_set, synth_diagonalizing_clifford, Diagonalization};
pub use tableau::{conjugate_through, tableau_from_circuit, tableau_from_gates, CliffordTableau};
