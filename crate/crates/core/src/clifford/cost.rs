use serde::{Deserialize, Serialize};

use crate::clifford::normal_form::StagedCircuit;

/// Depth charged per two-qubit stage executed by teleportation: one
/// transversal entangling round, measurement, feedforward correction and
/// resource-state handoff. Resource-state regeneration is folded in here.
pub const DEFAULT_D_STAGE: usize = 4;

/// Constant-depth execution model for a staged Clifford.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ConstantDepthCost {
    pub ancilla_qubits: usize,
    pub depth_units: usize,
    pub resource_state_count: usize,
}

pub fn constant_depth_cost(staged: &StagedCircuit, n: usize) -> ConstantDepthCost {
    constant_depth_cost_with(staged, n, DEFAULT_D_STAGE)
}

pub fn constant_depth_cost_with(
    staged: &StagedCircuit,
    n: usize,
    d_stage: usize,
) -> ConstantDepthCost {
    let two = staged
        .stages()
        .iter()
        .filter(|s| s.kind.is_two_qubit() && !s.gates.is_empty())
        .count();
    let one = staged
        .stages()
        .iter()
        .filter(|s| !s.kind.is_two_qubit() && !s.gates.is_empty())
        .count();
    ConstantDepthCost {
        ancilla_qubits: 3 * n,
        depth_units: d_stage * two + one,
        resource_state_count: two,
    }
}
