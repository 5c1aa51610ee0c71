use crate::circuits::gate::Circuit;

/// As-soon-as-possible layering of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSchedule {
    /// Gate indices per layer, in original order within a layer.
    pub layers: Vec<Vec<usize>>,
    pub depth: usize,
    /// Number of layers holding at least one T-bearing gate.
    pub t_layers: usize,
    /// Longest chain of T-bearing gates along qubit dependencies. Clifford
    /// gates pass dependencies on without adding to the count.
    pub t_depth: usize,
}

pub fn schedule_layers(c: &Circuit) -> LayerSchedule {
    let n = c.n_qubits();
    let mut ready = vec![0usize; n];
    let mut t_level = vec![0usize; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut t_in_layer: Vec<bool> = Vec::new();
    let mut t_depth = 0;
    for (i, g) in c.gates().iter().enumerate() {
        let qs = g.qubits();
        let layer = qs.iter().map(|&q| ready[q]).max().unwrap_or(0);
        let mut level = qs.iter().map(|&q| t_level[q]).max().unwrap_or(0);
        if g.is_t_bearing() {
            level += 1;
            t_depth = t_depth.max(level);
        }
        for &q in &qs {
            ready[q] = layer + 1;
            t_level[q] = level;
        }
        if layer == layers.len() {
            layers.push(Vec::new());
            t_in_layer.push(false);
        }
        layers[layer].push(i);
        t_in_layer[layer] |= g.is_t_bearing();
    }
    LayerSchedule {
        depth: layers.len(),
        t_layers: t_in_layer.iter().filter(|&&t| t).count(),
        t_depth,
        layers,
    }
}
