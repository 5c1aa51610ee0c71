//! Gate-level circuit IR, scheduling and SELECT/QROM builders.

mod fanout;
mod gate;
mod hamming;
mod qrom;
mod schedule;
mod select;
mod text;

pub use fanout::{build_fanout, fanout_gates};
pub use gate::{Circuit, Control, Gate, GateKind, Mcp, Polarity, Register};
pub use hamming::{
    build_hamming_flag, hamming_flag_gates, hamming_workspace, HammingFlag, HAMMING_DEPTH_OFFSET,
    HAMMING_DEPTH_PER_LEVEL,
};
pub use qrom::{
    build_qrom_parallel, build_qrom_serial, diagonalize_controls, ControlDiagonalization, QromTable,
};
pub use schedule::{schedule_layers, LayerSchedule};
pub use select::{
    build_select_parallel, build_select_parallel_with, build_select_serial, index_width,
    synthesize_partition,
};
pub use text::{emit_circuit, emit_staged, parse_circuit, parse_staged};
