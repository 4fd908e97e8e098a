//! Connectivity-aware re-synthesis of Clifford+T circuits.
//!
//! Hardware often allows a CNOT only between qubits joined by an edge of a
//! connectivity graph. This crate rewrites a circuit over
//! `{CNOT, H, T, T†, S, S†, X, Y, Z}` so that every CNOT is on an edge. It
//! re-synthesizes the CNOT structure with Steiner trees instead of inserting
//! SWAP chains.
//!
//! The building blocks:
//!
//! * [`circuit`]: gate lists, the text format and structural queries.
//! * [`topology`]: connectivity graphs, presets, BFS and Steiner trees.
//! * [`linalg`]: bit vectors, boolean matrices, affine transforms, parity
//!   matrices.
//! * [`linsynth`]: Steiner-guided Gaussian elimination of a linear
//!   reversible transform.
//! * [`phasepoly`]: path-sum extraction of phase polynomials and Hadamard
//!   slice records.
//! * [`phasesynth`]: Gray-code style parity-network synthesis on the graph.
//! * [`pipeline`]: the SWAP baseline and the two end-to-end optimizers.
//! * [`verify`]: replay, phase-polynomial and dense state-vector oracles.
//! * [`random`] and [`harness`]: seeded instances and the benchmark table.
//!
//! ```
//! use stsynth::{pipeline::cnot_opt_a, preset_graph, verify::equivalent_up_to_phase, Circuit};
//!
//! let c: Circuit = "qubits 9\nT 1\nCNOT 1 9\nH 9\nCNOT 9 1".parse().unwrap();
//! let g = preset_graph("9q-square").unwrap();
//! let (out, report) = cnot_opt_a(&c, &g).unwrap();
//! assert!(out.connectivity_violations(&g).is_empty());
//! assert!(equivalent_up_to_phase(&c, &out).unwrap());
//! assert_eq!(report.input_cnots, 2);
//! ```

pub mod circuit;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod linsynth;
pub mod phasepoly;
pub mod phasesynth;
pub mod pipeline;
pub mod random;
pub mod topology;
pub mod verify;

pub use circuit::{Circuit, Gate, GateKind};
pub use error::{Error, Result};
pub use linalg::{AugmentedLinearTransform, Bits, BoolMatrix, ParityColumn, ParityMatrix};
pub use linsynth::{linear_tf_synth, linear_tf_synth_traced, row_op, separate, RowOpMode, RowOpResult, SubTree};
pub use phasepoly::{extract_hfree, extract_sliced, AffineParity, HSliceRecord, PhasePolySet, PhaseTerm, QubitState};
pub use phasesynth::{phase_nw_synth, phase_nw_synth_with, PhaseSynthOptions, PhaseSynthResult, PivotRule, XPlacement};
pub use pipeline::{cnot_opt_a, cnot_opt_b, resynthesize, swap_template, Algorithm, ResynthesisReport};
pub use topology::{
    preset_graph, shortest_path, steiner_tree, ConnectivityGraph, SteinerTree, VertexSet, BENCHMARK_PRESETS,
    PRESET_NAMES,
};
pub use verify::{equivalent_up_to_phase, linear_action, phase_poly_equal};
