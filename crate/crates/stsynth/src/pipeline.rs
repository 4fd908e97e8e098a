//! End-to-end re-synthesis of Clifford+T circuits for a connectivity graph.
//!
//! * [`swap_template`]: the baseline. Each distant CNOT is routed by moving
//!   its control next to the target with SWAPs and moving it back afterwards.
//! * [`cnot_opt_a`]: cuts the circuit at every H. Each H-free slice is
//!   re-synthesized as a phase network followed by a linear fix-up.
//! * [`cnot_opt_b`]: extracts one phase polynomial over all path variables.
//!   Each term is synthesized in the last slice before the H that makes it
//!   uncomputable.
//!
//! A circuit on fewer qubits than the graph has vertices is widened first.
//! Qubit `i` is mapped to vertex `i`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::AugmentedLinearTransform;
use crate::linsynth::linear_tf_synth;
use crate::phasepoly::{extract_hfree_gates, extract_sliced, rebase, PhasePolySet, QubitState, SpanSolver};
use crate::phasesynth::phase_nw_synth_with;
use crate::topology::{shortest_path, ConnectivityGraph, VertexSet};

/// Re-synthesis strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Swap,
    OptA,
    OptB,
}

impl Algorithm {
    /// Every strategy.
    pub const ALL: [Algorithm; 3] = [Algorithm::Swap, Algorithm::OptA, Algorithm::OptB];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Swap => "swap",
            Algorithm::OptA => "opt-a",
            Algorithm::OptB => "opt-b",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm `{s}` (swap, opt-a, opt-b)")))
    }
}

/// CNOT counts and timing of one re-synthesis run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResynthesisReport {
    pub algorithm: Algorithm,
    pub input_cnots: usize,
    pub output_cnots: usize,
    /// `(output - input) / input × 100`; absent when the input has no CNOT.
    pub overhead_pct: Option<f64>,
    /// CNOTs emitted per slice (one slice per H plus the trailing one); a
    /// single entry for the SWAP template.
    pub slice_cnots: Vec<usize>,
    pub wall_time_s: f64,
}

impl ResynthesisReport {
    fn new(algorithm: Algorithm, input: &Circuit, output: &Circuit, slice_cnots: Vec<usize>, start: Instant) -> Self {
        let input_cnots = input.cnot_count();
        let output_cnots = output.cnot_count();
        ResynthesisReport {
            algorithm,
            input_cnots,
            output_cnots,
            overhead_pct: overhead_pct(input_cnots, output_cnots),
            slice_cnots,
            wall_time_s: start.elapsed().as_secs_f64(),
        }
    }

    /// Header of [`ResynthesisReport::tsv_row`].
    pub const TSV_HEADER: &'static str = "algorithm\tinput_cnots\toutput_cnots\toverhead_pct\twall_time_s";

    /// One tab-separated line (no newline).
    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{:.6}",
            self.algorithm,
            self.input_cnots,
            self.output_cnots,
            self.overhead_pct
                .map_or_else(|| "NA".to_string(), |p| format!("{p:.2}")),
            self.wall_time_s
        )
    }
}

/// Percentage increase of the CNOT count; `None` for a CNOT-free input.
pub fn overhead_pct(input: usize, output: usize) -> Option<f64> {
    (input > 0).then(|| (output as f64 - input as f64) / input as f64 * 100.0)
}

/// Copies `c` onto `n ≥ c.num_qubits()` qubits.
pub fn widen(c: &Circuit, n: usize) -> Result<Circuit> {
    if c.num_qubits() > n {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit circuit on a {n}-vertex graph",
            c.num_qubits()
        )));
    }
    Circuit::from_gates(n, c.gates().iter().copied())
}

fn push_swap(out: &mut Vec<Gate>, a: usize, b: usize) {
    out.extend([Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)]);
}

/// Routes every CNOT along a shortest path: SWAPs move the control to the
/// neighbour of the target, the CNOT is applied, and the SWAPs are undone.
/// A CNOT at distance `ℓ` costs `6(ℓ - 1) + 1` CNOTs.
pub fn swap_template(c: &Circuit, g: &ConnectivityGraph) -> Result<Circuit> {
    let n = g.num_vertices();
    let c = widen(c, n)?;
    let all = VertexSet::all(n);
    let mut out = Vec::with_capacity(c.len());
    for gate in c.gates() {
        let Some(ctrl) = gate.control else {
            out.push(*gate);
            continue;
        };
        if g.has_edge(ctrl, gate.target) {
            out.push(*gate);
            continue;
        }
        let path = shortest_path(g, ctrl, gate.target, &all)?;
        let hops = path.len() - 1;
        for k in 0..hops - 1 {
            push_swap(&mut out, path[k], path[k + 1]);
        }
        out.push(Gate::cnot(path[hops - 1], gate.target));
        for k in (0..hops - 1).rev() {
            push_swap(&mut out, path[k], path[k + 1]);
        }
    }
    Circuit::from_gates(n, out)
}

/// [`swap_template`] with a report.
pub fn swap_template_report(c: &Circuit, g: &ConnectivityGraph) -> Result<(Circuit, ResynthesisReport)> {
    let start = Instant::now();
    let out = swap_template(c, g)?;
    let report = ResynthesisReport::new(Algorithm::Swap, c, &out, vec![out.cnot_count()], start);
    Ok((out, report))
}

/// Synthesizes `poly` (expressed over the wires) followed by the {CNOT, X}
/// circuit that brings the wires to `target` (also over the wires).
fn synth_block(
    poly: &crate::linalg::ParityMatrix,
    target: &AugmentedLinearTransform,
    g: &ConnectivityGraph,
    out: &mut Vec<Gate>,
) -> Result<usize> {
    let ph = phase_nw_synth_with(poly, g, Default::default())?;
    let fix = ph.residual.inverse()?.then(target)?;
    let lin = linear_tf_synth(&fix, g)?;
    let count = ph.circuit.cnot_count() + lin.cnot_count();
    out.extend_from_slice(ph.circuit.gates());
    out.extend_from_slice(lin.gates());
    Ok(count)
}

/// Re-synthesizes every H-free slice independently.
pub fn cnot_opt_a(c: &Circuit, g: &ConnectivityGraph) -> Result<(Circuit, ResynthesisReport)> {
    let start = Instant::now();
    let n = g.num_vertices();
    let wide = widen(c, n)?;
    let (slices, hs) = wide.h_slices();
    let identity = QubitState::initial(n, n);
    let mut out = Vec::new();
    let mut counts = Vec::with_capacity(slices.len());
    for (k, slice) in slices.iter().enumerate() {
        let (poly, state) = extract_hfree_gates(n, slice)?;
        let target = state.to_transform()?;
        if poly.is_empty() && target.is_identity() {
            counts.push(0);
        } else {
            counts.push(synth_block(&rebase(&poly, &identity)?, &target, g, &mut out)?);
        }
        if let Some(h) = hs.get(k) {
            out.push(*h);
        }
    }
    let out = Circuit::from_gates(n, out)?;
    let report = ResynthesisReport::new(Algorithm::OptA, c, &out, counts, start);
    Ok((out, report))
}

/// Synthesizes each phase term just before the H that would make it
/// uncomputable, from one global phase polynomial.
pub fn cnot_opt_b(c: &Circuit, g: &ConnectivityGraph) -> Result<(Circuit, ResynthesisReport)> {
    let start = Instant::now();
    let n = g.num_vertices();
    let wide = widen(c, n)?;
    let (mut poly, q_out, records) = extract_sliced(&wide)?;
    let mut q_init = QubitState::initial(n, n + records.len());
    let mut out = Vec::new();
    let mut counts = Vec::with_capacity(records.len() + 1);
    let block = |terms: &PhasePolySet, from: &QubitState, to: &QubitState, out: &mut Vec<Gate>| -> Result<usize> {
        let target = from.transform_to(to)?;
        if terms.is_empty() && target.is_identity() {
            return Ok(0);
        }
        synth_block(&rebase(terms, from)?, &target, g, out)
    };
    for h in &records {
        let before = SpanSolver::new(h.q_in.wires().iter().map(|w| &w.linear));
        let after = SpanSolver::new(h.q_out.wires().iter().map(|w| &w.linear));
        let leaving = poly.take_matching(|f| before.contains(&f.linear) && !after.contains(&f.linear));
        counts.push(block(&leaving, &q_init, &h.q_in, &mut out)?);
        out.push(Gate::single(GateKind::H, h.pos));
        q_init = h.q_out.clone();
    }
    counts.push(block(&poly, &q_init, &q_out, &mut out)?);
    let out = Circuit::from_gates(n, out)?;
    let report = ResynthesisReport::new(Algorithm::OptB, c, &out, counts, start);
    Ok((out, report))
}

/// Runs the chosen strategy.
pub fn resynthesize(c: &Circuit, g: &ConnectivityGraph, algorithm: Algorithm) -> Result<(Circuit, ResynthesisReport)> {
    match algorithm {
        Algorithm::Swap => swap_template_report(c, g),
        Algorithm::OptA => cnot_opt_a(c, g),
        Algorithm::OptB => cnot_opt_b(c, g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::preset_graph;
    use crate::verify::equivalent_up_to_phase;

    fn circuit(text: &str) -> Circuit {
        Circuit::parse(text).unwrap()
    }

    #[test]
    fn adjacent_cnot_is_kept() {
        let g = preset_graph("9q-square").unwrap();
        let out = swap_template(&circuit("qubits 9\nCNOT 1 2"), &g).unwrap();
        assert_eq!(out.gates(), &[Gate::cnot(1, 2)]);
    }

    #[test]
    fn distant_cnot_costs_six_per_extra_hop() {
        let g = preset_graph("9q-square").unwrap();
        let c = circuit("qubits 9\nCNOT 1 9");
        let out = swap_template(&c, &g).unwrap();
        assert_eq!(out.cnot_count(), 19);
        assert!(out.connectivity_violations(&g).is_empty());
        assert!(equivalent_up_to_phase(&c, &out).unwrap());
    }

    #[test]
    fn empty_slices_emit_nothing() {
        let g = preset_graph("9q-square").unwrap();
        let (out, report) = cnot_opt_a(&Circuit::new(9), &g).unwrap();
        assert!(out.is_empty());
        assert_eq!(report.overhead_pct, None);
        let (out, _) = cnot_opt_a(&circuit("qubits 9\nH 1"), &g).unwrap();
        assert_eq!(out.gates(), &[Gate::single(GateKind::H, 1)]);
        let (out, _) = cnot_opt_b(&circuit("qubits 9\nH 1"), &g).unwrap();
        assert_eq!(out.gates(), &[Gate::single(GateKind::H, 1)]);
    }

    #[test]
    fn t_is_placed_before_the_hadamard() {
        let g = preset_graph("9q-square").unwrap();
        let (out, _) = cnot_opt_b(&circuit("qubits 9\nT 1\nH 1"), &g).unwrap();
        assert_eq!(
            out.gates(),
            &[Gate::single(GateKind::T, 1), Gate::single(GateKind::H, 1)]
        );
    }

    #[test]
    fn opt_b_matches_opt_a_without_hadamards() {
        let g = preset_graph("9q-square").unwrap();
        let c = circuit("qubits 9\nCNOT 1 5\nT 5\nX 2\nCNOT 2 9\nS 9\nCNOT 5 1\nTDG 1");
        let (a, _) = cnot_opt_a(&c, &g).unwrap();
        let (b, _) = cnot_opt_b(&c, &g).unwrap();
        assert_eq!(a, b);
        assert!(equivalent_up_to_phase(&c, &a).unwrap());
    }

    #[test]
    fn report_arithmetic() {
        assert_eq!(overhead_pct(10, 25), Some(150.0));
        assert_eq!(overhead_pct(4, 4), Some(0.0));
        assert_eq!(overhead_pct(0, 3), None);
        assert_eq!("opt-b".parse::<Algorithm>().unwrap(), Algorithm::OptB);
        assert!("opt-c".parse::<Algorithm>().is_err());
    }
}
