//! Connectivity-aware synthesis of phase-polynomial networks: a Gray-code
//! style cofactor recursion whose CNOTs follow Steiner trees.
//!
//! The parity columns are split recursively on pivot rows. A frame
//! `(B, I, i)` holds the columns `B`, the rows `I` not yet used as pivots,
//! and the target wire `i` (unset until the columns first land in a
//! 1-cofactor). When a frame with a target is popped, the rows other than
//! `i` on which every column of `B` has a 1 are folded into wire `i` along a
//! Steiner tree, using the flipped-path row operation. Every live column that
//! becomes a single 1 on some wire `k` is realized there: the phase gate for
//! its coefficient goes on wire `k`, preceded by an X when the constant
//! currently carried by the wire differs from the column's bit-flip bit.

use std::collections::BTreeSet;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{AugmentedLinearTransform, Bits, BoolMatrix, ParityMatrix};
use crate::linsynth::{row_op, RowOpMode};
use crate::phasepoly::{AffineParity, QubitState};
use crate::topology::{steiner_tree, ConnectivityGraph, VertexSet};

/// Pivot-row selection rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Prefer rows that split the columns, taking the one with the most 1s;
    /// if no row splits, take the row with the most 1s. Ties go to the
    /// smallest row.
    #[default]
    Splitting,
    /// The row with the largest cofactor (`max(#0, #1)`), smallest row on
    /// ties.
    LargestCofactor,
}

/// How X gates are placed in front of a realized phase gate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XPlacement {
    /// Compare the column's bit-flip bit with the constant the wire really
    /// carries (X gates propagate through later CNOTs).
    #[default]
    WireTracked,
    /// Place an X exactly when the column's bit-flip bit is set, ignoring
    /// the wire's constant. Kept for comparison; not sound in general.
    BitflipOnly,
}

/// Options of [`phase_nw_synth_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseSynthOptions {
    pub pivot: PivotRule,
    pub x_placement: XPlacement,
}

/// Stack entry `(B, I, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorFrame {
    /// Column indices into the parity matrix.
    pub columns: Vec<usize>,
    /// Rows (1-based) not yet used as pivots.
    pub rows: BTreeSet<usize>,
    /// Target wire, once assigned.
    pub target: Option<usize>,
}

/// Picks the pivot row of `frame` from the working matrix `m` (row `k - 1`
/// for wire `k`). Returns `None` when `frame.rows` is empty.
pub fn select_pivot(m: &BoolMatrix, frame: &CofactorFrame, rule: PivotRule) -> Option<usize> {
    let size = frame.columns.len();
    let ones = |j: usize| frame.columns.iter().filter(|&&c| m.get(j - 1, c)).count();
    match rule {
        PivotRule::Splitting => {
            let best = |rows: &mut dyn Iterator<Item = usize>| {
                rows.map(|j| (ones(j), j))
                    .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                    .map(|(_, j)| j)
            };
            let mut splitting = frame.rows.iter().copied().filter(|&j| {
                let o = ones(j);
                o > 0 && o < size
            });
            best(&mut splitting).or_else(|| best(&mut frame.rows.iter().copied()))
        }
        PivotRule::LargestCofactor => frame
            .rows
            .iter()
            .map(|&j| {
                let o = ones(j);
                (o.max(size - o), j)
            })
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, j)| j),
    }
}

/// The affine parity carried by every wire, updated gate by gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireParityTrace {
    wires: Vec<AffineParity>,
}

impl WireParityTrace {
    /// Wire `k` carries `x_k`.
    pub fn new(n: usize) -> Self {
        WireParityTrace {
            wires: QubitState::initial(n, n).wires().to_vec(),
        }
    }

    /// Applies a CNOT or X gate; other gates leave the parities unchanged.
    pub fn apply(&mut self, gate: &Gate) {
        match gate.kind {
            GateKind::Cnot => {
                let c = self.wires[gate.control.expect("CNOT has a control") - 1].clone();
                self.wires[gate.target - 1].xor_assign(&c);
            }
            GateKind::X | GateKind::Y => self.wires[gate.target - 1].constant ^= true,
            _ => {}
        }
    }

    /// Parity of wire `k` (1-based).
    pub fn wire(&self, k: usize) -> &AffineParity {
        &self.wires[k - 1]
    }

    /// The current state as an affine transform.
    pub fn to_transform(&self) -> AugmentedLinearTransform {
        QubitState::from_wires(self.wires.clone())
            .to_transform()
            .expect("one variable per wire")
    }
}

/// A column realized on a wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Column index into the parity matrix (0-based).
    pub column: usize,
    /// Wire carrying the parity (1-based).
    pub wire: usize,
    /// The gates placed: an optional X, then the phase gates.
    pub gates: Vec<Gate>,
}

/// What happened when one frame was popped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationLog {
    /// 1-based iteration number (one per pop).
    pub iteration: usize,
    /// The popped frame.
    pub frame: CofactorFrame,
    /// Steiner terminals folded into the target (empty if none).
    pub terminals: Vec<usize>,
    /// CNOTs emitted.
    pub cnots: Vec<Gate>,
    /// Columns realized after the CNOTs.
    pub realized: Vec<Realization>,
    /// Pivot row chosen, if the frame was split.
    pub pivot: Option<usize>,
    /// The working matrix after this iteration (all columns, realized ones
    /// included).
    pub matrix: BoolMatrix,
}

/// Output of [`phase_nw_synth_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSynthResult {
    /// The synthesized circuit.
    pub circuit: Circuit,
    /// The {CNOT, X} action of the circuit: wire parities at its end.
    pub residual: AugmentedLinearTransform,
    /// Single-variable columns realized before the recursion.
    pub upfront: Vec<Realization>,
    /// One entry per popped frame.
    pub iterations: Vec<IterationLog>,
    /// Columns realized by the final per-column pass (only when the
    /// recursion exhausted its pivot rows with columns left).
    pub completion: Vec<Realization>,
}

/// Synthesizes a phase-polynomial network for `p` on `g` with the default
/// options and returns the circuit.
pub fn phase_nw_synth(p: &ParityMatrix, g: &ConnectivityGraph) -> Result<Circuit> {
    phase_nw_synth_with(p, g, PhaseSynthOptions::default()).map(|r| r.circuit)
}

struct Synth<'a> {
    g: &'a ConnectivityGraph,
    p: &'a ParityMatrix,
    opts: PhaseSynthOptions,
    m: BoolMatrix,
    live: Vec<bool>,
    wires: WireParityTrace,
    gates: Vec<Gate>,
}

impl Synth<'_> {
    fn emit(&mut self, gate: Gate) {
        self.wires.apply(&gate);
        self.gates.push(gate);
    }

    fn realize(&mut self, column: usize, wire: usize) -> Realization {
        let col = &self.p.columns()[column];
        let needs_x = match self.opts.x_placement {
            XPlacement::WireTracked => self.wires.wire(wire).constant != col.bitflip,
            XPlacement::BitflipOnly => col.bitflip,
        };
        let mut placed = Vec::new();
        if needs_x {
            placed.push(Gate::single(GateKind::X, wire));
        }
        for &kind in GateKind::for_coefficient(col.coeff) {
            placed.push(Gate::single(kind, wire));
        }
        for &gate in &placed {
            self.emit(gate);
        }
        self.live[column] = false;
        Realization {
            column,
            wire,
            gates: placed,
        }
    }

    /// Realizes every live column that is a single 1.
    fn realize_ready(&mut self) -> Vec<Realization> {
        let mut out = Vec::new();
        for c in 0..self.live.len() {
            if !self.live[c] {
                continue;
            }
            let col = self.m.column(c);
            if col.count_ones() == 1 {
                let k = col.first_one().expect("one bit set") + 1;
                out.push(self.realize(c, k));
            }
        }
        out
    }

    /// Folds `terminals \ {root}` into `root` along a Steiner tree.
    fn fold(&mut self, root: usize, terminals: &BTreeSet<usize>) -> Result<Vec<Gate>> {
        let everything = VertexSet::all(self.g.num_vertices());
        let tree = steiner_tree(self.g, &everything, terminals, root)?;
        let ops = row_op(&mut self.m, &tree, RowOpMode::Flipped)?;
        for &gate in &ops.cnots {
            self.emit(gate);
        }
        Ok(ops.cnots)
    }
}

/// Synthesizes a phase-polynomial network for `p` on `g`.
///
/// A matrix over fewer wires than `g` has vertices is padded with zero rows;
/// the circuit always has one qubit per vertex. Every CNOT lies on an edge
/// of `g`, and every column is realized exactly once.
pub fn phase_nw_synth_with(
    p: &ParityMatrix,
    g: &ConnectivityGraph,
    opts: PhaseSynthOptions,
) -> Result<PhaseSynthResult> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if p.n() > n {
        return Err(Error::DimensionMismatch(format!(
            "{}-wire parity matrix on a {n}-vertex graph",
            p.n()
        )));
    }
    let padded;
    let p = if p.n() < n {
        padded = ParityMatrix::new(n, p.terms().map(|(c, bits, f)| (c, bits.resized(n), f)))?;
        &padded
    } else {
        p
    };
    let cols = p.len();
    let mut m = BoolMatrix::zeros(n, cols);
    for (c, col) in p.columns().iter().enumerate() {
        for k in col.parity.ones() {
            m.set(k, c, true);
        }
    }
    let mut s = Synth {
        g,
        p,
        opts,
        m,
        live: vec![true; cols],
        wires: WireParityTrace::new(n),
        gates: Vec::new(),
    };

    let upfront = s.realize_ready();

    let mut iterations = Vec::new();
    let mut completion = Vec::new();
    let mut stack: Vec<CofactorFrame> = Vec::new();
    let first: Vec<usize> = (0..cols).filter(|&c| s.live[c]).collect();
    if !first.is_empty() {
        stack.push(CofactorFrame {
            columns: first,
            rows: (1..=n).collect(),
            target: None,
        });
    }
    while let Some(frame) = stack.pop() {
        let mut log = IterationLog {
            iteration: iterations.len() + 1,
            frame: frame.clone(),
            terminals: Vec::new(),
            cnots: Vec::new(),
            realized: Vec::new(),
            pivot: None,
            matrix: BoolMatrix::zeros(0, 0),
        };
        let mut b: Vec<usize> = frame.columns.iter().copied().filter(|&c| s.live[c]).collect();
        if let (Some(i), false) = (frame.target, b.is_empty()) {
            let shared: BTreeSet<usize> = (1..=n)
                .filter(|&k| k != i && b.iter().all(|&c| s.m.get(k - 1, c)))
                .collect();
            if !shared.is_empty() {
                let mut terminals = shared;
                terminals.insert(i);
                log.terminals = terminals.iter().copied().collect();
                log.cnots = s.fold(i, &terminals)?;
                log.realized = s.realize_ready();
                b.retain(|&c| s.live[c]);
            }
        }
        if !b.is_empty() {
            let current = CofactorFrame {
                columns: b,
                rows: frame.rows.clone(),
                target: frame.target,
            };
            match select_pivot(&s.m, &current, opts.pivot) {
                Some(j) => {
                    log.pivot = Some(j);
                    let (b1, b0): (Vec<usize>, Vec<usize>) = current.columns.iter().partition(|&&c| s.m.get(j - 1, c));
                    let mut rows = current.rows.clone();
                    rows.remove(&j);
                    if !b1.is_empty() {
                        stack.push(CofactorFrame {
                            columns: b1,
                            rows: rows.clone(),
                            target: Some(frame.target.unwrap_or(j)),
                        });
                    }
                    if !b0.is_empty() {
                        stack.push(CofactorFrame {
                            columns: b0,
                            rows,
                            target: frame.target,
                        });
                    }
                }
                None => {
                    // Every pivot row is used up: realize the remaining
                    // columns one at a time.
                    for c in current.columns {
                        if !s.live[c] {
                            continue;
                        }
                        let col = s.m.column(c);
                        let root = frame
                            .target
                            .filter(|&i| col.get(i - 1))
                            .unwrap_or_else(|| col.first_one().expect("non-zero column") + 1);
                        let terminals: BTreeSet<usize> = col.ones().map(|k| k + 1).collect();
                        let cnots = s.fold(root, &terminals)?;
                        log.cnots.extend(cnots);
                        completion.extend(s.realize_ready());
                    }
                }
            }
        }
        log.matrix = s.m.clone();
        iterations.push(log);
    }
    debug_assert!(s.live.iter().all(|&l| !l), "every column is realized");

    let residual = s.wires.to_transform();
    let circuit = Circuit::from_gates(n, s.gates)?;
    Ok(PhaseSynthResult {
        circuit,
        residual,
        upfront,
        iterations,
        completion,
    })
}

/// The columns of `m` selected by `columns`, as a new matrix.
pub fn select_columns(m: &BoolMatrix, columns: &[usize]) -> BoolMatrix {
    let rows: Vec<Bits> = (0..m.num_rows())
        .map(|r| Bits::from_bools(&columns.iter().map(|&c| m.get(r, c)).collect::<Vec<_>>()))
        .collect();
    BoolMatrix::from_bits(columns.len(), rows).expect("consistent widths")
}
