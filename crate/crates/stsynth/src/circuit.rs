//! Circuit representation over the gate set {CNOT, H, T, T†, S, S†, X, Y, Z},
//! its text format, and structural queries.
//!
//! Qubits are 1-indexed everywhere. The text format is:
//!
//! ```text
//! # comment
//! qubits 3
//! H 1
//! CNOT 1 2
//! TDG 3
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::strip_comment;
use crate::topology::ConnectivityGraph;

/// Gate kinds of the supported gate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Cnot,
    H,
    T,
    Tdg,
    S,
    Sdg,
    X,
    Y,
    Z,
}

impl GateKind {
    /// Every kind, in a fixed order.
    pub const ALL: [GateKind; 9] = [
        GateKind::Cnot,
        GateKind::H,
        GateKind::T,
        GateKind::Tdg,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
    ];

    /// Canonical file name of the gate.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot => "CNOT",
            GateKind::H => "H",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
        }
    }

    /// Looks up a kind by (case-insensitive) name.
    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }

    /// The Z8 phase coefficient contributed to the parity on the gate's
    /// wire, for the diagonal-phase part of the gate (T = 1, T† = 7, S = 2,
    /// S† = 6, Z = 4, Y = 4). `None` for gates without a phase.
    pub fn phase_coefficient(self) -> Option<u8> {
        match self {
            GateKind::T => Some(1),
            GateKind::Tdg => Some(7),
            GateKind::S => Some(2),
            GateKind::Sdg => Some(6),
            GateKind::Z | GateKind::Y => Some(4),
            _ => None,
        }
    }

    /// Diagonal phase gates whose coefficients sum to `coeff` mod 8, using
    /// the fewest T-type gates.
    pub fn for_coefficient(coeff: u8) -> &'static [GateKind] {
        match coeff % 8 {
            0 => &[],
            1 => &[GateKind::T],
            2 => &[GateKind::S],
            3 => &[GateKind::S, GateKind::T],
            4 => &[GateKind::Z],
            5 => &[GateKind::Z, GateKind::T],
            6 => &[GateKind::Sdg],
            _ => &[GateKind::Tdg],
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One gate: `control` is present exactly for CNOT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub control: Option<usize>,
    pub target: usize,
}

impl Gate {
    /// `CNOT(control, target)`.
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::Cnot,
            control: Some(control),
            target,
        }
    }

    /// A single-qubit gate. Panics if `kind` is CNOT.
    pub fn single(kind: GateKind, qubit: usize) -> Gate {
        assert!(kind != GateKind::Cnot, "CNOT needs a control qubit");
        Gate {
            kind,
            control: None,
            target: qubit,
        }
    }

    /// True for a CNOT.
    pub fn is_cnot(&self) -> bool {
        self.kind == GateKind::Cnot
    }

    /// The qubits the gate touches.
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        self.control.into_iter().chain(std::iter::once(self.target))
    }

    /// Checks the structural invariants against a register of `n` qubits.
    pub fn validate(&self, n: usize) -> Result<()> {
        match (self.kind, self.control) {
            (GateKind::Cnot, None) => return Err(Error::InvalidGate("CNOT without control".into())),
            (GateKind::Cnot, Some(c)) if c == self.target => {
                return Err(Error::InvalidGate(format!("CNOT with control == target == {c}")))
            }
            (k, Some(_)) if k != GateKind::Cnot => {
                return Err(Error::InvalidGate(format!("{k} cannot have a control")))
            }
            _ => {}
        }
        for q in self.qubits() {
            if q == 0 || q > n {
                return Err(Error::IndexOutOfRange { index: q, bound: n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.control {
            Some(c) => write!(f, "{} {} {}", self.kind, c, self.target),
            None => write!(f, "{} {}", self.kind, self.target),
        }
    }
}

/// An ordered gate list on `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit, validating every gate.
    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// Appends a gate after validating it.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other` (which must have the same width).
    pub fn extend_from(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "appending a {}-qubit circuit to a {}-qubit circuit",
                other.num_qubits, self.num_qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// The gates in order.
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of gates.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    /// True if the circuit has no gates.
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of gates of the given kind.
    pub fn count_gates(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Number of CNOT gates.
    pub fn cnot_count(&self) -> usize {
        self.count_gates(GateKind::Cnot)
    }

    /// Every CNOT whose qubits are not adjacent in `g`, as
    /// `(gate index, control, target)` in circuit order.
    pub fn connectivity_violations(&self, g: &ConnectivityGraph) -> Vec<(usize, usize, usize)> {
        self.gates
            .iter()
            .enumerate()
            .filter_map(|(i, gate)| {
                let c = gate.control?;
                (!g.has_edge(c, gate.target)).then_some((i, c, gate.target))
            })
            .collect()
    }

    /// Parses the circuit text format.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parse_index = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a qubit index, found `{tok}`"),
                })
            };
            let Some(c) = circuit.as_mut() else {
                if toks.len() != 2 || toks[0] != "qubits" {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected header `qubits <n>`".into(),
                    });
                }
                let n = parse_index(toks[1])?;
                if n == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "qubit count must be positive".into(),
                    });
                }
                circuit = Some(Circuit::new(n));
                continue;
            };
            let kind = GateKind::from_name(toks[0]).ok_or_else(|| Error::UnknownGate {
                line: line_no,
                name: toks[0].to_string(),
            })?;
            let arity = if kind == GateKind::Cnot { 3 } else { 2 };
            if toks.len() != arity {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("{kind} takes {} qubit argument(s)", arity - 1),
                });
            }
            let gate = if kind == GateKind::Cnot {
                Gate::cnot(parse_index(toks[1])?, parse_index(toks[2])?)
            } else {
                Gate::single(kind, parse_index(toks[1])?)
            };
            c.push(gate).map_err(|e| match e {
                Error::IndexOutOfRange { .. } | Error::InvalidGate(_) => Error::Parse {
                    line: line_no,
                    message: e.to_string(),
                },
                other => other,
            })?;
        }
        circuit.ok_or(Error::Parse {
            line: 0,
            message: "missing header `qubits <n>`".into(),
        })
    }

    /// Splits the circuit at its H gates: returns the H-free slices (one more
    /// than the number of H gates) and the H gates in order.
    pub fn h_slices(&self) -> (Vec<Vec<Gate>>, Vec<Gate>) {
        let mut slices = vec![Vec::new()];
        let mut hs = Vec::new();
        for g in &self.gates {
            if g.kind == GateKind::H {
                hs.push(*g);
                slices.push(Vec::new());
            } else {
                slices.last_mut().expect("non-empty").push(*g);
            }
        }
        (slices, hs)
    }
}

impl fmt::Display for Circuit {
    /// Canonical text form; `parse` inverts it exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.num_qubits)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Circuit> {
        Circuit::parse(s)
    }
}
