//! Sum-over-paths bookkeeping for circuits over {CNOT, H, T, T†, S, S†, X,
//! Y, Z}.
//!
//! Every wire carries an affine parity of path variables. Original qubits
//! contribute `x1..xn`, and the `j`-th Hadamard introduces `x(n+j)`. Diagonal
//! phase gates add weighted parities to a phase polynomial over Z8:
//!
//! * `CNOT(c, t)`: `q_t ← q_t ⊕ q_c`;
//! * `X(i)`: flips the constant of `q_i`;
//! * `T, T†, S, S†, Z` on `i`: adds `(1|7|2|6|4, q_i)`;
//! * `Y(i)`: adds `(4, q_i)`, then flips the constant of `q_i`;
//! * `H(i)`: `q_i ←` the next fresh variable. A record of the states before
//!   and after is kept.
//!
//! Adding a term merges it with an existing equal parity (coefficients add
//! mod 8; a zero coefficient removes the term).

use std::fmt;

use indexmap::IndexMap;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{AugmentedLinearTransform, Bits, BoolMatrix, ParityMatrix};

/// An affine parity `c ⊕ Σ x_k` over a fixed number of path variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineParity {
    /// Linear part, one bit per path variable.
    pub linear: Bits,
    /// Constant term.
    pub constant: bool,
}

impl AffineParity {
    /// The variable `x_(index+1)` over `vars` variables.
    pub fn variable(vars: usize, index: usize) -> Self {
        AffineParity {
            linear: Bits::unit(vars, index),
            constant: false,
        }
    }

    /// Builds a parity from its parts.
    pub fn new(linear: Bits, constant: bool) -> Self {
        AffineParity { linear, constant }
    }

    /// Number of path variables.
    pub fn num_vars(&self) -> usize {
        self.linear.len()
    }

    /// `self ⊕ other`.
    pub fn xor_assign(&mut self, other: &AffineParity) {
        self.linear.xor_assign(&other.linear);
        self.constant ^= other.constant;
    }

    /// Value of the parity at an assignment of the path variables.
    pub fn eval(&self, assignment: &Bits) -> bool {
        self.linear.dot(assignment) ^ self.constant
    }

    /// Copy over a different number of variables (padding with zeros).
    pub fn resized(&self, vars: usize) -> AffineParity {
        AffineParity {
            linear: self.linear.resized(vars),
            constant: self.constant,
        }
    }
}

impl fmt::Display for AffineParity {
    /// `1 ⊕ x1 ⊕ x4`; the zero parity prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.constant {
            parts.push("1".into());
        }
        parts.extend(self.linear.ones().map(|k| format!("x{}", k + 1)));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

impl fmt::Debug for AffineParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One `(coefficient, parity)` term of a phase polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseTerm {
    /// Coefficient in 1..=7.
    pub coeff: u8,
    /// The parity.
    pub parity: AffineParity,
}

/// A phase polynomial: terms keyed by parity, in first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhasePolySet {
    terms: IndexMap<AffineParity, u8>,
}

impl PhasePolySet {
    /// The empty polynomial.
    pub fn new() -> Self {
        PhasePolySet::default()
    }

    /// Adds `(coeff, parity)` with merge semantics. Terms whose linear part
    /// vanishes are a global phase and are dropped.
    pub fn add(&mut self, coeff: u8, parity: AffineParity) {
        let coeff = coeff % 8;
        if coeff == 0 || parity.linear.is_zero() {
            return;
        }
        let entry = self.terms.entry(parity).or_insert(0);
        *entry = (*entry + coeff) % 8;
        if *entry == 0 {
            // Keep the remaining terms in their original order.
            self.terms.retain(|_, c| *c != 0);
        }
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True if there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a parity (0 if absent).
    pub fn coefficient(&self, parity: &AffineParity) -> u8 {
        self.terms.get(parity).copied().unwrap_or(0)
    }

    /// Terms in first-appearance order.
    pub fn terms(&self) -> impl Iterator<Item = PhaseTerm> + '_ {
        self.terms.iter().map(|(p, &c)| PhaseTerm {
            coeff: c,
            parity: p.clone(),
        })
    }

    /// Removes and returns every term matching `pred`, in order.
    pub fn take_matching(&mut self, mut pred: impl FnMut(&AffineParity) -> bool) -> PhasePolySet {
        let mut taken = PhasePolySet::new();
        self.terms.retain(|p, c| {
            if pred(p) {
                taken.terms.insert(p.clone(), *c);
                false
            } else {
                true
            }
        });
        taken
    }

    /// Equivalent polynomial up to a global phase with every constant
    /// cleared: `(c, 1 ⊕ f)` becomes `(8 - c, f)`. Terms are sorted by
    /// parity, so equal polynomials compare equal.
    pub fn canonical(&self) -> PhasePolySet {
        let mut out = PhasePolySet::new();
        for t in self.terms() {
            if t.parity.constant {
                out.add(8 - t.coeff, AffineParity::new(t.parity.linear, false));
            } else {
                out.add(t.coeff, t.parity);
            }
        }
        out.terms.sort_keys();
        out
    }

    /// Writes one `<c> : <parity>` line per term.
    pub fn dump(&self) -> String {
        self.terms().map(|t| format!("{} : {}\n", t.coeff, t.parity)).collect()
    }
}

impl FromIterator<PhaseTerm> for PhasePolySet {
    fn from_iter<I: IntoIterator<Item = PhaseTerm>>(iter: I) -> Self {
        let mut s = PhasePolySet::new();
        for t in iter {
            s.add(t.coeff, t.parity);
        }
        s
    }
}

/// The parity carried by each wire.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitState {
    wires: Vec<AffineParity>,
}

impl QubitState {
    /// `(x1, ..., xn)` over `vars ≥ n` path variables.
    pub fn initial(n: usize, vars: usize) -> Self {
        QubitState {
            wires: (0..n).map(|i| AffineParity::variable(vars, i)).collect(),
        }
    }

    /// Wraps explicit wire parities.
    pub fn from_wires(wires: Vec<AffineParity>) -> Self {
        QubitState { wires }
    }

    /// The state `(A'x ⊕ b)` of an augmented transform over `n` variables.
    pub fn from_transform(a: &AugmentedLinearTransform) -> Self {
        let n = a.n();
        QubitState {
            wires: (0..n)
                .map(|r| AffineParity::new(a.matrix().row(r).resized(n), a.bitflip(r)))
                .collect(),
        }
    }

    /// Number of wires.
    pub fn num_wires(&self) -> usize {
        self.wires.len()
    }

    /// Number of path variables.
    pub fn num_vars(&self) -> usize {
        self.wires.first().map_or(0, AffineParity::num_vars)
    }

    /// Parity of wire `q` (1-based).
    pub fn wire(&self, q: usize) -> &AffineParity {
        &self.wires[q - 1]
    }

    /// All wire parities, wire 1 first.
    pub fn wires(&self) -> &[AffineParity] {
        &self.wires
    }

    /// The transform these parities define, if they range over exactly one
    /// variable per wire.
    pub fn to_transform(&self) -> Result<AugmentedLinearTransform> {
        let n = self.wires.len();
        if self.num_vars() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} wires over {} variables",
                self.num_vars()
            )));
        }
        let mut m = BoolMatrix::zeros(n, n + 1);
        for (r, w) in self.wires.iter().enumerate() {
            *m.row_mut(r) = w.linear.resized(n + 1);
            m.set(r, n, w.constant);
        }
        AugmentedLinearTransform::from_matrix(m)
    }

    /// The transform taking wires in state `self` to state `target`, when
    /// both span the same space: row `r` expresses `target[r]` in the wires
    /// of `self`.
    pub fn transform_to(&self, target: &QubitState) -> Result<AugmentedLinearTransform> {
        let n = self.wires.len();
        let solver = SpanSolver::new(self.wires.iter().map(|w| &w.linear));
        let mut m = BoolMatrix::zeros(n, n + 1);
        for (r, t) in target.wires.iter().enumerate() {
            let (combo, constant) = rebase_parity(&solver, &self.wires, t)?;
            *m.row_mut(r) = combo.resized(n + 1);
            m.set(r, n, constant);
        }
        AugmentedLinearTransform::from_matrix(m)
    }
}

/// State around one Hadamard: the wire parities just before it and just
/// after it (`q_out` differs from `q_in` only at `pos`, which holds a fresh
/// variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSliceRecord {
    /// Wire of the Hadamard (1-based).
    pub pos: usize,
    /// Index of the Hadamard in the source circuit.
    pub gate_index: usize,
    /// State before.
    pub q_in: QubitState,
    /// State after.
    pub q_out: QubitState,
}

/// Incremental extractor applying the update rules gate by gate.
#[derive(Clone, Debug)]
pub struct PathSum {
    poly: PhasePolySet,
    state: QubitState,
    records: Vec<HSliceRecord>,
    next_var: usize,
    seen: usize,
}

impl PathSum {
    /// Starts from `(x1..xn)` with room for `extra_vars` Hadamards.
    pub fn new(n: usize, extra_vars: usize) -> Self {
        PathSum {
            poly: PhasePolySet::new(),
            state: QubitState::initial(n, n + extra_vars),
            records: Vec::new(),
            next_var: n,
            seen: 0,
        }
    }

    /// Applies one gate.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.state.num_wires())?;
        let t = gate.target - 1;
        match gate.kind {
            GateKind::Cnot => {
                let c = self.state.wires[gate.control.expect("CNOT has a control") - 1].clone();
                self.state.wires[t].xor_assign(&c);
            }
            GateKind::X => self.state.wires[t].constant ^= true,
            GateKind::Y => {
                self.poly.add(4, self.state.wires[t].clone());
                self.state.wires[t].constant ^= true;
            }
            GateKind::H => {
                if self.next_var >= self.state.num_vars() {
                    return Err(Error::UnsupportedGate {
                        gate: "H".into(),
                        context: "phase-polynomial extraction without path variables to spare",
                    });
                }
                let q_in = self.state.clone();
                self.state.wires[t] = AffineParity::variable(self.state.num_vars(), self.next_var);
                self.next_var += 1;
                self.records.push(HSliceRecord {
                    pos: gate.target,
                    gate_index: self.seen,
                    q_in,
                    q_out: self.state.clone(),
                });
            }
            kind => {
                let c = kind.phase_coefficient().expect("diagonal phase gate");
                self.poly.add(c, self.state.wires[t].clone());
            }
        }
        self.seen += 1;
        Ok(())
    }

    /// Phase polynomial so far.
    pub fn poly(&self) -> &PhasePolySet {
        &self.poly
    }

    /// Current wire parities.
    pub fn state(&self) -> &QubitState {
        &self.state
    }

    /// Hadamard records so far.
    pub fn records(&self) -> &[HSliceRecord] {
        &self.records
    }

    /// Consumes the extractor.
    pub fn into_parts(self) -> (PhasePolySet, QubitState, Vec<HSliceRecord>) {
        (self.poly, self.state, self.records)
    }
}

/// Phase polynomial and final state of an H-free circuit.
pub fn extract_hfree(c: &Circuit) -> Result<(PhasePolySet, QubitState)> {
    extract_hfree_gates(c.num_qubits(), c.gates())
}

/// [`extract_hfree`] on a bare gate list over `n` qubits.
pub fn extract_hfree_gates(n: usize, gates: &[Gate]) -> Result<(PhasePolySet, QubitState)> {
    let mut ps = PathSum::new(n, 0);
    for g in gates {
        if g.kind == GateKind::H {
            return Err(Error::UnsupportedGate {
                gate: "H".into(),
                context: "H-free phase-polynomial extraction",
            });
        }
        ps.apply(g)?;
    }
    let (poly, state, _) = ps.into_parts();
    Ok((poly, state))
}

/// Phase polynomial over `n + #H` path variables, final state, and one
/// record per Hadamard.
pub fn extract_sliced(c: &Circuit) -> Result<(PhasePolySet, QubitState, Vec<HSliceRecord>)> {
    let mut ps = PathSum::new(c.num_qubits(), c.count_gates(GateKind::H));
    for g in c.gates() {
        ps.apply(g)?;
    }
    Ok(ps.into_parts())
}

/// Decides membership in, and expresses vectors over, the span of a list
/// of generators (Gaussian elimination with combination tracking).
#[derive(Clone, Debug)]
pub struct SpanSolver {
    /// Reduced rows: (vector, leading bit, combination of generators).
    rows: Vec<(Bits, usize, Bits)>,
    generators: usize,
}

impl SpanSolver {
    /// Prepares the solver for the given generators.
    pub fn new<'a>(generators: impl IntoIterator<Item = &'a Bits>) -> Self {
        let gens: Vec<&Bits> = generators.into_iter().collect();
        let k = gens.len();
        let mut rows: Vec<(Bits, usize, Bits)> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            let mut v = g.clone();
            let mut combo = Bits::unit(k, i);
            for (rv, lead, rc) in &rows {
                if v.get(*lead) {
                    v.xor_assign(rv);
                    combo.xor_assign(rc);
                }
            }
            if let Some(lead) = v.first_one() {
                // Keep the basis fully reduced on the new leading bit.
                for (rv, _, rc) in rows.iter_mut() {
                    if rv.get(lead) {
                        rv.xor_assign(&v);
                        rc.xor_assign(&combo);
                    }
                }
                rows.push((v, lead, combo));
            }
        }
        SpanSolver { rows, generators: k }
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// A set of generators (as an indicator vector) XOR-ing to `v`, or
    /// `None` if `v` is outside the span.
    pub fn express(&self, v: &Bits) -> Option<Bits> {
        let mut rest = v.clone();
        let mut combo = Bits::zeros(self.generators);
        for (rv, lead, rc) in &self.rows {
            if rest.get(*lead) {
                rest.xor_assign(rv);
                combo.xor_assign(rc);
            }
        }
        rest.is_zero().then_some(combo)
    }

    /// True if `v` lies in the span.
    pub fn contains(&self, v: &Bits) -> bool {
        self.express(v).is_some()
    }
}

/// True if the linear part of `f` lies in the span of the wire parities of
/// `q`. Constants are not compared: a term `(c, 1 ⊕ g)` equals `(8 - c, g)`
/// up to a global phase, so only the linear part decides computability.
pub fn in_span(f: &AffineParity, q: &QubitState) -> bool {
    SpanSolver::new(q.wires.iter().map(|w| &w.linear)).contains(&f.linear)
}

/// Terms computable before the Hadamard of `h` but not after it.
pub fn uncomputable_terms(p: &PhasePolySet, h: &HSliceRecord) -> PhasePolySet {
    let before = SpanSolver::new(h.q_in.wires.iter().map(|w| &w.linear));
    let after = SpanSolver::new(h.q_out.wires.iter().map(|w| &w.linear));
    p.terms()
        .filter(|t| before.contains(&t.parity.linear) && !after.contains(&t.parity.linear))
        .collect()
}

fn rebase_parity(solver: &SpanSolver, wires: &[AffineParity], f: &AffineParity) -> Result<(Bits, bool)> {
    let combo = solver.express(&f.linear).ok_or(Error::OutsideSpan)?;
    let constant = combo.ones().fold(f.constant, |acc, k| acc ^ wires[k].constant);
    Ok((combo, constant))
}

/// Rewrites every term over the wires of `basis`: the parity column selects
/// the wires to XOR and the bit-flip bit absorbs the difference of
/// constants.
pub fn rebase(p: &PhasePolySet, basis: &QubitState) -> Result<ParityMatrix> {
    let solver = SpanSolver::new(basis.wires.iter().map(|w| &w.linear));
    let mut terms = Vec::with_capacity(p.len());
    for t in p.terms() {
        let (combo, flip) = rebase_parity(&solver, &basis.wires, &t.parity)?;
        terms.push((t.coeff, combo, flip));
    }
    ParityMatrix::new(basis.num_wires(), terms)
}

/// Inverse of [`rebase`]: expands wire parities back into path variables.
pub fn expand(p: &ParityMatrix, basis: &QubitState) -> Result<PhasePolySet> {
    if p.n() != basis.num_wires() {
        return Err(Error::DimensionMismatch(format!(
            "{}-wire parity matrix over a {}-wire basis",
            p.n(),
            basis.num_wires()
        )));
    }
    let vars = basis.num_vars();
    let mut out = PhasePolySet::new();
    for col in p.columns() {
        let mut f = AffineParity::new(Bits::zeros(vars), col.bitflip);
        for k in col.parity.ones() {
            f.xor_assign(&basis.wires[k]);
        }
        out.add(col.coeff, f);
    }
    Ok(out)
}
