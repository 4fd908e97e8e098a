//! Golden data of the two worked examples on the 2x3 graph, with checkers
//! that list every mismatch instead of stopping at the first.

use stsynth::linsynth::{ColumnTrace, LinearSynthTrace};
use stsynth::phasepoly::{expand, extract_hfree, QubitState};
use stsynth::phasesynth::{select_columns, PhaseSynthResult};
use stsynth::{Circuit, Gate, GateKind};

use super::{cnots, linear_example, matrix, phase_example};

use GateKind::{Sdg, Tdg, S, T, X, Z};

/// Expected record of one column of the linear elimination. `None` matrices
/// are not printed in the example and are not compared.
pub struct Step {
    pub diagonal_fix: &'static [(usize, usize)],
    pub after_fix: Option<[&'static str; 6]>,
    pub row_op: &'static [(usize, usize)],
    pub correction: &'static [(usize, usize)],
    pub after: Option<[&'static str; 6]>,
}

const EMPTY: Step = Step {
    diagonal_fix: &[],
    after_fix: None,
    row_op: &[],
    correction: &[],
    after: None,
};

/// Upper-triangular phase, one entry per column.
pub const UPPER: [Step; 6] = [
    Step {
        row_op: &[(4, 5), (3, 4), (1, 2), (2, 3), (1, 2)],
        after: Some(["110110", "001101", "010001", "011110", "001000", "010101"]),
        ..EMPTY
    },
    Step {
        diagonal_fix: &[(3, 2)],
        after_fix: Some(["110110", "011100", "010001", "011110", "001000", "010101"]),
        row_op: &[(3, 4), (2, 3), (2, 5), (5, 6), (2, 5)],
        after: Some(["110110", "011100", "001101", "001111", "001000", "000001"]),
        ..EMPTY
    },
    Step {
        row_op: &[(4, 5), (3, 4)],
        after: Some(["110110", "011100", "001101", "000010", "000111", "000001"]),
        ..EMPTY
    },
    Step {
        diagonal_fix: &[(5, 4)],
        after_fix: Some(["110110", "011100", "001101", "000101", "000111", "000001"]),
        row_op: &[(4, 5)],
        ..EMPTY
    },
    EMPTY,
    EMPTY,
];

/// Matrix the lower phase starts from (transpose of the upper result).
pub const LOWER_START: [&str; 6] = ["100000", "110000", "011000", "111100", "100010", "001101"];

/// Lower-triangular phase, one entry per column.
pub const LOWER: [Step; 6] = [
    Step {
        row_op: &[(5, 4), (2, 5), (1, 2)],
        correction: &[(5, 4)],
        after: Some(["100000", "010000", "011000", "001100", "010010", "001101"]),
        ..EMPTY
    },
    Step {
        row_op: &[(2, 3), (2, 5)],
        after: Some(["100000", "010000", "001000", "001100", "000010", "001101"]),
        ..EMPTY
    },
    Step {
        row_op: &[(5, 6), (4, 5), (5, 6), (4, 5), (3, 4)],
        ..EMPTY
    },
    EMPTY,
    EMPTY,
    EMPTY,
];

/// CNOT count of the linear example.
pub const LINEAR_CNOTS: usize = 26;

fn check_steps(phase: &str, trace: &[ColumnTrace], steps: &[Step], out: &mut Vec<String>) {
    if trace.len() != steps.len() {
        out.push(format!("{phase}: {} columns, expected {}", trace.len(), steps.len()));
        return;
    }
    for (k, (t, s)) in trace.iter().zip(steps).enumerate() {
        let col = k + 1;
        if t.diagonal_fix != cnots(s.diagonal_fix) {
            out.push(format!("{phase} column {col}: diagonal fix {:?}", t.diagonal_fix));
        }
        if let Some(m) = s.after_fix {
            if t.matrix_after_fix != matrix(&m) {
                out.push(format!("{phase} column {col}: matrix after the diagonal fix"));
            }
        }
        if t.row_op != cnots(s.row_op) {
            out.push(format!("{phase} column {col}: row operations {:?}", t.row_op));
        }
        if t.correction != cnots(s.correction) {
            out.push(format!("{phase} column {col}: correction {:?}", t.correction));
        }
        if let Some(m) = s.after {
            if t.matrix_after != matrix(&m) {
                out.push(format!("{phase} column {col}: matrix after the column"));
            }
        }
    }
}

/// Every deviation of a traced run from the linear worked example.
pub fn linear_trace_mismatches(trace: &LinearSynthTrace) -> Vec<String> {
    let mut out = Vec::new();
    if trace.upper.first().map(|c| &c.matrix_before) != Some(&linear_example().linear_block()) {
        out.push("upper phase does not start from A".into());
    }
    check_steps("upper", &trace.upper, &UPPER, &mut out);
    if !trace.upper.last().is_some_and(|c| c.matrix_after.is_upper_triangular()) {
        out.push("upper phase does not end upper triangular".into());
    }
    if trace.lower.first().map(|c| &c.matrix_before) != Some(&matrix(&LOWER_START)) {
        out.push("lower phase does not start from the transposed matrix".into());
    }
    check_steps("lower", &trace.lower, &LOWER, &mut out);
    for (i, col) in trace.lower.iter().enumerate() {
        for r in 0..=i {
            let row = col.matrix_after.row(r);
            if row.count_ones() != 1 || !row.get(r) {
                out.push(format!("lower column {}: row {} is not a unit row", i + 1, r + 1));
            }
        }
    }
    out
}

/// Pivot row chosen in each of the fourteen iterations.
pub const PIVOTS: [Option<usize>; 14] = [
    Some(2),
    Some(1),
    Some(4),
    None,
    None,
    Some(1),
    Some(3),
    None,
    None,
    Some(3),
    None,
    Some(4),
    None,
    None,
];

/// `(iteration, CNOTs)` of every iteration that emits gates.
pub const CNOT_LISTS: [(usize, &[(usize, usize)]); 9] = [
    (4, &[(6, 5), (5, 4)]),
    (5, &[(5, 6), (4, 5), (5, 6), (4, 5), (6, 1)]),
    (8, &[(5, 2), (6, 5), (5, 2), (6, 5)]),
    (9, &[(6, 5), (5, 2), (3, 2)]),
    (10, &[(1, 2)]),
    (11, &[(5, 2)]),
    (12, &[(3, 2)]),
    (13, &[(5, 2)]),
    (14, &[(6, 5), (4, 5), (5, 2)]),
];

/// `(iteration, column, wire, gates)` with X gates following the constant
/// each wire carries.
pub const TRACKED_PLACEMENT: [(usize, usize, usize, &[GateKind]); 7] = [
    (4, 3, 4, &[X, Z]),
    (5, 1, 1, &[T]),
    (8, 7, 2, &[X, T]),
    (9, 2, 2, &[X, S]),
    (11, 5, 2, &[X, Sdg]),
    (13, 6, 2, &[X, Tdg]),
    (14, 4, 2, &[X, Z]),
];

/// `(iteration, wire, gates)` as narrated in the example's text.
pub const NARRATED_PLACEMENT: [(usize, usize, &[GateKind]); 7] = [
    (4, 4, &[X, Z]),
    (5, 1, &[X, T]),
    (8, 2, &[T]),
    (9, 2, &[S]),
    (11, 2, &[X, Sdg]),
    (13, 2, &[Tdg]),
    (14, 2, &[Z]),
];

/// `(iteration, live columns, rows)` of the printed working matrices.
pub const MATRICES: [(usize, &[usize], [&str; 6]); 9] = [
    (
        4,
        &[1, 2, 3, 4, 5, 6, 7],
        ["1001110", "0101111", "0100100", "1010011", "0100010", "1001011"],
    ),
    (
        5,
        &[1, 2, 4, 5, 6, 7],
        ["101110", "011111", "010100", "001000", "010010", "000101"],
    ),
    (
        8,
        &[2, 4, 5, 6, 7],
        ["01110", "11111", "10100", "01000", "10010", "11010"],
    ),
    (9, &[2, 4, 5, 6], ["0111", "1111", "0101", "0100", "0110", "0100"]),
    (10, &[4, 5, 6], ["000", "111", "101", "100", "110", "100"]),
    (11, &[4, 5, 6], ["000", "111", "101", "100", "001", "100"]),
    (12, &[4, 6], ["00", "11", "00", "10", "01", "10"]),
    (13, &[4, 6], ["00", "11", "00", "10", "10", "10"]),
    (14, &[4], ["0", "1", "0", "0", "0", "0"]),
];

pub fn singles(kinds: &[GateKind], wire: usize) -> Vec<Gate> {
    kinds.iter().map(|&k| Gate::single(k, wire)).collect()
}

/// Deviations of the CNOT lists, pivots and working matrices.
pub fn phase_cnot_mismatches(r: &PhaseSynthResult) -> Vec<String> {
    let mut out = Vec::new();
    let pivots: Vec<Option<usize>> = r.iterations.iter().map(|it| it.pivot).collect();
    if pivots != PIVOTS {
        out.push(format!("pivots {pivots:?}"));
    }
    for it in &r.iterations {
        let expected = CNOT_LISTS
            .iter()
            .find(|(k, _)| *k == it.iteration)
            .map_or(Vec::new(), |(_, pairs)| cnots(pairs));
        if it.cnots != expected {
            out.push(format!("iteration {}: CNOTs {:?}", it.iteration, it.cnots));
        }
    }
    for (k, cols, rows) in MATRICES {
        let zero_based: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        match r.iterations.get(k - 1) {
            Some(it) if select_columns(&it.matrix, &zero_based) == matrix(&rows) => {}
            _ => out.push(format!("iteration {k}: working matrix")),
        }
    }
    out
}

/// Deviations of the phase-gate placements from [`TRACKED_PLACEMENT`].
pub fn phase_placement_mismatches(r: &PhaseSynthResult) -> Vec<String> {
    let realized: Vec<(usize, usize, usize, Vec<Gate>)> = r
        .iterations
        .iter()
        .flat_map(|it| {
            it.realized
                .iter()
                .map(move |x| (it.iteration, x.column + 1, x.wire, x.gates.clone()))
        })
        .collect();
    let expected: Vec<(usize, usize, usize, Vec<Gate>)> = TRACKED_PLACEMENT
        .iter()
        .map(|&(k, c, w, kinds)| (k, c, w, singles(kinds, w)))
        .collect();
    if realized == expected && r.upfront.is_empty() && r.completion.is_empty() {
        Vec::new()
    } else {
        vec![format!("placements {realized:?}")]
    }
}

/// Terms of the example missing from (or with a different coefficient in)
/// the phase polynomial of `c`.
pub fn missing_terms(c: &Circuit) -> usize {
    let (poly, _) = extract_hfree(c).unwrap();
    let wanted = expand(&phase_example(), &QubitState::initial(6, 6)).unwrap();
    wanted
        .terms()
        .filter(|t| poly.coefficient(&t.parity) != t.coeff)
        .count()
}

/// The circuit obtained by placing, after each iteration's CNOTs, exactly
/// the gates named in the example's narrative.
pub fn narrated_circuit() -> Circuit {
    let mut gates = Vec::new();
    for (k, pairs) in CNOT_LISTS {
        gates.extend(cnots(pairs));
        if let Some((_, wire, kinds)) = NARRATED_PLACEMENT.iter().find(|(i, _, _)| *i == k) {
            gates.extend(singles(kinds, *wire));
        }
    }
    Circuit::from_gates(6, gates).unwrap()
}
