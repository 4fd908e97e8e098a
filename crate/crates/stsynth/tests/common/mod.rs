//! Fixtures shared by the integration tests: the two worked examples on the
//! six-vertex 2x3 graph, and small helpers.

#![allow(dead_code)]

use stsynth::{AugmentedLinearTransform, Bits, BoolMatrix, Gate, ParityMatrix};

/// Builds a matrix from rows written as strings of `0`/`1`.
pub fn matrix(rows: &[&str]) -> BoolMatrix {
    let rows: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| {
            r.bytes()
                .filter(|b| !b.is_ascii_whitespace())
                .map(|b| b - b'0')
                .collect()
        })
        .collect();
    BoolMatrix::from_rows(&rows).unwrap()
}

/// CNOT list from `(control, target)` pairs.
pub fn cnots(pairs: &[(usize, usize)]) -> Vec<Gate> {
    pairs.iter().map(|&(c, t)| Gate::cnot(c, t)).collect()
}

/// The linear transform eliminated step by step in the linear worked example.
pub fn linear_example() -> AugmentedLinearTransform {
    let a = matrix(&["110110", "001101", "101010", "110100", "111100", "010101"]);
    AugmentedLinearTransform::from_parts(&a, &Bits::zeros(6)).unwrap()
}

/// Rows 1-6 of the parity matrix of the phase-network worked example.
pub const PHASE_EXAMPLE_ROWS: [&str; 6] = ["1001110", "0101111", "0100100", "1010011", "1110001", "0111010"];
/// Bit-flip row of the phase-network worked example.
pub const PHASE_EXAMPLE_BITFLIPS: &str = "1011110";
/// Coefficient row of the phase-network worked example.
pub const PHASE_EXAMPLE_COEFFS: [u8; 7] = [1, 2, 4, 4, 6, 7, 1];

/// The parity matrix of the phase-network worked example.
pub fn phase_example() -> ParityMatrix {
    let bits = |c: usize| {
        Bits::from_bools(
            &PHASE_EXAMPLE_ROWS
                .iter()
                .map(|r| r.as_bytes()[c] == b'1')
                .collect::<Vec<_>>(),
        )
    };
    ParityMatrix::new(
        6,
        (0..7).map(|c| {
            (
                PHASE_EXAMPLE_COEFFS[c],
                bits(c),
                PHASE_EXAMPLE_BITFLIPS.as_bytes()[c] == b'1',
            )
        }),
    )
    .unwrap()
}

pub mod golden;
pub mod oracles;
