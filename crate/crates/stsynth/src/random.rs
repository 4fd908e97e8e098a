//! Seeded random instances: Clifford+T circuits with a CNOT quota, invertible
//! affine transforms and parity matrices.
//!
//! Every generator takes the RNG by reference. A fixed seed therefore gives
//! bit-identical instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::linalg::{AugmentedLinearTransform, Bits, BoolMatrix, ParityMatrix};

/// Draws a circuit on `n ≥ 2` qubits. Each gate kind is chosen uniformly from
/// the full gate set, and drawing stops once `cnots` CNOTs have been placed.
/// CNOT endpoints are a uniformly random ordered pair of distinct qubits.
pub fn random_circuit(rng: &mut impl Rng, n: usize, cnots: usize) -> Circuit {
    assert!(n >= 2 || cnots == 0, "CNOTs need two qubits");
    let mut gates = Vec::new();
    let mut placed = 0;
    while placed < cnots {
        let kind = *GateKind::ALL.choose(rng).expect("non-empty gate set");
        gates.push(random_gate(rng, n, kind));
        placed += usize::from(kind == GateKind::Cnot);
    }
    Circuit::from_gates(n, gates).expect("indices drawn in range")
}

/// Like [`random_circuit`] but with `len` gates drawn from the H-free gates.
pub fn random_hfree_circuit(rng: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let kinds: Vec<GateKind> = GateKind::ALL
        .into_iter()
        .filter(|&k| k != GateKind::H && (n >= 2 || k != GateKind::Cnot))
        .collect();
    random_from(rng, n, len, &kinds)
}

/// Like [`random_hfree_circuit`] restricted to `{CNOT, X}`.
pub fn random_linear_circuit(rng: &mut impl Rng, n: usize, len: usize) -> Circuit {
    let kinds: &[GateKind] = if n >= 2 {
        &[GateKind::Cnot, GateKind::X]
    } else {
        &[GateKind::X]
    };
    random_from(rng, n, len, kinds)
}

fn random_from(rng: &mut impl Rng, n: usize, len: usize, kinds: &[GateKind]) -> Circuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let kind = *kinds.choose(rng).expect("non-empty gate set");
        gates.push(random_gate(rng, n, kind));
    }
    Circuit::from_gates(n, gates).expect("indices drawn in range")
}

fn random_gate(rng: &mut impl Rng, n: usize, kind: GateKind) -> Gate {
    if kind == GateKind::Cnot {
        let c = rng.gen_range(1..=n);
        let mut t = rng.gen_range(1..n);
        if t >= c {
            t += 1;
        }
        Gate::cnot(c, t)
    } else {
        Gate::single(kind, rng.gen_range(1..=n))
    }
}

/// A uniformly random invertible `n × n` matrix (rejection sampling).
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> BoolMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A uniformly random invertible affine transform; with `bitflips` false the
/// constant column is zero.
pub fn random_transform(rng: &mut impl Rng, n: usize, bitflips: bool) -> AugmentedLinearTransform {
    let a = random_invertible(rng, n);
    let b = if bitflips { random_bits(rng, n) } else { Bits::zeros(n) };
    AugmentedLinearTransform::from_parts(&a, &b).expect("matching dimensions")
}

/// A parity matrix of up to `terms` random terms over `n` wires. Zero
/// parities are re-drawn; coincident parities merge, so the result may be
/// shorter.
pub fn random_parity_matrix(rng: &mut impl Rng, n: usize, terms: usize, bitflips: bool) -> ParityMatrix {
    let cols: Vec<(u8, Bits, bool)> = (0..terms)
        .map(|_| {
            let parity = loop {
                let p = random_bits(rng, n);
                if !p.is_zero() {
                    break p;
                }
            };
            (rng.gen_range(1..8), parity, bitflips && rng.gen())
        })
        .collect();
    ParityMatrix::new(n, cols).expect("matching dimensions")
}

/// A uniformly random `rows × cols` matrix.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BoolMatrix {
    let rows = (0..rows).map(|_| random_bits(rng, cols)).collect();
    BoolMatrix::from_bits(cols, rows).expect("rows of equal width")
}

/// `len` uniformly random bits.
pub fn random_bits(rng: &mut impl Rng, len: usize) -> Bits {
    let v: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
    Bits::from_bools(&v)
}
