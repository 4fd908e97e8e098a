//! Independent correctness oracles: replay of {CNOT, X} circuits, comparison
//! of phase polynomials, and dense state-vector simulation for small
//! registers.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::AugmentedLinearTransform;
use crate::phasepoly::{extract_hfree, extract_sliced};

/// Largest register accepted by the dense simulator.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Maximum entry-wise deviation tolerated between two unitaries.
pub const UNITARY_TOLERANCE: f64 = 1e-7;
/// Maximum drift of the state norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A dense state vector. Qubit `q` (1-based) is bit `q - 1` of the basis
/// index; the T gate is `diag(1, e^{iπ/4})`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// The basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(DenseState { n, amps })
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// The amplitudes.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies one gate.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let t = 1usize << (gate.target - 1);
        let phase = |k: u32| Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * f64::from(k));
        match gate.kind {
            GateKind::Cnot => {
                let c = 1usize << (gate.control.expect("CNOT has a control") - 1);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            GateKind::X => self.for_pairs(t, |a, b| (b, a)),
            GateKind::Y => {
                let i = Complex64::new(0.0, 1.0);
                self.for_pairs(t, |a, b| (-i * b, i * a));
            }
            GateKind::H => {
                let s = FRAC_1_SQRT_2;
                self.for_pairs(t, |a, b| ((a + b) * s, (a - b) * s));
            }
            kind => {
                let w = phase(u32::from(kind.phase_coefficient().expect("diagonal gate")));
                self.for_pairs(t, |a, b| (a, b * w));
            }
        }
        Ok(())
    }

    fn for_pairs(&mut self, t: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
        for i in 0..self.amps.len() {
            if i & t == 0 {
                let (a, b) = f(self.amps[i], self.amps[i | t]);
                self.amps[i] = a;
                self.amps[i | t] = b;
            }
        }
    }

    /// Applies every gate of a circuit.
    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        c.gates().iter().try_for_each(|g| self.apply(g))
    }
}

/// Column `index` of the unitary of `c`.
pub fn unitary_column(c: &Circuit, index: usize) -> Result<Vec<Complex64>> {
    let mut s = DenseState::basis(c.num_qubits(), index)?;
    s.run(c)?;
    Ok(s.amps)
}

/// True iff the unitaries of `a` and `b` agree up to a global phase, within
/// [`UNITARY_TOLERANCE`] per entry. Both circuits must have the same number
/// of qubits, at most [`MAX_DENSE_QUBITS`].
pub fn equivalent_up_to_phase(a: &Circuit, b: &Circuit) -> Result<bool> {
    let n = a.num_qubits();
    if b.num_qubits() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n}-qubit and {}-qubit circuits",
            b.num_qubits()
        )));
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    // Global phase from the largest entry of the first column.
    let ua = unitary_column(a, 0)?;
    let ub = unitary_column(b, 0)?;
    let k = (0..ua.len())
        .max_by(|&i, &j| ua[i].norm_sqr().total_cmp(&ua[j].norm_sqr()))
        .expect("non-empty state");
    if ub[k].norm() < 0.5 / (ua.len() as f64).sqrt() {
        return Ok(false);
    }
    let phase = ua[k] / ub[k];
    let phase = phase / phase.norm();
    let close = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .zip(y)
            .all(|(p, q)| (p - phase * q).norm() <= UNITARY_TOLERANCE)
    };
    if !close(&ua, &ub) {
        return Ok(false);
    }
    (1..1usize << n)
        .into_par_iter()
        .try_fold(
            || true,
            |ok, col| -> Result<bool> {
                if !ok {
                    return Ok(false);
                }
                Ok(close(&unitary_column(a, col)?, &unitary_column(b, col)?))
            },
        )
        .try_reduce(|| true, |x, y| Ok(x && y))
}

/// The affine action of a {CNOT, X} circuit.
pub fn linear_action(c: &Circuit) -> Result<AugmentedLinearTransform> {
    AugmentedLinearTransform::from_gates(c.num_qubits(), c.gates())
}

/// True iff two H-free circuits have the same phase polynomial (up to a
/// global phase) and the same output parities.
pub fn phase_poly_equal(a: &Circuit, b: &Circuit) -> Result<bool> {
    if a.num_qubits() != b.num_qubits() {
        return Ok(false);
    }
    let (pa, qa) = extract_hfree(a)?;
    let (pb, qb) = extract_hfree(b)?;
    Ok(qa == qb && pa.canonical() == pb.canonical())
}

/// True iff two circuits put their wires in the same affine states (over the
/// path variables) around every H and at the end, and accumulate the same
/// phase polynomial. This implies equivalence up to global phase and needs
/// no dense simulation, so it scales to any register size.
pub fn slice_states_equal(a: &Circuit, b: &Circuit) -> Result<bool> {
    if a.num_qubits() != b.num_qubits() {
        return Ok(false);
    }
    let (pa, qa, ra) = extract_sliced(a)?;
    let (pb, qb, rb) = extract_sliced(b)?;
    Ok(qa == qb
        && ra.len() == rb.len()
        && ra
            .iter()
            .zip(&rb)
            .all(|(x, y)| x.pos == y.pos && x.q_in == y.q_in && x.q_out == y.q_out)
        && pa.canonical() == pb.canonical())
}
