//! Boolean matrices over F2: the augmented transform `[A'|b]` of a
//! {CNOT, X} circuit and the parity matrix consumed by phase synthesis.
//!
//! Matrix rows and columns are 0-based. Row `r` of an
//! [`AugmentedLinearTransform`] describes qubit `r + 1`.

use std::fmt;

use crate::circuit::{Gate, GateKind};
use crate::error::{Error, Result};

const WORD: usize = 64;

/// A fixed-length vector over F2 packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    /// The all-zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut b = Bits::zeros(len);
        b.set(index, true);
        b
    }

    /// Builds a vector from booleans.
    pub fn from_bools(values: &[bool]) -> Self {
        let mut b = Bits::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            b.set(i, v);
        }
        b
    }

    /// Builds a vector from 0/1 bytes; any non-zero byte counts as 1.
    pub fn from_u8s(values: &[u8]) -> Self {
        let mut b = Bits::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            b.set(i, v != 0);
        }
        b
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True if the vector has length zero.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry at `index`.
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    /// Sets the entry at `index`.
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    /// Flips the entry at `index`.
    pub fn toggle(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    /// In-place XOR with a vector of the same length.
    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// True if every entry is 0.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of 1 entries.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest 1 entry.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of the 1 entries in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &Bits) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Copy of the vector padded with zeros (or truncated) to `len`.
    pub fn resized(&self, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in self.ones().take_while(|&i| i < len) {
            out.set(i, true);
        }
        out
    }

    /// The entries as booleans.
    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "Bits({s})")
    }
}

/// A dense boolean matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    cols: usize,
    rows: Vec<Bits>,
}

impl BoolMatrix {
    /// All-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            cols,
            rows: vec![Bits::zeros(cols); rows],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        BoolMatrix {
            cols: n,
            rows: (0..n).map(|i| Bits::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of 0/1 bytes. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(BoolMatrix {
            cols,
            rows: rows.iter().map(|r| Bits::from_u8s(r)).collect(),
        })
    }

    /// Builds a matrix from packed rows of equal length.
    pub fn from_bits(cols: usize, rows: Vec<Bits>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("row length differs from column count".into()));
        }
        Ok(BoolMatrix { cols, rows })
    }

    /// Number of rows.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Entry `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Sets entry `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    /// Row `r`.
    pub fn row(&self, r: usize) -> &Bits {
        &self.rows[r]
    }

    /// Mutable row `r`.
    pub fn row_mut(&mut self, r: usize) -> &mut Bits {
        &mut self.rows[r]
    }

    /// All rows.
    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Bits {
        let mut out = Bits::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                out.set(r, true);
            }
        }
        out
    }

    /// `row[dst] ^= row[src]`.
    pub fn row_add(&mut self, src: usize, dst: usize) -> Result<()> {
        let bound = self.rows.len();
        for idx in [src, dst] {
            if idx >= bound {
                return Err(Error::IndexOutOfRange { index: idx, bound });
            }
        }
        if src == dst {
            return Err(Error::InvalidArgument("row_add with src == dst".into()));
        }
        let s = self.rows[src].clone();
        self.rows[dst].xor_assign(&s);
        Ok(())
    }

    /// The transpose.
    pub fn transpose(&self) -> BoolMatrix {
        let mut out = BoolMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// Matrix product over F2.
    pub fn mul(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.cols != other.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols
            )));
        }
        let mut out = BoolMatrix::zeros(self.rows.len(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Rank over F2.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// True for a square matrix of full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows.len() == self.cols && self.rank() == self.cols
    }

    /// Inverse over F2 by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<BoolMatrix> {
        let n = self.rows.len();
        if n != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let mut a = self.rows.clone();
        let mut inv = BoolMatrix::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&r| a[r].get(c)).ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            let (pa, pi) = (a[c].clone(), inv[c].clone());
            for r in 0..n {
                if r != c && a[r].get(c) {
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Ok(BoolMatrix { cols: n, rows: inv })
    }

    /// True if every entry strictly below the diagonal is 0.
    pub fn is_upper_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.ones().all(|c| c >= r))
    }

    /// True if every entry strictly above the diagonal is 0.
    pub fn is_lower_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.ones().all(|c| c <= r))
    }

    /// Parses the dump format: rows of `0`/`1` separated by whitespace.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<BoolMatrix> {
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            rows.push(parse_bit_row(line, i + 1)?);
        }
        BoolMatrix::from_rows(&rows).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }
}

impl fmt::Display for BoolMatrix {
    /// The dump format: one row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<&str> = (0..self.cols).map(|c| if row.get(c) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.rows.len(), self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_bit_row(line: &str, lineno: usize) -> Result<Vec<u8>> {
    line.split_whitespace()
        .map(|tok| match tok {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(Error::Parse {
                line: lineno,
                message: format!("expected 0 or 1, found `{other}`"),
            }),
        })
        .collect()
}

/// The affine action `x ↦ A'x ⊕ b` of a {CNOT, X} circuit on `n` qubits,
/// stored as an `n × (n+1)` matrix whose last column is `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AugmentedLinearTransform {
    n: usize,
    m: BoolMatrix,
}

impl AugmentedLinearTransform {
    /// `[I | 0]`.
    pub fn identity(n: usize) -> Self {
        let mut m = BoolMatrix::zeros(n, n + 1);
        for i in 0..n {
            m.set(i, i, true);
        }
        AugmentedLinearTransform { n, m }
    }

    /// Builds `[A' | b]` from an `n × n` block and a bit-flip vector.
    pub fn from_parts(a: &BoolMatrix, b: &Bits) -> Result<Self> {
        let n = a.num_rows();
        if a.num_cols() != n || b.len() != n {
            return Err(Error::DimensionMismatch(
                "expected n x n block and length-n flips".into(),
            ));
        }
        let mut m = BoolMatrix::zeros(n, n + 1);
        for r in 0..n {
            for c in a.row(r).ones() {
                m.set(r, c, true);
            }
            m.set(r, n, b.get(r));
        }
        Ok(AugmentedLinearTransform { n, m })
    }

    /// Wraps an `n × (n+1)` matrix.
    pub fn from_matrix(m: BoolMatrix) -> Result<Self> {
        let n = m.num_rows();
        if m.num_cols() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "augmented transform needs {} columns, got {}",
                n + 1,
                m.num_cols()
            )));
        }
        Ok(AugmentedLinearTransform { n, m })
    }

    /// The transform realized by a {CNOT, X} circuit.
    pub fn from_gates<'a>(n: usize, gates: impl IntoIterator<Item = &'a Gate>) -> Result<Self> {
        let mut a = AugmentedLinearTransform::identity(n);
        for g in gates {
            a.apply_gate(g)?;
        }
        Ok(a)
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The full `n × (n+1)` matrix.
    pub fn matrix(&self) -> &BoolMatrix {
        &self.m
    }

    /// The `n × n` linear block `A'`.
    pub fn linear_block(&self) -> BoolMatrix {
        let mut out = BoolMatrix::zeros(self.n, self.n);
        for r in 0..self.n {
            for c in self.m.row(r).ones().filter(|&c| c < self.n) {
                out.set(r, c, true);
            }
        }
        out
    }

    /// The bit-flip column `b`.
    pub fn bitflips(&self) -> Bits {
        self.m.column(self.n)
    }

    /// Bit-flip entry of row `r` (0-based).
    pub fn bitflip(&self, r: usize) -> bool {
        self.m.get(r, self.n)
    }

    /// True if this is `[I | 0]`.
    pub fn is_identity(&self) -> bool {
        *self == AugmentedLinearTransform::identity(self.n)
    }

    /// True if the linear block is invertible.
    pub fn is_invertible(&self) -> bool {
        self.linear_block().is_invertible()
    }

    /// Applies one CNOT or X gate (qubits are 1-based).
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let check = |q: usize| {
            if q == 0 || q > self.n {
                Err(Error::IndexOutOfRange {
                    index: q,
                    bound: self.n,
                })
            } else {
                Ok(())
            }
        };
        match gate.kind {
            GateKind::Cnot => {
                let c = gate
                    .control
                    .ok_or_else(|| Error::InvalidGate("CNOT without control".into()))?;
                check(c)?;
                check(gate.target)?;
                self.m.row_add(c - 1, gate.target - 1)
            }
            GateKind::X => {
                check(gate.target)?;
                let r = gate.target - 1;
                let v = self.m.get(r, self.n);
                self.m.set(r, self.n, !v);
                Ok(())
            }
            other => Err(Error::UnsupportedGate {
                gate: other.name().to_string(),
                context: "linear transform update",
            }),
        }
    }

    /// The transform `then ∘ self`: first `self`, afterwards `then`.
    pub fn then(&self, then: &AugmentedLinearTransform) -> Result<Self> {
        if self.n != then.n {
            return Err(Error::DimensionMismatch(
                "composing transforms of different sizes".into(),
            ));
        }
        let n = self.n;
        let mut m = BoolMatrix::zeros(n, n + 1);
        for r in 0..n {
            let mut row = Bits::zeros(n + 1);
            row.set(n, then.bitflip(r));
            for k in then.m.row(r).ones().filter(|&k| k < n) {
                row.xor_assign(self.m.row(k));
            }
            *m.row_mut(r) = row;
        }
        Ok(AugmentedLinearTransform { n, m })
    }

    /// The inverse affine map.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self.linear_block().inverse()?;
        let b = self.bitflips();
        let mut m = BoolMatrix::zeros(self.n, self.n + 1);
        for r in 0..self.n {
            for c in inv.row(r).ones() {
                m.set(r, c, true);
            }
            m.set(r, self.n, inv.row(r).dot(&b));
        }
        Ok(AugmentedLinearTransform { n: self.n, m })
    }

    /// Parses the matrix file format: an `n <k>` header followed by `k` rows
    /// of `k` or `k + 1` entries (a missing bit-flip column means zeros).
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if n.is_none() {
                let mut it = line.split_whitespace();
                match (it.next(), it.next(), it.next()) {
                    (Some("n"), Some(k), None) => {
                        n = Some(k.parse::<usize>().map_err(|_| Error::Parse {
                            line: i + 1,
                            message: format!("invalid size `{k}`"),
                        })?);
                        continue;
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: "expected header `n <k>`".into(),
                        })
                    }
                }
            }
            let k = n.unwrap_or(0);
            let mut row = parse_bit_row(line, i + 1)?;
            if row.len() == k {
                row.push(0);
            }
            if row.len() != k + 1 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {k} or {} entries, found {}", k + 1, row.len()),
                });
            }
            rows.push(row);
        }
        let k = n.ok_or(Error::Parse {
            line: 0,
            message: "missing header `n <k>`".into(),
        })?;
        if rows.len() != k {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {k} rows, found {}", rows.len()),
            });
        }
        AugmentedLinearTransform::from_matrix(BoolMatrix::from_rows(&rows)?)
    }
}

impl fmt::Display for AugmentedLinearTransform {
    /// The matrix file format (header plus dump rows).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        fmt::Display::fmt(&self.m, f)
    }
}

impl fmt::Debug for AugmentedLinearTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One column of a [`ParityMatrix`]: a parity over the wires, its bit-flip
/// constant and a coefficient in Z8.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityColumn {
    /// Parity bits, one per wire.
    pub parity: Bits,
    /// Constant term of the parity.
    pub bitflip: bool,
    /// Coefficient in 1..=7.
    pub coeff: u8,
}

/// The `(n+2) × p` parity matrix: `p` phase terms over `n` wires.
///
/// Construction drops terms with an all-zero parity (they only contribute a
/// global phase) and merges equal `(parity, bitflip)` pairs mod 8, dropping
/// the ones that cancel. Columns keep first-appearance order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMatrix {
    n: usize,
    columns: Vec<ParityColumn>,
}

impl ParityMatrix {
    /// Builds the matrix from `(coefficient, parity, bitflip)` terms.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (u8, Bits, bool)>) -> Result<Self> {
        let mut columns: Vec<ParityColumn> = Vec::new();
        for (coeff, parity, bitflip) in terms {
            if parity.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "parity of width {} in a {n}-wire matrix",
                    parity.len()
                )));
            }
            if parity.is_zero() {
                continue;
            }
            let coeff = coeff % 8;
            if let Some(col) = columns.iter_mut().find(|c| c.parity == parity && c.bitflip == bitflip) {
                col.coeff = (col.coeff + coeff) % 8;
            } else {
                columns.push(ParityColumn { parity, bitflip, coeff });
            }
        }
        columns.retain(|c| c.coeff != 0);
        Ok(ParityMatrix { n, columns })
    }

    /// Builds the matrix from its `(n+2)`-row dense form: parity rows, then the
    /// bit-flip row, then the coefficient row.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        if rows.len() < 3 {
            return Err(Error::DimensionMismatch("parity matrix needs at least 3 rows".into()));
        }
        let n = rows.len() - 2;
        let p = rows[0].len();
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::DimensionMismatch("ragged parity matrix".into()));
        }
        let terms = (0..p).map(|c| {
            let parity = Bits::from_u8s(&rows[..n].iter().map(|r| r[c]).collect::<Vec<_>>());
            (rows[n + 1][c], parity, rows[n][c] != 0)
        });
        ParityMatrix::new(n, terms)
    }

    /// Number of wires.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The columns in order.
    pub fn columns(&self) -> &[ParityColumn] {
        &self.columns
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// True if there are no columns.
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// The columns as `(coefficient, parity, bitflip)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (u8, Bits, bool)> + '_ {
        self.columns.iter().map(|c| (c.coeff, c.parity.clone(), c.bitflip))
    }

    /// Parses the terms file format: one `<c> <bitflip> <parity bits>` line
    /// per term, preceded by an optional `n <k>` header.
    pub fn parse_terms(text: &str) -> Result<Self> {
        let mut n = None;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() == Some(&"n") && n.is_none() && terms.is_empty() {
                let k = toks
                    .get(1)
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|_| toks.len() == 2)
                    .ok_or(Error::Parse {
                        line: i + 1,
                        message: "expected header `n <k>`".into(),
                    })?;
                n = Some(k);
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            if toks.len() < 3 {
                return Err(bad("expected `<c> <bitflip> <parity bits>`".into()));
            }
            let c = toks[0]
                .parse::<u8>()
                .ok()
                .filter(|&c| c < 8)
                .ok_or_else(|| bad(format!("coefficient `{}` not in 0..8", toks[0])))?;
            let flip = match toks[1] {
                "0" => false,
                "1" => true,
                other => return Err(bad(format!("bit-flip must be 0 or 1, found `{other}`"))),
            };
            let bits: String = toks[2..].concat();
            let mut parity = Vec::with_capacity(bits.len());
            for ch in bits.chars() {
                match ch {
                    '0' => parity.push(0u8),
                    '1' => parity.push(1u8),
                    other => return Err(bad(format!("invalid parity bit `{other}`"))),
                }
            }
            let width = *n.get_or_insert(parity.len());
            if parity.len() != width {
                return Err(bad(format!("expected {width} parity bits, found {}", parity.len())));
            }
            terms.push((c, Bits::from_u8s(&parity), flip));
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "terms file has no terms and no `n <k>` header".into(),
        })?;
        ParityMatrix::new(n, terms)
    }
}

impl fmt::Display for ParityMatrix {
    /// The terms file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for c in &self.columns {
            let bits: String = (0..self.n).map(|i| if c.parity.get(i) { '1' } else { '0' }).collect();
            writeln!(f, "{} {} {}", c.coeff, u8::from(c.bitflip), bits)?;
        }
        Ok(())
    }
}
