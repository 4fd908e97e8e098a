//! Connectivity-aware synthesis of {CNOT, X} circuits from an augmented
//! linear transform: Steiner-tree guided Gaussian elimination.
//!
//! The elimination has two phases. The first reduces the linear block to
//! upper-triangular form column by column, using a Steiner tree that spans
//! the pivot and the rows holding a 1 below it, restricted to the vertices
//! not yet fixed. The second phase does the same on the transpose and adds a
//! correction pass so that no row ever picks up a 1 from a higher-indexed row.
//! The final circuit is the second-phase CNOTs with control and target
//! swapped, followed by the first-phase CNOTs in reverse, then the X gates.
//!
//! Row-operation traversals of a sub-tree (layers counted from its root):
//!
//! * *bottom-up 1*: deepest layer to layer 2, `CNOT(parent, v)`;
//! * *top-down 1*: layer 1 to deepest, `CNOT(parent, v)`;
//! * *bottom-up 2*: deepest layer to layer 1, `CNOT(parent, v)` for every
//!   `v` with children;
//! * *top-down 2*: layer 2 to deepest, `CNOT(parent, v)` for every `v` with
//!   children.
//!
//! Mode 1 runs top-down 1 and bottom-up 2: each leaf accumulates the root
//! and the Steiner nodes on its path, and Steiner nodes are restored. Modes 2
//! and 3 run all four: each leaf accumulates exactly its sub-tree root and
//! every Steiner node is restored. Mode 4 emits the same CNOTs as mode 3 but
//! records a single combined row update per sub-tree (used by phase
//! synthesis, whose matrix is expressed in the wire basis).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{AugmentedLinearTransform, BoolMatrix};
use crate::topology::{bfs_distances, shortest_path, steiner_tree, ConnectivityGraph, SteinerTree, VertexSet};

/// Row-operation mode (see the module documentation).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOpMode {
    /// Upper-triangular reduction: top-down 1 and bottom-up 2 only.
    Reduce = 1,
    /// Lower reduction on the transpose; records sub-tree roots and leaves.
    Transposed = 2,
    /// Path correction; all four traversals.
    Correct = 3,
    /// Phase synthesis: flipped root-to-leaf paths, combined row update.
    Flipped = 4,
}

impl RowOpMode {
    /// Mode from its numeric code 1..=4.
    pub fn from_code(code: u8) -> Result<RowOpMode> {
        match code {
            1 => Ok(RowOpMode::Reduce),
            2 => Ok(RowOpMode::Transposed),
            3 => Ok(RowOpMode::Correct),
            4 => Ok(RowOpMode::Flipped),
            other => Err(Error::InvalidArgument(format!("row-op mode {other} not in 1..=4"))),
        }
    }
}

/// A rooted slice of a Steiner tree whose root and leaves are terminals and
/// whose interior vertices are Steiner nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubTree {
    root: usize,
    leaves: Vec<usize>,
    parent: BTreeMap<usize, usize>,
    layers: Vec<Vec<usize>>,
}

impl SubTree {
    fn from_parent_map(root: usize, leaves: Vec<usize>, parent: BTreeMap<usize, usize>) -> Self {
        let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
        fn depth_of(v: usize, parent: &BTreeMap<usize, usize>, depth: &mut BTreeMap<usize, usize>) -> usize {
            if let Some(&d) = depth.get(&v) {
                return d;
            }
            let d = depth_of(parent[&v], parent, depth) + 1;
            depth.insert(v, d);
            d
        }
        for &v in parent.keys() {
            depth_of(v, &parent, &mut depth);
        }
        let max = depth.values().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); max + 1];
        for (&v, &d) in &depth {
            layers[d].push(v);
        }
        SubTree {
            root,
            leaves,
            parent,
            layers,
        }
    }

    /// The root.
    pub fn root(&self) -> usize {
        self.root
    }

    /// Terminal leaves in discovery order.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    /// Parent of `v` within the sub-tree.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// Vertices grouped by depth, each layer ascending.
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Edges as `(parent, child)`, sorted by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().map(|(&c, &p)| (p, c)).collect()
    }

    fn has_children(&self, v: usize) -> bool {
        self.parent.values().any(|&p| p == v)
    }
}

/// Splits a Steiner tree into edge-disjoint sub-trees.
///
/// A BFS from the current root stops at every terminal it reaches; terminals
/// with further children seed later sub-trees. For [`RowOpMode::Flipped`],
/// every sub-tree is split into one path per leaf, stored with the leaf as
/// root and the original root as the single leaf. Order is creation order.
pub fn separate(tree: &SteinerTree, mode: RowOpMode) -> Vec<SubTree> {
    let mut out = Vec::new();
    let mut roots = VecDeque::from([tree.root()]);
    while let Some(root) = roots.pop_front() {
        let mut parent = BTreeMap::new();
        let mut leaves = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &c in tree.children(x) {
                parent.insert(c, x);
                if tree.is_terminal(c) {
                    leaves.push(c);
                    if !tree.children(c).is_empty() {
                        roots.push_back(c);
                    }
                } else {
                    queue.push_back(c);
                }
            }
        }
        if parent.is_empty() {
            continue;
        }
        if mode == RowOpMode::Flipped {
            for &leaf in &leaves {
                // Path leaf -> ... -> root, re-rooted at the leaf.
                let mut flipped = BTreeMap::new();
                let mut v = leaf;
                while v != root {
                    let p = parent[&v];
                    flipped.insert(p, v);
                    v = p;
                }
                out.push(SubTree::from_parent_map(leaf, vec![root], flipped));
            }
        } else {
            out.push(SubTree::from_parent_map(root, leaves, parent));
        }
    }
    out
}

/// Output of [`row_op`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowOpResult {
    /// Emitted CNOTs in order.
    pub cnots: Vec<Gate>,
    /// `(root, leaves)` of every sub-tree in creation order (mode 2 only).
    pub records: Vec<(usize, Vec<usize>)>,
}

/// Emits the CNOTs that eliminate along `tree` and applies the matching row
/// updates to `m` (row `v - 1` belongs to vertex `v`). Sub-trees are
/// processed from last to first.
pub fn row_op(m: &mut BoolMatrix, tree: &SteinerTree, mode: RowOpMode) -> Result<RowOpResult> {
    let subtrees = separate(tree, mode);
    let mut cnots = Vec::new();
    let full = mode != RowOpMode::Reduce;
    let per_gate = mode != RowOpMode::Flipped;
    for st in subtrees.iter().rev() {
        let depth = st.layers.len() - 1;
        let mut emit = |u: usize, v: usize, m: &mut BoolMatrix| -> Result<()> {
            cnots.push(Gate::cnot(u, v));
            if per_gate {
                m.row_add(u - 1, v - 1)?;
            }
            Ok(())
        };
        if full {
            for layer in (2..=depth).rev() {
                for &v in &st.layers[layer] {
                    emit(st.parent[&v], v, m)?;
                }
            }
        }
        for layer in 1..=depth {
            for &v in &st.layers[layer] {
                emit(st.parent[&v], v, m)?;
            }
        }
        for layer in (1..=depth).rev() {
            for &v in &st.layers[layer] {
                if st.has_children(v) {
                    emit(st.parent[&v], v, m)?;
                }
            }
        }
        if full {
            for layer in 2..=depth {
                for &v in &st.layers[layer] {
                    if st.has_children(v) {
                        emit(st.parent[&v], v, m)?;
                    }
                }
            }
        }
        if !per_gate {
            // Net effect of a flipped path: wire(leaf) ^= wire(root), which in
            // the wire basis of the parity matrix is row(root) ^= row(leaf).
            m.row_add(st.leaves[0] - 1, st.root - 1)?;
        }
    }
    let records = if mode == RowOpMode::Transposed {
        subtrees.iter().map(|s| (s.root, s.leaves.clone())).collect()
    } else {
        Vec::new()
    };
    Ok(RowOpResult { cnots, records })
}

/// Intermediate state of one column of the elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnTrace {
    /// Pivot column / vertex (1-based).
    pub column: usize,
    /// Working matrix when the column is reached.
    pub matrix_before: BoolMatrix,
    /// CNOTs that moved a 1 onto the diagonal (first phase only).
    pub diagonal_fix: Vec<Gate>,
    /// Working matrix after the diagonal fix.
    pub matrix_after_fix: BoolMatrix,
    /// CNOTs of the Steiner-tree row operation.
    pub row_op: Vec<Gate>,
    /// CNOTs of the correction pass (second phase only).
    pub correction: Vec<Gate>,
    /// Working matrix after the column is fixed.
    pub matrix_after: BoolMatrix,
}

/// Full record of a synthesis run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSynthTrace {
    /// First phase (upper-triangular reduction), one entry per column.
    pub upper: Vec<ColumnTrace>,
    /// Second phase (on the transpose), one entry per column.
    pub lower: Vec<ColumnTrace>,
    /// X gates clearing the bit-flip column.
    pub x_gates: Vec<Gate>,
    /// The synthesized circuit.
    pub circuit: Circuit,
}

/// Synthesizes a {CNOT, X} circuit realizing `a` whose CNOTs all lie on
/// edges of `g`.
///
/// A transform on fewer qubits than `g` has vertices is extended by the
/// identity; the returned circuit always has one qubit per vertex.
pub fn linear_tf_synth(a: &AugmentedLinearTransform, g: &ConnectivityGraph) -> Result<Circuit> {
    linear_tf_synth_traced(a, g).map(|t| t.circuit)
}

/// Embeds `a` into `n` qubits by acting as the identity on the extra ones.
pub fn widen_transform(a: &AugmentedLinearTransform, n: usize) -> Result<AugmentedLinearTransform> {
    if a.n() > n {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit transform on a {n}-vertex graph",
            a.n()
        )));
    }
    let mut block = BoolMatrix::identity(n);
    let mut flips = crate::linalg::Bits::zeros(n);
    let small = a.linear_block();
    for r in 0..a.n() {
        *block.row_mut(r) = small.row(r).resized(n);
        flips.set(r, a.bitflip(r));
    }
    AugmentedLinearTransform::from_parts(&block, &flips)
}

/// [`linear_tf_synth`] that also returns every intermediate step.
pub fn linear_tf_synth_traced(a: &AugmentedLinearTransform, g: &ConnectivityGraph) -> Result<LinearSynthTrace> {
    let n = g.num_vertices();
    let a = widen_transform(a, n)?;
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let everything = VertexSet::all(n);

    let x_gates: Vec<Gate> = (0..n)
        .filter(|&r| a.bitflip(r))
        .map(|r| Gate::single(GateKind::X, r + 1))
        .collect();
    let mut m = a.linear_block();

    // First phase: upper-triangular form.
    let mut upper = Vec::with_capacity(n);
    let mut y1: Vec<Gate> = Vec::new();
    let mut active = VertexSet::all(n);
    for i in 1..=n {
        let matrix_before = m.clone();
        let diagonal_fix = fix_diagonal(&mut m, g, i, &active)?;
        let matrix_after_fix = m.clone();
        let terminals = column_terminals(&m, i);
        let ops = match steiner_tree(g, &active, &terminals, i) {
            Ok(tree) => row_op(&mut m, &tree, RowOpMode::Reduce)?,
            Err(Error::Disconnected(_)) => {
                // Route through fixed vertices with the restoring traversals.
                let tree = steiner_tree(g, &everything, &terminals, i)?;
                row_op(&mut m, &tree, RowOpMode::Correct)?
            }
            Err(e) => return Err(e),
        };
        y1.extend_from_slice(&diagonal_fix);
        y1.extend_from_slice(&ops.cnots);
        active.remove(i);
        upper.push(ColumnTrace {
            column: i,
            matrix_before,
            diagonal_fix,
            matrix_after_fix,
            row_op: ops.cnots,
            correction: Vec::new(),
            matrix_after: m.clone(),
        });
    }
    debug_assert!(m.is_upper_triangular());

    // Second phase: the transpose.
    let mut m = m.transpose();
    let mut lower = Vec::with_capacity(n);
    let mut y2: Vec<Gate> = Vec::new();
    let mut active = VertexSet::all(n);
    for i in 1..=n {
        let matrix_before = m.clone();
        let diagonal_fix = fix_diagonal(&mut m, g, i, &active)?;
        let matrix_after_fix = m.clone();
        let terminals = column_terminals(&m, i);
        let tree = match steiner_tree(g, &active, &terminals, i) {
            Ok(tree) => tree,
            Err(Error::Disconnected(_)) => steiner_tree(g, &everything, &terminals, i)?,
            Err(e) => return Err(e),
        };
        let ops = row_op(&mut m, &tree, RowOpMode::Transposed)?;
        let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
        for (r, leaves) in &ops.records {
            for &l in leaves {
                partner.insert(l, *r);
            }
        }
        let mut correction = Vec::new();
        for (root, leaves) in &ops.records {
            let mut pending: Vec<usize> = leaves.iter().copied().filter(|&l| l < *root).collect();
            pending.sort_unstable();
            for l in pending {
                let mut r = *root;
                while r > l {
                    let path = match shortest_path(g, r, l, &active) {
                        Ok(p) => p,
                        Err(Error::NoPath { .. }) => shortest_path(g, r, l, &everything)?,
                        Err(e) => return Err(e),
                    };
                    let ops = row_op(&mut m, &SteinerTree::from_path(&path), RowOpMode::Correct)?;
                    correction.extend(ops.cnots);
                    let next = partner[&r];
                    partner.insert(l, next);
                    r = next;
                }
            }
        }
        y2.extend_from_slice(&diagonal_fix);
        y2.extend_from_slice(&ops.cnots);
        y2.extend_from_slice(&correction);
        active.remove(i);
        lower.push(ColumnTrace {
            column: i,
            matrix_before,
            diagonal_fix,
            matrix_after_fix,
            row_op: ops.cnots,
            correction,
            matrix_after: m.clone(),
        });
    }
    if m != BoolMatrix::identity(n) {
        return Err(Error::InvalidArgument(
            "elimination did not reach the identity (internal error)".into(),
        ));
    }

    let mut circuit = Circuit::new(n);
    for gate in &y2 {
        let c = gate.control.expect("CNOT");
        circuit.push(Gate::cnot(gate.target, c))?;
    }
    for gate in y1.iter().rev() {
        circuit.push(*gate)?;
    }
    for gate in &x_gates {
        circuit.push(*gate)?;
    }
    Ok(LinearSynthTrace {
        upper,
        lower,
        x_gates,
        circuit,
    })
}

/// `{i} ∪ {j > i : m[j][i] = 1}`.
fn column_terminals(m: &BoolMatrix, i: usize) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = ((i + 1)..=m.num_rows()).filter(|&j| m.get(j - 1, i - 1)).collect();
    s.insert(i);
    s
}

/// Makes `m[i][i] = 1` by pulling the 1 of the nearest row `j > i` along a
/// shortest path (ties: smallest `j`). Falls back to a restoring path through
/// fixed vertices when no such row is reachable among the active ones.
fn fix_diagonal(m: &mut BoolMatrix, g: &ConnectivityGraph, i: usize, active: &VertexSet) -> Result<Vec<Gate>> {
    if m.get(i - 1, i - 1) {
        return Ok(Vec::new());
    }
    let candidates: Vec<usize> = ((i + 1)..=m.num_rows()).filter(|&j| m.get(j - 1, i - 1)).collect();
    if candidates.is_empty() {
        return Err(Error::Singular);
    }
    let nearest = |set: &VertexSet| {
        let dist = bfs_distances(g, i, set);
        candidates
            .iter()
            .filter_map(|&j| dist[j].map(|d| (d, j)))
            .min()
            .map(|(_, j)| j)
    };
    if let Some(j) = nearest(active) {
        let path = shortest_path(g, i, j, active)?;
        let mut gates = Vec::new();
        for k in (1..path.len()).rev() {
            let (child, parent) = (path[k], path[k - 1]);
            gates.push(Gate::cnot(child, parent));
            m.row_add(child - 1, parent - 1)?;
        }
        return Ok(gates);
    }
    let everything = VertexSet::all(g.num_vertices());
    let j = nearest(&everything).ok_or(Error::NoPath {
        from: i,
        to: candidates[0],
    })?;
    let path = shortest_path(g, j, i, &everything)?;
    Ok(row_op(m, &SteinerTree::from_path(&path), RowOpMode::Correct)?.cnots)
}
