//! Brute-force reference implementations, written independently of the
//! library code they check.

use std::collections::BTreeSet;

use num_complex::Complex64;
use proptest::prelude::*;
use stsynth::{Circuit, ConnectivityGraph, GateKind};

/// A connected graph on 2..=`max_n` vertices: a random spanning tree plus
/// random extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = ConnectivityGraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((1..=n, 1..=n), 0..=2 * n),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.index(i + 1) + 1, i + 2))
                    .collect();
                edges.extend(extra.into_iter().filter(|(u, v)| u != v));
                edges.sort_by_key(|&(u, v)| (u.min(v), u.max(v)));
                edges.dedup_by_key(|&mut (u, v)| (u.min(v), u.max(v)));
                ConnectivityGraph::new(n, &edges).unwrap()
            })
    })
}

/// All-pairs hop distances (Floyd–Warshall) within the vertices for which
/// `active[v - 1]` holds. Indexed `[u - 1][v - 1]`.
pub fn floyd_warshall(g: &ConnectivityGraph, active: &[bool]) -> Vec<Vec<Option<usize>>> {
    let n = g.num_vertices();
    let mut d = vec![vec![None; n]; n];
    for v in 0..n {
        if active[v] {
            d[v][v] = Some(0);
        }
    }
    for (u, v) in g.edges() {
        if active[u - 1] && active[v - 1] {
            d[u - 1][v - 1] = Some(1);
            d[v - 1][u - 1] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn connected_subset(g: &ConnectivityGraph, set: &BTreeSet<usize>) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if set.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Optimal Steiner tree weight: the smallest connected vertex set holding
/// every terminal, minus one. Also returns every optimal vertex set.
pub fn optimal_steiner(g: &ConnectivityGraph, terminals: &BTreeSet<usize>) -> (usize, Vec<BTreeSet<usize>>) {
    let n = g.num_vertices();
    let mut best = usize::MAX;
    let mut sets = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        if !terminals.is_subset(&set) || set.len() > best.saturating_add(1) || !connected_subset(g, &set) {
            continue;
        }
        let w = set.len() - 1;
        if w < best {
            best = w;
            sets.clear();
        }
        sets.push(set);
    }
    (best, sets)
}

/// Leaf counts of every spanning tree of `g` restricted to `set` (edge
/// subsets of the right size that connect the set).
pub fn spanning_tree_leaf_counts(g: &ConnectivityGraph, set: &BTreeSet<usize>) -> Vec<usize> {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|(u, v)| set.contains(u) && set.contains(v))
        .collect();
    let k = set.len() - 1;
    if k == 0 {
        return vec![1];
    }
    let mut out = Vec::new();
    for chosen in itertools::Itertools::combinations(edges.iter(), k) {
        // Union-find acyclicity check; k acyclic edges on k+1 vertices span.
        let mut parent: Vec<usize> = (0..=g.num_vertices()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut acyclic = true;
        let mut degree = vec![0usize; g.num_vertices() + 1];
        for &&(u, v) in &chosen {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
            degree[u] += 1;
            degree[v] += 1;
        }
        if acyclic {
            out.push(set.iter().filter(|&&v| degree[v] == 1).count());
        }
    }
    out
}

/// Dense unitary of `c` built column by column with an independent gate
/// application (amplitude permutations and diagonal phases).
pub fn unitary(c: &Circuit) -> Vec<Vec<Complex64>> {
    let n = c.num_qubits();
    let dim = 1usize << n;
    (0..dim)
        .map(|col| {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[col] = Complex64::new(1.0, 0.0);
            for g in c.gates() {
                let t = 1usize << (g.target - 1);
                let mut next = vec![Complex64::new(0.0, 0.0); dim];
                for (i, &a) in amps.iter().enumerate() {
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let bit = i & t != 0;
                    match g.kind {
                        GateKind::Cnot => {
                            let c = 1usize << (g.control.unwrap() - 1);
                            next[if i & c != 0 { i ^ t } else { i }] += a;
                        }
                        GateKind::X => next[i ^ t] += a,
                        GateKind::Y => {
                            // Y|0> = i|1>, Y|1> = -i|0>.
                            let f = if bit {
                                Complex64::new(0.0, -1.0)
                            } else {
                                Complex64::new(0.0, 1.0)
                            };
                            next[i ^ t] += a * f;
                        }
                        GateKind::H => {
                            let s = std::f64::consts::FRAC_1_SQRT_2;
                            next[i & !t] += a * s;
                            next[i | t] += if bit { -a * s } else { a * s };
                        }
                        kind => {
                            let eighths = match kind {
                                GateKind::T => 1,
                                GateKind::S => 2,
                                GateKind::Z => 4,
                                GateKind::Sdg => 6,
                                GateKind::Tdg => 7,
                                _ => unreachable!(),
                            };
                            let w = Complex64::from_polar(1.0, std::f64::consts::PI / 4.0 * f64::from(eighths));
                            next[i] += if bit { a * w } else { a };
                        }
                    }
                }
                amps = next;
            }
            amps
        })
        .collect()
}
