//! Connectivity graphs, shortest paths inside vertex subsets, and the
//! merge-closest-components Steiner tree heuristic.
//!
//! Vertices are 1-indexed, matching qubit indices.
//!
//! Tie-breaking is fixed so every result is deterministic:
//! * BFS explores neighbours in ascending vertex order.
//! * Among minimal-hop paths from `u` to `v`, [`shortest_path`] returns the
//!   one whose vertex sequence (read from `u`) is lexicographically greatest.
//! * The Steiner heuristic merges the pair of components at minimum distance,
//!   breaking ties by the smaller sorted endpoint pair `(min, max)`, and joins
//!   them along the shortest path from `min` to `max` chosen as above.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::strip_comment;

/// Names of the built-in architectures.
pub const PRESET_NAMES: [&str; 6] = [
    "9q-square",
    "16q-square",
    "rigetti-16q-aspen",
    "ibm-qx5",
    "ibm-q20-tokyo",
    "appendix-2x3",
];

/// The five benchmark architectures (every preset except the 6-vertex example).
pub const BENCHMARK_PRESETS: [&str; 5] = [
    "9q-square",
    "16q-square",
    "rigetti-16q-aspen",
    "ibm-qx5",
    "ibm-q20-tokyo",
];

/// A simple undirected graph on vertices `1..=n` with unit edge weights.
#[derive(Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl ConnectivityGraph {
    /// Builds a graph, rejecting self loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, bound: n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ConnectivityGraph { n, adj })
    }

    /// A `rows × cols` grid numbered row-major from 1.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let id = |r: usize, c: usize| r * cols + c + 1;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        ConnectivityGraph::new(rows * cols, &edges).expect("grid edges are valid")
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// True if `u` and `v` are adjacent.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// True if the graph is connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let d = bfs_distances(self, 1, &VertexSet::all(self.n));
        d[1..].iter().all(Option::is_some)
    }

    /// Parses the graph file format: `vertices <n>` then `edge <u> <v>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let bad = |message: &str| Error::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| t.parse::<usize>().map_err(|_| bad("expected a vertex index"));
            match (n, toks.as_slice()) {
                (None, ["vertices", k]) => n = Some(num(k)?),
                (None, _) => return Err(bad("expected header `vertices <n>`")),
                (Some(_), ["edge", u, v]) => edges.push((num(u)?, num(v)?)),
                (Some(_), _) => return Err(bad("expected `edge <u> <v>`")),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing header `vertices <n>`".into(),
        })?;
        ConnectivityGraph::new(n, &edges)
    }
}

impl fmt::Display for ConnectivityGraph {
    /// The graph file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ConnectivityGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConnectivityGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Looks up a built-in architecture by name.
pub fn preset_graph(name: &str) -> Result<ConnectivityGraph> {
    let g = match name {
        "9q-square" => ConnectivityGraph::grid(3, 3),
        "16q-square" => ConnectivityGraph::grid(4, 4),
        "rigetti-16q-aspen" => {
            // Two octagons (1..8 and 9..16) joined by two couplers.
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for base in [0, 8] {
                for k in 0..8 {
                    edges.push((base + k + 1, base + (k + 1) % 8 + 1));
                }
            }
            edges.extend([(2, 15), (3, 14)]);
            ConnectivityGraph::new(16, &edges)?
        }
        "ibm-qx5" => {
            // A 2x8 ladder: a 16-cycle plus six rungs (0-based device labels + 1).
            let mut edges: Vec<(usize, usize)> = (0..16).map(|k| (k + 1, (k + 1) % 16 + 1)).collect();
            edges.extend([(2, 15), (3, 14), (4, 13), (5, 12), (6, 11), (7, 10)].map(|(a, b)| (a + 1, b + 1)));
            ConnectivityGraph::new(16, &edges)?
        }
        "ibm-q20-tokyo" => {
            // 4x5 grid with crossed diagonals in six of the unit squares.
            let mut edges = ConnectivityGraph::grid(4, 5).edges();
            let diagonals = [
                (1, 7),
                (2, 6),
                (3, 9),
                (4, 8),
                (5, 11),
                (6, 10),
                (7, 13),
                (8, 12),
                (11, 17),
                (12, 16),
                (13, 19),
                (14, 18),
            ];
            edges.extend(diagonals.map(|(a, b)| (a + 1, b + 1)));
            ConnectivityGraph::new(20, &edges)?
        }
        "appendix-2x3" => ConnectivityGraph::new(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (2, 5)])?,
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
                valid: PRESET_NAMES.join(", "),
            })
        }
    };
    Ok(g)
}

/// A subset of the vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    mask: Vec<bool>,
}

impl VertexSet {
    /// Every vertex `1..=n`.
    pub fn all(n: usize) -> Self {
        let mut mask = vec![true; n + 1];
        mask[0] = false;
        VertexSet { mask }
    }

    /// The given vertices of a graph on `n` vertices.
    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; n + 1];
        for v in vertices {
            mask[v] = true;
        }
        VertexSet { mask }
    }

    /// Membership test.
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    /// Removes a vertex.
    pub fn remove(&mut self, v: usize) {
        if let Some(m) = self.mask.get_mut(v) {
            *m = false;
        }
    }

    /// Adds a vertex.
    pub fn insert(&mut self, v: usize) {
        self.mask[v] = true;
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v)
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// True if empty.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Hop distances from `source` inside `active` (index by vertex; `None` if
/// unreachable or inactive).
pub fn bfs_distances(g: &ConnectivityGraph, source: usize, active: &VertexSet) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.num_vertices() + 1];
    if !active.contains(source) {
        return dist;
    }
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in g.neighbors(u) {
            if active.contains(w) && dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn check_vertex(g: &ConnectivityGraph, v: usize) -> Result<()> {
    if v == 0 || v > g.num_vertices() {
        Err(Error::IndexOutOfRange {
            index: v,
            bound: g.num_vertices(),
        })
    } else {
        Ok(())
    }
}

/// Minimal-hop path from `u` to `v` using only `active` vertices, including
/// both endpoints. Ties go to the lexicographically greatest vertex sequence.
pub fn shortest_path(g: &ConnectivityGraph, u: usize, v: usize, active: &VertexSet) -> Result<Vec<usize>> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let dist = bfs_distances(g, v, active);
    path_along(g, u, &dist, active).ok_or(Error::NoPath { from: u, to: v })
}

fn path_along(
    g: &ConnectivityGraph,
    u: usize,
    dist_to_target: &[Option<usize>],
    active: &VertexSet,
) -> Option<Vec<usize>> {
    if !active.contains(u) {
        return None;
    }
    let mut d = dist_to_target[u]?;
    let mut path = vec![u];
    let mut cur = u;
    while d > 0 {
        cur = *g
            .neighbors(cur)
            .iter()
            .rev()
            .find(|&&w| active.contains(w) && dist_to_target[w] == Some(d - 1))
            .expect("a BFS predecessor exists on every shortest path");
        path.push(cur);
        d -= 1;
    }
    Some(path)
}

/// A tree rooted at `root` whose leaves are all terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    root: usize,
    terminals: BTreeSet<usize>,
    parent: BTreeMap<usize, usize>,
    children: BTreeMap<usize, Vec<usize>>,
    layer: BTreeMap<usize, usize>,
}

impl SteinerTree {
    /// Roots an undirected tree given by its edges at `root`.
    ///
    /// `edges` must form a tree containing `root` (a single vertex when empty).
    pub fn from_edges(root: usize, terminals: BTreeSet<usize>, edges: &[(usize, usize)]) -> Self {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        adj.entry(root).or_default();
        for &(a, b) in edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut parent = BTreeMap::new();
        let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut layer = BTreeMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<usize> = adj[&u].iter().copied().filter(|w| !layer.contains_key(w)).collect();
            next.sort_unstable();
            for &w in &next {
                layer.insert(w, layer[&u] + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
            children.insert(u, next);
        }
        SteinerTree {
            root,
            terminals,
            parent,
            children,
            layer,
        }
    }

    /// A path `path[0] - ... - path[last]` rooted at its first vertex, with
    /// the two endpoints as terminals.
    pub fn from_path(path: &[usize]) -> Self {
        let edges: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
        let terminals = BTreeSet::from([path[0], *path.last().expect("non-empty path")]);
        SteinerTree::from_edges(path[0], terminals, &edges)
    }

    /// The root.
    pub fn root(&self) -> usize {
        self.root
    }

    /// The terminal set.
    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    /// True if `v` is a terminal.
    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.contains(&v)
    }

    /// Every vertex of the tree, ascending.
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.layer.keys().copied()
    }

    /// True if `v` is in the tree.
    pub fn contains(&self, v: usize) -> bool {
        self.layer.contains_key(&v)
    }

    /// Parent of `v` (`None` for the root).
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// Children of `v` in ascending order.
    pub fn children(&self, v: usize) -> &[usize] {
        self.children.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Depth of `v` (root = 0).
    pub fn layer(&self, v: usize) -> Option<usize> {
        self.layer.get(&v).copied()
    }

    /// Tree edges as `(parent, child)`, in BFS order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for &c in self.children(u) {
                out.push((u, c));
                queue.push_back(c);
            }
        }
        out
    }

    /// Number of edges.
    pub fn weight(&self) -> usize {
        self.parent.len()
    }

    /// Vertices with no children.
    pub fn leaves(&self) -> Vec<usize> {
        self.nodes().filter(|&v| self.children(v).is_empty()).collect()
    }

    /// Non-terminal vertices.
    pub fn steiner_nodes(&self) -> Vec<usize> {
        self.nodes().filter(|v| !self.terminals.contains(v)).collect()
    }
}

/// Approximate minimum Steiner tree spanning `terminals` inside `active`,
/// rooted at `root`.
///
/// Starts from one component per terminal, repeatedly joins the two closest
/// components along a shortest path, then takes a minimum spanning tree of
/// the merged component and prunes non-terminal leaves.
pub fn steiner_tree(
    g: &ConnectivityGraph,
    active: &VertexSet,
    terminals: &BTreeSet<usize>,
    root: usize,
) -> Result<SteinerTree> {
    if !terminals.contains(&root) {
        return Err(Error::InvalidArgument(format!("root {root} is not a terminal")));
    }
    for &t in terminals {
        check_vertex(g, t)?;
        if !active.contains(t) {
            return Err(Error::InvalidArgument(format!("terminal {t} is not active")));
        }
    }
    struct Component {
        vertices: BTreeSet<usize>,
        edges: Vec<(usize, usize)>,
    }
    let mut comps: Vec<Component> = terminals
        .iter()
        .map(|&t| Component {
            vertices: BTreeSet::from([t]),
            edges: Vec::new(),
        })
        .collect();
    let mut dist_cache: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
    while comps.len() > 1 {
        // (distance, min endpoint, max endpoint, component i, component j)
        let mut best: Option<(usize, usize, usize, usize, usize)> = None;
        for i in 0..comps.len() {
            for &a in &comps[i].vertices {
                let da = dist_cache.entry(a).or_insert_with(|| bfs_distances(g, a, active));
                for (j, cj) in comps.iter().enumerate().skip(i + 1) {
                    for &b in &cj.vertices {
                        let Some(d) = da[b] else { continue };
                        let key = (d, a.min(b), a.max(b), i, j);
                        if best.is_none_or(|cur| key < cur) {
                            best = Some(key);
                        }
                    }
                }
            }
        }
        let Some((_, lo, hi, i, j)) = best else {
            return Err(Error::Disconnected(terminals.iter().copied().collect()));
        };
        let dist_hi = dist_cache.entry(hi).or_insert_with(|| bfs_distances(g, hi, active));
        let path = path_along(g, lo, dist_hi, active).expect("distance was finite");
        let cj = comps.remove(j);
        let ci = &mut comps[i];
        ci.vertices.extend(cj.vertices);
        ci.edges.extend(cj.edges);
        ci.vertices.extend(path.iter().copied());
        ci.edges
            .extend(path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))));
    }
    let comp = comps.pop().expect("at least the root terminal");

    // Minimum spanning tree (all weights 1, so lexicographic Kruskal).
    let mut edges = comp.edges;
    edges.sort_unstable();
    edges.dedup();
    let mut uf: BTreeMap<usize, usize> = comp.vertices.iter().map(|&v| (v, v)).collect();
    fn find(uf: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = uf[&v];
        if p == v {
            return v;
        }
        let r = find(uf, p);
        uf.insert(v, r);
        r
    }
    let mut tree_edges = Vec::new();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf.insert(ra, rb);
            tree_edges.push((a, b));
        }
    }

    // Prune non-terminal leaves until none remain.
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &tree_edges {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        let prunable: BTreeSet<usize> = degree
            .iter()
            .filter(|(v, &d)| d == 1 && !terminals.contains(v))
            .map(|(&v, _)| v)
            .collect();
        if prunable.is_empty() {
            break;
        }
        tree_edges.retain(|(a, b)| !prunable.contains(a) && !prunable.contains(b));
    }
    Ok(SteinerTree::from_edges(root, terminals.clone(), &tree_edges))
}
