//! Multigraphs with parallel edges, loops and stable edge identities.
//!
//! Every lemma in the construction recolours individual edges, so parallel
//! edges are kept as distinct records and subgraphs keep the identities of
//! the edges they were taken from.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type ColourId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite `v`; `v` itself for a loop.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// An undirected multigraph on vertices `0..vertex_count`.
///
/// Edges are kept sorted by id. Ids are unique but need not be contiguous,
/// which lets a subgraph share identities with its parent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize) -> Self {
        MultiGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from `(a, b)` pairs, numbering edges `0..`.
    pub fn from_pairs(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let mut g = MultiGraph::new(vertex_count);
        for (a, b) in pairs {
            g.add_edge(a, b);
        }
        g
    }

    /// Builds a graph from explicit edge records. Ids must be unique.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable_by_key(|e| e.id);
        assert!(
            edges.windows(2).all(|w| w[0].id != w[1].id),
            "duplicate edge id"
        );
        assert!(
            edges
                .iter()
                .all(|e| e.a < vertex_count && e.b < vertex_count),
            "edge endpoint out of range"
        );
        MultiGraph {
            vertex_count,
            edges,
        }
    }

    /// Appends an edge with the next free id and returns that id.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        assert!(a < self.vertex_count && b < self.vertex_count);
        let id = self.edges.last().map_or(0, |e| e.id + 1);
        self.edges.push(Edge { id, a, b });
        id
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_some()
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.a == v) + usize::from(e.b == v))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Incident `(edge id, neighbour)` pairs per vertex, in edge id order.
    /// A loop is listed once.
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.a].push((e.id, e.b));
            if !e.is_loop() {
                adj[e.b].push((e.id, e.a));
            }
        }
        adj
    }

    /// Number of edges joining `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.a == u && e.b == v) || (e.a == v && e.b == u))
            .count()
    }

    /// Full symmetric multiplicity matrix; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.vertex_count]; self.vertex_count];
        for e in &self.edges {
            m[e.a][e.b] += 1;
            if !e.is_loop() {
                m[e.b][e.a] += 1;
            }
        }
        m
    }

    /// Spanning subgraph on the edges accepted by `keep`, ids preserved.
    pub fn subgraph(&self, mut keep: impl FnMut(&Edge) -> bool) -> MultiGraph {
        MultiGraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().copied().filter(|e| keep(e)).collect(),
        }
    }

    /// `G - X`: drops every edge incident with a vertex of `removed`.
    /// The vertex set is kept so ids stay comparable.
    pub fn without_vertices(&self, removed: &[VertexId]) -> MultiGraph {
        self.subgraph(|e| !removed.iter().any(|&v| e.touches(v)))
    }

    /// Same edges grouped by vertex pair, independent of ids.
    pub fn edge_multiset(&self) -> BTreeMap<(VertexId, VertexId), usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry((e.a.min(e.b), e.a.max(e.b))).or_insert(0) += 1;
        }
        out
    }

    /// Shortest path from `from` to `to` as a list of edge ids, found by a
    /// breadth-first search that scans neighbours in edge id order.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<EdgeId>> {
        self.shortest_path_avoiding(from, to, None)
    }

    fn shortest_path_avoiding(
        &self,
        from: VertexId,
        to: VertexId,
        skip: Option<EdgeId>,
    ) -> Option<Vec<EdgeId>> {
        if from == to {
            return Some(Vec::new());
        }
        let adj = self.adjacency();
        let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(id, w) in &adj[u] {
                if Some(id) == skip || seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some((id, u));
                if w == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while let Some((id, prev)) = parent[cur] {
                        path.push(id);
                        cur = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Edge ids of a cycle through `v`, or `None` if `v` lies on no cycle.
    ///
    /// A loop at `v` is a cycle of length one and a pair of parallel edges a
    /// cycle of length two. Otherwise the first incident edge (by id) that
    /// closes up is used, completed by a shortest return path.
    pub fn cycle_through(&self, v: VertexId) -> Option<Vec<EdgeId>> {
        if let Some(l) = self.edges.iter().find(|e| e.is_loop() && e.a == v) {
            return Some(vec![l.id]);
        }
        for e in self.edges.iter().filter(|e| e.touches(v)) {
            let u = e.other(v);
            if let Some(mut back) = self.shortest_path_avoiding(u, v, Some(e.id)) {
                back.insert(0, e.id);
                return Some(back);
            }
        }
        None
    }
}

/// An assignment of a colour to every edge of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colour_of: BTreeMap<EdgeId, ColourId>,
    colour_count: usize,
}

impl Colouring {
    pub fn new(colour_count: usize, colour_of: BTreeMap<EdgeId, ColourId>) -> Self {
        assert!(colour_of.values().all(|&c| c < colour_count));
        Colouring {
            colour_of,
            colour_count,
        }
    }

    /// Colours edges from `(edge id, colour)` pairs.
    pub fn from_pairs(
        colour_count: usize,
        pairs: impl IntoIterator<Item = (EdgeId, ColourId)>,
    ) -> Self {
        Colouring::new(colour_count, pairs.into_iter().collect())
    }

    pub fn colour_count(&self) -> usize {
        self.colour_count
    }

    pub fn colour(&self, e: EdgeId) -> Option<ColourId> {
        self.colour_of.get(&e).copied()
    }

    pub fn set(&mut self, e: EdgeId, c: ColourId) {
        assert!(c < self.colour_count);
        self.colour_of.insert(e, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, ColourId)> + '_ {
        self.colour_of.iter().map(|(&e, &c)| (e, c))
    }

    /// True when every edge of `g` (and nothing else) is coloured.
    pub fn is_total_on(&self, g: &MultiGraph) -> bool {
        self.colour_of.len() == g.edge_count()
            && g.edge_ids().all(|e| self.colour_of.contains_key(&e))
    }

    /// The spanning subgraph of `g` formed by colour `c`.
    pub fn class(&self, g: &MultiGraph, c: ColourId) -> MultiGraph {
        g.subgraph(|e| self.colour(e.id) == Some(c))
    }

    /// Number of edges per colour.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.colour_count];
        for &c in self.colour_of.values() {
            sizes[c] += 1;
        }
        sizes
    }

    /// `table[v][c]`: number of colour-`c` edge ends at `v` (loops twice).
    pub fn degree_table(&self, g: &MultiGraph) -> Vec<Vec<usize>> {
        let mut table = vec![vec![0; self.colour_count]; g.vertex_count()];
        for e in g.edges() {
            let c = self.colour_of[&e.id];
            table[e.a][c] += 1;
            table[e.b][c] += 1;
        }
        table
    }
}

/// Union-find over vertex ids.
struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components: their number and a component id per vertex.
///
/// Component ids are assigned in order of each component's lowest vertex.
pub fn components(g: &MultiGraph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut sets = DisjointSets::new(n);
    for e in g.edges() {
        sets.union(e.a, e.b);
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let comp = (0..n)
        .map(|v| {
            let root = sets.find(v);
            if label[root] == usize::MAX {
                label[root] = count;
                count += 1;
            }
            label[root]
        })
        .collect();
    (count, comp)
}

pub fn component_count(g: &MultiGraph) -> usize {
    components(g).0
}

pub fn is_connected(g: &MultiGraph) -> bool {
    component_count(g) <= 1
}

/// Directed version of each edge, keyed by edge id.
pub type Orientation = BTreeMap<EdgeId, (VertexId, VertexId)>;

/// Orients every edge so that each vertex has in-degree equal to out-degree.
///
/// Edges are consumed as closed trails; every trail is balanced, so their
/// union is too. Iterative, so high-multiplicity graphs are fine.
pub fn euler_orientation(g: &MultiGraph) -> Result<Orientation> {
    let degrees = g.degrees();
    if let Some((v, &d)) = degrees.iter().enumerate().find(|(_, &d)| d % 2 == 1) {
        return Err(Error::OddDegreeVertex {
            vertex: v,
            degree: d,
        });
    }
    let adj = g.adjacency();
    let mut used: BTreeMap<EdgeId, bool> = g.edge_ids().map(|id| (id, false)).collect();
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut out = Orientation::new();
    for start in 0..g.vertex_count() {
        loop {
            // Open a new trail at `start` if it still has unused edges.
            let mut at = start;
            let mut moved = false;
            loop {
                while cursor[at] < adj[at].len() && used[&adj[at][cursor[at]].0] {
                    cursor[at] += 1;
                }
                let Some(&(id, next)) = adj[at].get(cursor[at]) else {
                    break;
                };
                used.insert(id, true);
                out.insert(id, (at, next));
                at = next;
                moved = true;
            }
            // Even degrees mean a trail can only get stuck where it began.
            if at != start {
                return Err(Error::InternalInconsistency(format!(
                    "trail from {start} stuck at {at}"
                )));
            }
            if !moved {
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    /// Vertex-disjoint cycles plus exactly one path (possibly a lone vertex).
    CyclesPlusOnePath,
    /// A single path through every vertex.
    HamiltonPath,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorShape {
    pub kind: ShapeKind,
    pub component_count: usize,
}

impl FactorShape {
    /// Hamilton paths are the degenerate case with no cycles.
    pub fn is_cycles_plus_one_path(&self) -> bool {
        matches!(
            self.kind,
            ShapeKind::CyclesPlusOnePath | ShapeKind::HamiltonPath
        )
    }
}

/// Classifies a factor as a Hamilton path, cycles plus one path, or neither.
pub fn classify_factor(g: &MultiGraph) -> FactorShape {
    let (count, comp) = components(g);
    let degrees = g.degrees();
    let mut kind = ShapeKind::Other;
    if degrees.iter().all(|&d| d <= 2) && g.vertex_count() > 0 {
        // With maximum degree 2 a component is a cycle iff it has as many
        // edges as vertices, and a path iff it has one fewer.
        let mut vertices = vec![0usize; count];
        let mut edges = vec![0usize; count];
        for v in 0..g.vertex_count() {
            vertices[comp[v]] += 1;
        }
        for e in g.edges() {
            edges[comp[e.a]] += 1;
        }
        let paths = (0..count).filter(|&c| edges[c] + 1 == vertices[c]).count();
        let cycles = (0..count).filter(|&c| edges[c] == vertices[c]).count();
        if paths == 1 && paths + cycles == count {
            kind = if count == 1 {
                ShapeKind::HamiltonPath
            } else {
                ShapeKind::CyclesPlusOnePath
            };
        }
    }
    FactorShape {
        kind,
        component_count: count,
    }
}

/// Vertex sequence of a Hamilton path factor, starting at its lower end.
pub fn path_sequence(g: &MultiGraph) -> Option<Vec<VertexId>> {
    if classify_factor(g).kind != ShapeKind::HamiltonPath {
        return None;
    }
    let n = g.vertex_count();
    if n == 1 {
        return Some(vec![0]);
    }
    let degrees = g.degrees();
    let start = (0..n).find(|&v| degrees[v] == 1)?;
    let adj = g.adjacency();
    let mut seq = vec![start];
    let mut prev_edge = None;
    let mut at = start;
    while seq.len() < n {
        let &(id, next) = adj[at].iter().find(|&&(id, _)| Some(id) != prev_edge)?;
        seq.push(next);
        prev_edge = Some(id);
        at = next;
    }
    Some(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_twice() {
        let g = MultiGraph::from_pairs(2, [(0, 0), (0, 1)]);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degrees(), vec![3, 1]);
        assert_eq!(g.multiplicity(0, 0), 1);
    }

    #[test]
    fn component_examples() {
        assert_eq!(component_count(&MultiGraph::new(3)), 3);
        let path = MultiGraph::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(component_count(&path), 1);
        let two = MultiGraph::from_pairs(4, [(0, 1), (0, 1), (2, 3), (3, 2)]);
        let (count, comp) = components(&two);
        assert_eq!(count, 2);
        assert_eq!(comp, vec![0, 0, 1, 1]);
    }

    fn assert_balanced(g: &MultiGraph, o: &Orientation) {
        let mut balance = vec![0i64; g.vertex_count()];
        for e in g.edges() {
            let (t, h) = o[&e.id];
            assert!((t, h) == (e.a, e.b) || (t, h) == (e.b, e.a));
            balance[t] += 1;
            balance[h] -= 1;
        }
        assert!(balance.iter().all(|&b| b == 0), "{balance:?}");
    }

    #[test]
    fn euler_orientation_examples() {
        let square = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let o = euler_orientation(&square).unwrap();
        assert_balanced(&square, &o);

        let parallel = MultiGraph::from_pairs(2, [(0, 1), (0, 1)]);
        let o = euler_orientation(&parallel).unwrap();
        assert_ne!(o[&0], o[&1]);
        assert_balanced(&parallel, &o);

        let lp = MultiGraph::from_pairs(1, [(0, 0)]);
        assert_eq!(euler_orientation(&lp).unwrap()[&0], (0, 0));
    }

    #[test]
    fn euler_orientation_rejects_odd_degree() {
        let g = MultiGraph::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(
            euler_orientation(&g),
            Err(Error::OddDegreeVertex {
                vertex: 0,
                degree: 1
            })
        );
    }

    #[test]
    fn classify_examples() {
        let p4 = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(classify_factor(&p4).kind, ShapeKind::HamiltonPath);

        let tri_edge = MultiGraph::from_pairs(5, [(0, 1), (1, 2), (2, 0), (3, 4)]);
        let shape = classify_factor(&tri_edge);
        assert_eq!(shape.kind, ShapeKind::CyclesPlusOnePath);
        assert_eq!(shape.component_count, 2);

        let star = MultiGraph::from_pairs(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(classify_factor(&star).kind, ShapeKind::Other);

        // Two paths is not one path.
        let two_paths = MultiGraph::from_pairs(4, [(0, 1), (2, 3)]);
        assert_eq!(classify_factor(&two_paths).kind, ShapeKind::Other);

        // A lone vertex is a path of length zero.
        let tri_point = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            classify_factor(&tri_point).kind,
            ShapeKind::CyclesPlusOnePath
        );
    }

    #[test]
    fn path_sequence_walks_from_lower_end() {
        let g = MultiGraph::from_pairs(4, [(2, 0), (3, 1), (0, 3)]);
        assert_eq!(path_sequence(&g), Some(vec![1, 3, 0, 2]));
    }

    #[test]
    fn cycle_through_finds_short_cycles() {
        let g = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (2, 0), (2, 3)]);
        let c = g.cycle_through(0).unwrap();
        assert_eq!(c.len(), 3);
        assert!(g.cycle_through(3).is_none());

        let digon = MultiGraph::from_pairs(2, [(0, 1), (0, 1)]);
        assert_eq!(digon.cycle_through(1), Some(vec![0, 1]));
    }

    #[test]
    fn shortest_path_is_breadth_first() {
        let g = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(g.shortest_path(0, 3), Some(vec![3]));
        assert_eq!(g.shortest_path(0, 0), Some(vec![]));
        assert_eq!(MultiGraph::new(2).shortest_path(0, 1), None);
    }
}
