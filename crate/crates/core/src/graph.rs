//! Finite simple graphs, minor-forming operations and the named pattern
//! graphs used by the forbidden-minor characterisations.
//!
//! Vertices are dense integer ids `0..n`. Edges are unordered pairs stored
//! with the smaller endpoint first. All operations return new graphs; a
//! `Graph` is an immutable value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Unordered edge, normalised so that `e.0 < e.1`.
pub type Edge = (Vertex, Vertex);

/// Hard cap on the number of vertices; everything here is meant for the
/// small graphs that appear in minor characterisations.
pub const MAX_VERTICES: usize = 64;

/// Largest order for which canonical forms are computed exhaustively.
pub const MAX_CANONICAL_VERTICES: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    LoopEdge(Vertex),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(Vertex, Vertex),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("graph with {0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("unknown pattern graph name: {0}")]
    UnknownPattern(String),
}

/// Normalise an unordered vertex pair.
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// A finite simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(repr: GraphRepr) -> Result<Self, Self::Error> {
        Graph::new(
            repr.n,
            repr.edges.iter().map(|&[u, v]| (u, v)),
        )
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Parallel edges in the input
    /// are merged; loops and out-of-range endpoints are rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            set.insert(edge(u, v));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("empty graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&edge(u, v))
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.vertices().filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.vertices().filter(|&u| self.has_edge(u, v)).count()
    }

    /// Ascending degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        degs.sort_unstable();
        degs
    }

    pub fn add_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange(u, v, self.n));
        }
        let mut g = self.clone();
        g.edges.insert(edge(u, v));
        Ok(g)
    }

    /// Removes the edge `uv`; vertices are unchanged.
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.edges.remove(&edge(u, v));
        Ok(g)
    }

    /// Contracts the edge `uv`. The merged vertex takes the smaller id and
    /// the remaining vertices are renumbered densely, so results have a
    /// stable labelling. The output is always simple.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let (keep, gone) = edge(u, v);
        let map = |x: Vertex| -> Vertex {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut edges = BTreeSet::new();
        for &(a, b) in &self.edges {
            let (a, b) = (map(a), map(b));
            if a != b {
                edges.insert(edge(a, b));
            }
        }
        Ok(Graph {
            n: self.n - 1,
            edges,
        })
    }

    /// Removes a vertex (dropping its incident edges) and renumbers densely.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, v, self.n));
        }
        let map = |x: Vertex| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| edge(map(a), map(b)))
            .collect();
        Ok(Graph {
            n: self.n - 1,
            edges,
        })
    }

    /// Adds a fresh vertex adjacent to the adjacent pair `v1`, `v2`.
    /// Iterating this from `K2` generates exactly the 2-trees.
    pub fn zero_extension(&self, v1: Vertex, v2: Vertex) -> Result<Graph, GraphError> {
        if !self.has_edge(v1, v2) {
            return Err(GraphError::NotAdjacent(v1, v2));
        }
        let n = self.n + 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut edges = self.edges.clone();
        edges.insert(edge(v1, self.n));
        edges.insert(edge(v2, self.n));
        Ok(Graph { n, edges })
    }

    /// True iff the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                parent[x] = find(parent, parent[x]);
            }
            parent[x]
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.connected_in_subset(&(0..self.n).collect())
    }

    /// Whether the subgraph induced by `subset` is connected (and nonempty).
    pub fn connected_in_subset(&self, subset: &BTreeSet<Vertex>) -> bool {
        let Some(&start) = subset.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in subset {
                if !seen.contains(&u) && self.has_edge(u, v) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == subset.len()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path graph")
    }

    /// Complete tripartite graph with parts {0,1}, {2,3}, {4,5}.
    pub fn k222() -> Graph {
        let parts = [[0, 1], [2, 3], [4, 5]];
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                for &u in &parts[i] {
                    for &v in &parts[j] {
                        edges.push((u, v));
                    }
                }
            }
        }
        Graph::new(6, edges).expect("K222")
    }

    /// Wheel on five vertices: rim cycle 0-1-2-3, hub 4.
    pub fn w4() -> Graph {
        Graph::new(
            5,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (1, 4),
                (2, 4),
                (3, 4),
            ],
        )
        .expect("W4")
    }

    /// Two copies of K4 glued along the pair {0, 1}, with the glue edge
    /// removed: first K4 on {0,1,2,3}, second on {0,1,4,5}.
    pub fn k4ek4() -> Graph {
        Graph::new(
            6,
            [
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (4, 5),
            ],
        )
        .expect("K4eK4")
    }

    pub fn pattern_graph(name: &str) -> Result<Graph, GraphError> {
        let pattern: Pattern = name.parse()?;
        Ok(pattern.build())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serialises")
    }

    /// Exhaustive isomorphism test via backtracking with degree pruning.
    pub fn is_isomorphic_to(&self, other: &Graph) -> bool {
        if self.n != other.n
            || self.edges.len() != other.edges.len()
            || self.degree_sequence() != other.degree_sequence()
        {
            return false;
        }
        let n = self.n;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_isomorphism(other, 0, &mut map, &mut used)
    }

    fn extend_isomorphism(
        &self,
        other: &Graph,
        v: Vertex,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == self.n {
            return true;
        }
        let dv = self.degree(v);
        for w in 0..other.n {
            if used[w] || other.degree(w) != dv {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == other.has_edge(map[u], w));
            if consistent {
                map[v] = w;
                used[w] = true;
                if self.extend_isomorphism(other, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
                map[v] = usize::MAX;
            }
        }
        false
    }

    /// Canonical edge-set bitmask, identical for isomorphic graphs.
    ///
    /// Vertices are first coloured by iterated degree refinement; the mask
    /// is then minimised over all colour-respecting permutations. Only
    /// intended for graphs of order at most [`MAX_CANONICAL_VERTICES`].
    pub fn canonical_key(&self) -> (usize, u128) {
        assert!(
            self.n <= MAX_CANONICAL_VERTICES,
            "canonical_key supports at most {MAX_CANONICAL_VERTICES} vertices"
        );
        let classes = self.refined_classes();
        let mut best: Option<u128> = None;
        let mut perm = vec![usize::MAX; self.n];
        let mut next_pos = 0usize;
        self.minimise_mask(&classes, 0, &mut perm, &mut next_pos, &mut best);
        (self.n, best.unwrap_or(0))
    }

    /// Colour classes from 1-WL refinement, ordered by an invariant
    /// signature so the ordering agrees across isomorphic graphs.
    fn refined_classes(&self) -> Vec<Vec<Vertex>> {
        let mut colors: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        loop {
            // signature of v = (color, sorted multiset of neighbor colors)
            let mut sigs: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> =
                        self.neighbors(v).iter().map(|&u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            let new_colors: Vec<usize> = sigs
                .drain(..)
                .map(|s| uniq.binary_search(&s).unwrap())
                .collect();
            if new_colors == colors {
                break;
            }
            colors = new_colors;
        }
        let mut by_color: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for v in 0..self.n {
            by_color.entry(colors[v]).or_default().push(v);
        }
        by_color.into_values().collect()
    }

    fn minimise_mask(
        &self,
        classes: &[Vec<Vertex>],
        class_idx: usize,
        perm: &mut Vec<usize>,
        next_pos: &mut usize,
        best: &mut Option<u128>,
    ) {
        if class_idx == classes.len() {
            let mask = self.mask_under(perm);
            if best.is_none_or(|b| mask < b) {
                *best = Some(mask);
            }
            return;
        }
        let class = &classes[class_idx];
        let base = *next_pos;
        let mut order: Vec<Vertex> = class.clone();
        permute_all(&mut order, 0, &mut |arr| {
            for (i, &v) in arr.iter().enumerate() {
                perm[v] = base + i;
            }
            *next_pos = base + arr.len();
            self.minimise_mask(classes, class_idx + 1, perm, next_pos, best);
            *next_pos = base;
        });
    }

    fn mask_under(&self, perm: &[usize]) -> u128 {
        let mut mask = 0u128;
        for &(u, v) in &self.edges {
            let (a, b) = edge(perm[u], perm[v]);
            mask |= 1u128 << (a * self.n + b);
        }
        mask
    }
}

fn permute_all(arr: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex])) {
    if k == arr.len() {
        f(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute_all(arr, k + 1, f);
        arr.swap(k, i);
    }
}

/// Named pattern graphs from the forbidden-minor characterisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    K222,
    W4,
    K4eK4,
    /// Complete graph `K_n`.
    Kn(usize),
    /// Cycle `C_n`, n >= 3.
    Cn(usize),
}

impl Pattern {
    pub fn build(self) -> Graph {
        match self {
            Pattern::K222 => Graph::k222(),
            Pattern::W4 => Graph::w4(),
            Pattern::K4eK4 => Graph::k4ek4(),
            Pattern::Kn(n) => Graph::complete(n),
            Pattern::Cn(n) => Graph::cycle(n),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::K222 => write!(f, "K222"),
            Pattern::W4 => write!(f, "W4"),
            Pattern::K4eK4 => write!(f, "K4eK4"),
            Pattern::Kn(n) => write!(f, "K{n}"),
            Pattern::Cn(n) => write!(f, "C{n}"),
        }
    }
}

impl FromStr for Pattern {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K222" => return Ok(Pattern::K222),
            "W4" => return Ok(Pattern::W4),
            "K4eK4" | "K4+eK4" => return Ok(Pattern::K4eK4),
            _ => {}
        }
        let bad = || GraphError::UnknownPattern(s.to_string());
        if let Some(num) = s.strip_prefix('K') {
            let n: usize = num.parse().map_err(|_| bad())?;
            if (1..=MAX_VERTICES).contains(&n) {
                return Ok(Pattern::Kn(n));
            }
        } else if let Some(num) = s.strip_prefix('C') {
            let n: usize = num.parse().map_err(|_| bad())?;
            if (3..=MAX_VERTICES).contains(&n) {
                return Ok(Pattern::Cn(n));
            }
        }
        Err(bad())
    }
}

/// Witness that a pattern graph is a minor of a host graph: one branch set
/// per pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    /// `branch_sets[i]` is the host-vertex set standing for pattern vertex `i`.
    pub branch_sets: Vec<BTreeSet<Vertex>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("branch set {0} is empty")]
    EmptyBranchSet(usize),
    #[error("branch sets {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("branch set {0} contains a vertex outside the host graph")]
    OutOfRange(usize),
    #[error("branch set {0} does not induce a connected subgraph")]
    Disconnected(usize),
    #[error("model has {0} branch sets but the pattern has {1} vertices")]
    WrongCount(usize, usize),
    #[error("pattern edge ({0}, {1}) has no host edge between its branch sets")]
    MissingPatternEdge(Vertex, Vertex),
}

impl MinorModel {
    /// Checks all the model invariants against a host and pattern graph.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> Result<(), ModelError> {
        if self.branch_sets.len() != pattern.vertex_count() {
            return Err(ModelError::WrongCount(
                self.branch_sets.len(),
                pattern.vertex_count(),
            ));
        }
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(ModelError::EmptyBranchSet(i));
            }
            if set.iter().any(|&v| v >= host.vertex_count()) {
                return Err(ModelError::OutOfRange(i));
            }
            if !host.connected_in_subset(set) {
                return Err(ModelError::Disconnected(i));
            }
            for (j, other) in self.branch_sets.iter().enumerate().skip(i + 1) {
                if set.intersection(other).next().is_some() {
                    return Err(ModelError::Overlap(i, j));
                }
            }
        }
        for (a, b) in pattern.edges() {
            let linked = self.branch_sets[a].iter().any(|&u| {
                self.branch_sets[b]
                    .iter()
                    .any(|&v| host.has_edge(u, v))
            });
            if !linked {
                return Err(ModelError::MissingPatternEdge(a, b));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delete_edge_of_k3_gives_path() {
        let g = Graph::complete(3).delete_edge(0, 1).unwrap();
        assert!(g.is_isomorphic_to(&Graph::path(3)));
    }

    #[test]
    fn delete_rim_edge_of_w4_counts() {
        let g = Graph::w4().delete_edge(0, 1).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 7);
    }

    #[test]
    fn delete_then_readd_is_identity() {
        let g = Graph::w4();
        let h = g.delete_edge(2, 3).unwrap().add_edge(2, 3).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn delete_missing_edge_errors() {
        let g = Graph::path(3);
        assert_eq!(g.delete_edge(0, 2), Err(GraphError::MissingEdge(0, 2)));
    }

    #[test]
    fn contract_k4_gives_k3() {
        let g = Graph::complete(4).contract_edge(1, 2).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn contract_rim_edge_of_w4_gives_k4() {
        let g = Graph::w4().contract_edge(0, 1).unwrap();
        assert!(g.is_isomorphic_to(&Graph::complete(4)));
    }

    #[test]
    fn contract_tree_edge_keeps_tree() {
        let t = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let c = t.contract_edge(1, 3).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert!(c.is_forest());
    }

    #[test]
    fn forest_examples() {
        assert!(Graph::path(5).is_forest());
        assert!(!Graph::complete(3).is_forest());
        let two_trees = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(two_trees.is_forest());
    }

    #[test]
    fn pattern_counts() {
        let k222 = Graph::pattern_graph("K222").unwrap();
        assert_eq!((k222.vertex_count(), k222.edge_count()), (6, 12));
        let w4 = Graph::pattern_graph("W4").unwrap();
        assert_eq!((w4.vertex_count(), w4.edge_count()), (5, 8));
        let kk = Graph::pattern_graph("K4eK4").unwrap();
        assert_eq!((kk.vertex_count(), kk.edge_count()), (6, 10));
        assert!(Graph::pattern_graph("Q3").is_err());
    }

    #[test]
    fn pattern_degree_fingerprints() {
        assert_eq!(Graph::w4().degree_sequence(), vec![3, 3, 3, 3, 4]);
        assert_eq!(Graph::k4ek4().degree_sequence(), vec![3, 3, 3, 3, 4, 4]);
        assert_eq!(Graph::k222().degree_sequence(), vec![4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn zero_extension_from_k2() {
        let k2 = Graph::complete(2);
        let k3 = k2.zero_extension(0, 1).unwrap();
        assert!(k3.is_isomorphic_to(&Graph::complete(3)));

        let twice = k3.zero_extension(0, 1).unwrap();
        let k4_minus = Graph::complete(4).delete_edge(2, 3).unwrap();
        assert!(twice.is_isomorphic_to(&k4_minus));
    }

    #[test]
    fn two_tree_edge_count() {
        let mut g = Graph::complete(2);
        for _ in 0..6 {
            let (u, v) = g.edges().next().unwrap();
            g = g.zero_extension(u, v).unwrap();
        }
        let n = g.vertex_count();
        assert_eq!(g.edge_count(), 2 * n - 3);
    }

    #[test]
    fn zero_extension_requires_adjacency() {
        let p = Graph::path(3);
        assert_eq!(p.zero_extension(0, 2), Err(GraphError::NotAdjacent(0, 2)));
    }

    #[test]
    fn canonical_key_matches_isomorphism() {
        let a = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert!(a.is_isomorphic_to(&b));
        let c = Graph::cycle(4);
        assert_ne!(a.canonical_key(), c.canonical_key());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::w4();
        let json = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(g, back);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn minor_model_validation() {
        let host = Graph::complete(5).delete_edge(3, 4).unwrap();
        let model = MinorModel {
            branch_sets: vec![
                BTreeSet::from([0]),
                BTreeSet::from([1]),
                BTreeSet::from([2]),
                BTreeSet::from([3, 4]),
            ],
        };
        // {3,4} is disconnected in K5 minus 34.
        assert_eq!(
            model.validate(&host, &Graph::complete(4)),
            Err(ModelError::Disconnected(3))
        );
        let host = Graph::complete(5);
        assert!(model.validate(&host, &Graph::complete(4)).is_ok());
    }
}
