//! Metric graph data model and the matrix constructions built on it.
//!
//! A [`MetricGraph`] is a finite, connected, simple combinatorial graph whose
//! edges carry positive lengths. All spectral machinery in this crate runs on
//! values of this type; the constructor rejects anything outside that class
//! (loops, parallel edges, disconnected vertex sets, nonpositive lengths).

use nalgebra::DMatrix;
use thiserror::Error;

/// Violations of the structural assumptions enforced at construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex and one edge")]
    EmptyGraph,
    #[error("edge {edge} is a loop at vertex {vertex}; loops are not allowed")]
    LoopEdge { edge: usize, vertex: usize },
    #[error("edges {first} and {second} join the same vertex pair ({u}, {v})")]
    DuplicateEdge {
        first: usize,
        second: usize,
        u: usize,
        v: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {edge} has nonpositive or non-finite length {length}")]
    NonpositiveLength { edge: usize, length: f64 },
    #[error("edge {edge} references vertex {vertex}, but only {count} vertices exist")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("expected one subdivision count per edge ({edges}), got {parts}")]
    PartsLengthMismatch { edges: usize, parts: usize },
    #[error("subdivision count for edge {edge} must be at least 1")]
    ZeroParts { edge: usize },
}

/// An undirected edge with endpoints in stored order and a positive length.
///
/// The stored order fixes the edge's orientation: `u` is the origin and `v`
/// the terminus wherever an orientation is needed (incidence matrix, directed
/// bonds). No spectral quantity depends on that choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, length: f64) -> Self {
        Edge { u, v, length }
    }

    /// True if this edge joins the same unordered vertex pair as `other`.
    fn same_pair(&self, other: &Edge) -> bool {
        (self.u == other.u && self.v == other.v) || (self.u == other.v && self.v == other.u)
    }
}

/// Relative tolerance under which all edge lengths count as equal.
pub const EQUILATERAL_REL_TOL: f64 = 1e-12;

/// A finite, connected, simple metric graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// Structural summary of a graph: the predicates the spectral multiplicity rules
/// branch on.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub is_bipartite: bool,
    /// The common edge length, present iff all lengths agree within
    /// [`EQUILATERAL_REL_TOL`] relative tolerance.
    pub equilateral_length: Option<f64>,
    /// First Betti number N − n + 1 of the connected graph.
    pub cycle_rank: usize,
    pub total_length: f64,
}

impl MetricGraph {
    /// Validates a raw vertex count and edge list into a [`MetricGraph`].
    ///
    /// Rejects empty input, out-of-range endpoints, loops, duplicate
    /// unordered pairs, nonpositive or non-finite lengths, and disconnected
    /// graphs.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if vertex_count == 0 || edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        for (j, e) in edges.iter().enumerate() {
            for &endpoint in &[e.u, e.v] {
                if endpoint >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: j,
                        vertex: endpoint,
                        count: vertex_count,
                    });
                }
            }
            if e.u == e.v {
                return Err(GraphError::LoopEdge {
                    edge: j,
                    vertex: e.u,
                });
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(GraphError::NonpositiveLength {
                    edge: j,
                    length: e.length,
                });
            }
        }
        for (j, e) in edges.iter().enumerate() {
            if let Some(i) = edges[..j].iter().position(|prev| prev.same_pair(e)) {
                return Err(GraphError::DuplicateEdge {
                    first: i,
                    second: j,
                    u: e.u,
                    v: e.v,
                });
            }
        }
        // A connected graph has at most N + 1 vertices; rejecting early also
        // keeps absurd vertex counts from allocating in the traversal below.
        if vertex_count > edges.len() + 1 {
            return Err(GraphError::Disconnected);
        }
        let graph = MetricGraph {
            vertex_count,
            edges,
        };
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    /// Number of vertices n.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges N.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sum of all edge lengths.
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Degree of each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// First Betti number N − n + 1.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// The common edge length if the graph is equilateral, else `None`.
    pub fn equilateral_length(&self) -> Option<f64> {
        let first = self.edges[0].length;
        let equal = self.edges.iter().all(|e| {
            let scale = e.length.abs().max(first.abs());
            (e.length - first).abs() <= EQUILATERAL_REL_TOL * scale
        });
        equal.then_some(first)
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == self.vertex_count
    }

    /// The 0/1 adjacency matrix: a_{ij} = 1 iff v_i and v_j are joined by an
    /// edge. Symmetric with zero diagonal.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.vertex_count;
        let mut a = DMatrix::zeros(n, n);
        for e in &self.edges {
            a[(e.u, e.v)] = 1.0;
            a[(e.v, e.u)] = 1.0;
        }
        a
    }

    /// The row-stochastic transition matrix Z with Z_{ij} = a_{ij} / deg(v_i).
    pub fn transition_matrix(&self) -> DMatrix<f64> {
        let n = self.vertex_count;
        let deg = self.degrees();
        let mut z = DMatrix::zeros(n, n);
        for e in &self.edges {
            z[(e.u, e.v)] = 1.0 / deg[e.u] as f64;
            z[(e.v, e.u)] = 1.0 / deg[e.v] as f64;
        }
        z
    }

    /// The signed incidence matrix D (n × N): column j holds −1 at the origin
    /// of edge j and +1 at its terminus.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.vertex_count, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            d[(e.u, j)] = -1.0;
            d[(e.v, j)] = 1.0;
        }
        d
    }

    /// Breadth-first two-coloring test. Exact; no floating point involved.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut color = vec![None::<bool>; self.vertex_count];
        let mut queue = std::collections::VecDeque::from([0usize]);
        color[0] = Some(false);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[v].unwrap());
                        queue.push_back(w);
                    }
                    Some(c) if c == color[v].unwrap() => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Structural summary used by the spectral modules.
    pub fn structure(&self) -> StructureReport {
        StructureReport {
            is_bipartite: self.is_bipartite(),
            equilateral_length: self.equilateral_length(),
            cycle_rank: self.cycle_rank(),
            total_length: self.total_length(),
        }
    }

    /// Replaces edge j by `parts[j]` edges of length ℓ_j / parts[j] running
    /// through parts[j] − 1 fresh vertices. Fresh vertices are appended after
    /// the existing ones, in edge order.
    ///
    /// Total length is preserved exactly whenever each ℓ_j / parts[j] is
    /// exactly representable (all parts = 1 is the identity).
    pub fn subdivide(&self, parts: &[usize]) -> Result<MetricGraph, GraphError> {
        if parts.len() != self.edges.len() {
            return Err(GraphError::PartsLengthMismatch {
                edges: self.edges.len(),
                parts: parts.len(),
            });
        }
        if let Some(j) = parts.iter().position(|&m| m == 0) {
            return Err(GraphError::ZeroParts { edge: j });
        }
        let mut next_vertex = self.vertex_count;
        let mut edges = Vec::with_capacity(parts.iter().sum());
        for (e, &m) in self.edges.iter().zip(parts) {
            if m == 1 {
                edges.push(*e);
                continue;
            }
            let piece = e.length / m as f64;
            let mut prev = e.u;
            for _ in 0..m - 1 {
                edges.push(Edge::new(prev, next_vertex, piece));
                prev = next_vertex;
                next_vertex += 1;
            }
            edges.push(Edge::new(prev, e.v, piece));
        }
        MetricGraph::new(next_vertex, edges)
    }

    /// Same graph with every stored edge orientation reversed.
    pub fn reversed(&self) -> MetricGraph {
        MetricGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.v, e.u, e.length))
                .collect(),
        }
    }

    /// Cycle graph C_n with uniform edge length.
    pub fn cycle(n: usize, length: f64) -> MetricGraph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n).map(|i| Edge::new(i, (i + 1) % n, length)).collect();
        MetricGraph::new(n, edges).expect("cycle graph is valid")
    }

    /// Path graph on n vertices (n − 1 edges) with uniform edge length.
    pub fn path(n: usize, length: f64) -> MetricGraph {
        assert!(n >= 2, "path needs at least 2 vertices");
        let edges = (0..n - 1).map(|i| Edge::new(i, i + 1, length)).collect();
        MetricGraph::new(n, edges).expect("path graph is valid")
    }

    /// Complete graph K_n with uniform edge length.
    pub fn complete(n: usize, length: f64) -> MetricGraph {
        assert!(n >= 2, "complete graph needs at least 2 vertices");
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge::new(u, v, length));
            }
        }
        MetricGraph::new(n, edges).expect("complete graph is valid")
    }

    /// Star with center 0 and `leaves` leaves, uniform edge length.
    pub fn star(leaves: usize, length: f64) -> MetricGraph {
        assert!(leaves >= 1, "star needs at least one leaf");
        let edges = (1..=leaves).map(|v| Edge::new(0, v, length)).collect();
        MetricGraph::new(leaves + 1, edges).expect("star graph is valid")
    }

    /// Wheel: hub 0 joined to every vertex of a rim cycle 1..=rim, uniform
    /// edge length.
    pub fn wheel(rim: usize, length: f64) -> MetricGraph {
        assert!(rim >= 3, "wheel needs a rim of at least 3 vertices");
        let mut edges: Vec<Edge> = (1..=rim).map(|v| Edge::new(0, v, length)).collect();
        for i in 1..=rim {
            let next = if i == rim { 1 } else { i + 1 };
            edges.push(Edge::new(i, next, length));
        }
        MetricGraph::new(rim + 1, edges).expect("wheel graph is valid")
    }

    /// The right triangle with edge lengths 3, 4, 5 used throughout the
    /// inequilateral examples.
    pub fn triangle_3_4_5() -> MetricGraph {
        MetricGraph::new(
            3,
            vec![
                Edge::new(0, 1, 3.0),
                Edge::new(1, 2, 4.0),
                Edge::new(2, 0, 5.0),
            ],
        )
        .expect("triangle is valid")
    }

    /// True iff the graph is a single cycle with an odd number of edges.
    pub fn is_odd_cycle(&self) -> bool {
        self.vertex_count == self.edges.len()
            && self.vertex_count % 2 == 1
            && self.degrees().iter().all(|&d| d == 2)
    }
}
