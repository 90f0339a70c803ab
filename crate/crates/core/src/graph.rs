//! Immutable simple undirected graphs on up to [`MAX_VERTICES`] vertices,
//! stored as packed 64-bit adjacency rows.
//!
//! Every mutating operation returns a fresh graph; values are cheap to clone
//! and safe to share across worker threads.

use std::fmt;

use thiserror::Error;

/// Hard cap on the vertex count so each adjacency row fits one `u64`.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    ZeroOrder,
    #[error("order {0} exceeds the {MAX_VERTICES}-vertex cap")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not present")]
    EdgeAbsent(usize, usize),
    #[error("cannot delete all vertices of a graph of order {0}")]
    NoVerticesLeft(usize),
}

/// A set of vertex indices below [`MAX_VERTICES`], packed into a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Connected components of a graph: `membership[v]` is the component id of
/// `v`, ids assigned in order of each component's least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub count: usize,
    pub sizes: Vec<usize>,
    pub membership: Vec<usize>,
}

impl ComponentDecomposition {
    /// Component sizes as a sorted multiset (ascending).
    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable();
        s
    }

    pub fn min_size(&self) -> usize {
        self.sizes.iter().copied().min().unwrap_or(0)
    }
}

/// An immutable labeled simple graph with dense vertex labels `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroOrder);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    /// The complete graph `K_k`.
    pub fn clique(k: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(k)?;
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = mask & !(1u64 << v);
        }
        Ok(g)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 0..n.saturating_sub(1) {
            g.set_edge(v, v + 1);
        }
        Ok(g)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0` (requires `n >= 3`).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::VertexOutOfRange {
                vertex: n,
                order: n,
            });
        }
        let mut g = Graph::path(n)?;
        g.set_edge(0, n - 1);
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Graph::empty(n)?.add_edges(edges)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1u64 << v;
        self.rows[v] |= 1u64 << u;
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1u64 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut bits = self.rows[u] >> (u + 1) << (u + 1);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Disjoint union; `other`'s labels are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = Vec::with_capacity(n);
        rows.extend_from_slice(&self.rows);
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    /// Disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let a_mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let all_mask = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
        let b_mask = all_mask & !a_mask;
        for v in 0..self.n {
            g.rows[v] |= b_mask;
        }
        for v in self.n..g.n {
            g.rows[v] |= a_mask;
        }
        Ok(g)
    }

    /// New graph with the listed edges added; already-present edges are kept.
    pub fn add_edges(&self, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &(u, v) in pairs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// New graph with the edge removed; the edge must be present.
    pub fn delete_edge(&self, e: (usize, usize)) -> Result<Graph, GraphError> {
        let (u, v) = e;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.rows[u] &= !(1u64 << v);
        g.rows[v] &= !(1u64 << u);
        Ok(g)
    }

    /// Induced subgraph on the vertices outside `s`, relabeled densely in
    /// ascending order of their original labels.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !s.contains(v)).collect();
        if keep.is_empty() {
            return Err(GraphError::NoVerticesLeft(self.n));
        }
        let mut g = Graph::empty(keep.len()).expect("survivor count is within the original cap");
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Relabeled copy: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            rows: vec![0; self.n],
        };
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Copy with one extra vertex adjacent to the vertices in `neighborhood`.
    pub fn with_new_vertex(&self, neighborhood: VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = neighborhood.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let n = self.n + 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = self.rows.clone();
        rows.push(neighborhood.bits());
        let new = self.n;
        for v in neighborhood.iter() {
            rows[v] |= 1u64 << new;
        }
        Ok(Graph { n, rows })
    }

    /// BFS decomposition with component ids assigned by least vertex.
    pub fn components(&self) -> ComponentDecomposition {
        self.components_without(VertexSet::EMPTY)
    }

    /// Decomposition of the graph restricted to vertices outside `removed`;
    /// membership for removed vertices is `usize::MAX`.
    pub fn components_without(&self, removed: VertexSet) -> ComponentDecomposition {
        let mut membership = vec![usize::MAX; self.n];
        let mut sizes = Vec::new();
        let mut seen = removed.bits();
        let live = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        while seen & live != live {
            let start = (!seen & live).trailing_zeros() as usize;
            let id = sizes.len();
            // bitset BFS: frontier expansion via row unions
            let mut comp = 1u64 << start;
            loop {
                let mut next = comp;
                let mut frontier = comp;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    next |= self.rows[v] & !seen;
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            seen |= comp;
            let mut size = 0;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                membership[v] = id;
                size += 1;
            }
            sizes.push(size);
        }
        ComponentDecomposition {
            count: sizes.len(),
            sizes,
            membership,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count == 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
