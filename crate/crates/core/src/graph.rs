//! Immutable undirected simple graphs in compressed adjacency form.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

/// Dense vertex id in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("vertex id {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: Vertex, v: Vertex },
    #[error("relabeling is not a permutation of 0..{n}")]
    BadPermutation { n: usize },
}

/// Position of a vertex in the degree ordering: `u < v` iff `d_u < d_v`, or
/// `d_u = d_v` and `u` has the smaller id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeOrderKey {
    pub degree: usize,
    pub id: Vertex,
}

/// Undirected simple graph with sorted neighbor lists stored contiguously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    m: usize,
}

/// Bookkeeping from [`Graph::from_edges_counted`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildSummary {
    pub input_pairs: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from unordered pairs.
    ///
    /// Duplicate pairs (in either orientation) collapse to one edge. Self-loops
    /// and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_edges_counted(n, edges).map(|(g, _)| g)
    }

    pub fn from_edges_counted<I>(n: usize, edges: I) -> Result<(Self, BuildSummary), GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        let input_pairs = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        let summary = BuildSummary {
            input_pairs,
            duplicates: input_pairs - pairs.len(),
        };

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            let last = *offsets.last().unwrap();
            offsets.push(last + d);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * pairs.len()];
        // Pairs are sorted by (u, v), so each list fills in increasing order
        // for the `u` side; the `v` side is sorted afterwards.
        for &(u, v) in &pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok((
            Graph {
                offsets,
                targets,
                m: pairs.len(),
            },
            summary,
        ))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            m: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Endpoint of the directed slot `slot` in `0..2m`, as `(source, target)`.
    ///
    /// Every undirected edge owns two slots, one per orientation, so a uniform
    /// slot is a uniform edge with a uniform orientation.
    pub fn slot(&self, slot: usize) -> (Vertex, Vertex) {
        let source = self.offsets.partition_point(|&o| o <= slot) - 1;
        (source, self.targets[slot])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Number of degree-0 vertices. They are legal, but they contribute
    /// nothing to any moment and can never be reached by a neighbor query.
    pub fn isolated_count(&self) -> usize {
        self.degrees().filter(|&d| d == 0).count()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    #[inline]
    pub fn order_key(&self, v: Vertex) -> DegreeOrderKey {
        DegreeOrderKey {
            degree: self.degree(v),
            id: v,
        }
    }

    /// `u` strictly precedes `v` in the degree ordering.
    #[inline]
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.order_key(u) < self.order_key(v)
    }

    /// Neighbors of `v` that come after it in the degree ordering.
    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let key = self.order_key(v);
        self.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| key < self.order_key(u))
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_neighbors(v).count()
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::BadPermutation { n });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(GraphError::BadPermutation { n });
            }
            seen[p] = true;
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n() + other.n(), edges).expect("union of valid graphs is valid")
    }
}

impl PartialOrd for DegreeOrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DegreeOrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.id.cmp(&other.id))
    }
}
