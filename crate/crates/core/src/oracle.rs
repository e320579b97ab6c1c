//! The query model: the estimator sees a graph only through an [`Oracle`].
//!
//! Answered queries are tallied per kind. The algorithm's private coin flips
//! (for example, picking a sampled vertex proportional to its degree) also go
//! through the oracle via [`Oracle::coin`] so a run is a pure function of the
//! oracle's seed, but they are not queries and are not counted.

use core::ops::{Add, AddAssign};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("uniform vertex query on an empty graph")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("neighbor query on isolated vertex {vertex}")]
    IsolatedVertex { vertex: Vertex },
    #[error("neighbor index {index} out of range for vertex {vertex} of degree {degree}")]
    NeighborIndex {
        vertex: Vertex,
        index: usize,
        degree: usize,
    },
    #[error("query budget of {limit} exhausted")]
    BudgetExhausted { limit: u64 },
}

/// Per-kind query tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QueryStats {
    pub uniform_vertex: u64,
    pub degree: u64,
    pub neighbor: u64,
    pub pair: u64,
}

impl QueryStats {
    pub fn total(&self) -> u64 {
        self.uniform_vertex + self.degree + self.neighbor + self.pair
    }

    /// Tallies for one run with `r` vertex samples and `q` edge samples.
    pub fn for_run(r: u64, q: u64) -> Self {
        QueryStats {
            uniform_vertex: r,
            degree: r + q,
            neighbor: q,
            pair: 0,
        }
    }
}

impl Add for QueryStats {
    type Output = QueryStats;

    fn add(self, rhs: QueryStats) -> QueryStats {
        QueryStats {
            uniform_vertex: self.uniform_vertex + rhs.uniform_vertex,
            degree: self.degree + rhs.degree,
            neighbor: self.neighbor + rhs.neighbor,
            pair: self.pair + rhs.pair,
        }
    }
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: QueryStats) {
        *self = *self + rhs;
    }
}

/// Query access to a graph.
///
/// Calls that return an error are not answered and are not counted.
pub trait Oracle {
    /// `n` is part of the input in this model, not a query.
    fn vertex_count(&self) -> usize;

    fn random_vertex(&mut self) -> Result<Vertex, QueryError>;

    fn degree(&mut self, v: Vertex) -> Result<usize, QueryError>;

    /// The `i`-th neighbor of `v`, for `i < d_v`.
    fn neighbor(&mut self, v: Vertex, i: usize) -> Result<Vertex, QueryError>;

    /// A uniform neighbor of `v`; one neighbor query.
    fn random_neighbor(&mut self, v: Vertex) -> Result<Vertex, QueryError>;

    fn pair(&mut self, u: Vertex, v: Vertex) -> Result<bool, QueryError>;

    /// Uniform integer in `0..bound` (`bound >= 1`). Not a query.
    fn coin(&mut self, bound: u64) -> u64;

    fn stats(&self) -> QueryStats;
}

/// Generator for stream `stream` of master seed `seed`. Streams of one seed
/// are independent, so trial `i` of an experiment can use stream `i`.
pub fn derive_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// In-memory oracle over a [`Graph`] with a seeded ChaCha stream.
#[derive(Debug, Clone)]
pub struct QueryOracle<'g> {
    graph: &'g Graph,
    rng: ChaCha8Rng,
    stats: QueryStats,
    budget: Option<u64>,
}

impl<'g> QueryOracle<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        Self::with_rng(graph, derive_rng(seed, 0))
    }

    /// Oracle for trial `trial` of an experiment seeded with `seed`.
    pub fn for_trial(graph: &'g Graph, seed: u64, trial: u64) -> Self {
        Self::with_rng(graph, derive_rng(seed, trial))
    }

    pub fn with_rng(graph: &'g Graph, rng: ChaCha8Rng) -> Self {
        QueryOracle {
            graph,
            rng,
            stats: QueryStats::default(),
            budget: None,
        }
    }

    /// Refuse every query once `limit` queries have been answered.
    pub fn with_budget(mut self, limit: u64) -> Self {
        self.budget = Some(limit);
        self
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn reset_stats(&mut self) {
        self.stats = QueryStats::default();
    }

    fn check_budget(&self) -> Result<(), QueryError> {
        match self.budget {
            Some(limit) if self.stats.total() >= limit => {
                Err(QueryError::BudgetExhausted { limit })
            }
            _ => Ok(()),
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), QueryError> {
        if v < self.graph.n() {
            Ok(())
        } else {
            Err(QueryError::InvalidVertex {
                vertex: v,
                n: self.graph.n(),
            })
        }
    }
}

impl Oracle for QueryOracle<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    fn random_vertex(&mut self) -> Result<Vertex, QueryError> {
        let n = self.graph.n();
        if n == 0 {
            return Err(QueryError::EmptyGraph);
        }
        self.check_budget()?;
        self.stats.uniform_vertex += 1;
        Ok(self.rng.gen_range(0..n))
    }

    fn degree(&mut self, v: Vertex) -> Result<usize, QueryError> {
        self.check_vertex(v)?;
        self.check_budget()?;
        self.stats.degree += 1;
        Ok(self.graph.degree(v))
    }

    fn neighbor(&mut self, v: Vertex, i: usize) -> Result<Vertex, QueryError> {
        self.check_vertex(v)?;
        let degree = self.graph.degree(v);
        if i >= degree {
            return Err(QueryError::NeighborIndex {
                vertex: v,
                index: i,
                degree,
            });
        }
        self.check_budget()?;
        self.stats.neighbor += 1;
        Ok(self.graph.neighbors(v)[i])
    }

    fn random_neighbor(&mut self, v: Vertex) -> Result<Vertex, QueryError> {
        self.check_vertex(v)?;
        let degree = self.graph.degree(v);
        if degree == 0 {
            return Err(QueryError::IsolatedVertex { vertex: v });
        }
        let i = self.rng.gen_range(0..degree);
        self.neighbor(v, i)
    }

    fn pair(&mut self, u: Vertex, v: Vertex) -> Result<bool, QueryError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.check_budget()?;
        self.stats.pair += 1;
        Ok(self.graph.has_edge(u, v))
    }

    fn coin(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}
