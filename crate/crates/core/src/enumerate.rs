//! Exhaustive enumeration of a randomized procedure's outcomes.
//!
//! [`ScriptedOracle`] answers every random choice (uniform vertex, uniform
//! neighbor, private coin) from a script instead of a generator. Running a
//! procedure once per script, in depth-first order over the choice tree,
//! visits every outcome exactly once together with its probability (the
//! product of `1 / arity` over the choices on its path).

use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::oracle::{Oracle, QueryError, QueryStats};

/// Oracle whose random choices replay a script and extend it with 0s.
#[derive(Debug, Clone)]
pub struct ScriptedOracle<'g> {
    graph: &'g Graph,
    /// Choice index and number of options for each random call so far.
    choices: Vec<(u64, u64)>,
    pos: usize,
    stats: QueryStats,
}

impl<'g> ScriptedOracle<'g> {
    fn new(graph: &'g Graph, choices: Vec<(u64, u64)>) -> Self {
        ScriptedOracle {
            graph,
            choices,
            pos: 0,
            stats: QueryStats::default(),
        }
    }

    fn choose(&mut self, arity: u64) -> u64 {
        assert!(arity > 0, "random choice among zero options");
        let c = if self.pos < self.choices.len() {
            let (c, a) = self.choices[self.pos];
            assert_eq!(a, arity, "procedure is not deterministic given its choices");
            c
        } else {
            self.choices.push((0, arity));
            0
        };
        self.pos += 1;
        c
    }

    /// Number of options at each choice made so far.
    pub fn arities(&self) -> impl Iterator<Item = u64> + '_ {
        self.choices[..self.pos].iter().map(|&(_, a)| a)
    }

    fn check(&self, v: Vertex) -> Result<(), QueryError> {
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

impl Oracle for ScriptedOracle<'_> {
    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    fn random_vertex(&mut self) -> Result<Vertex, QueryError> {
        if self.graph.n() == 0 {
            return Err(QueryError::EmptyGraph);
        }
        self.stats.uniform_vertex += 1;
        Ok(self.choose(self.graph.n() as u64) as Vertex)
    }

    fn degree(&mut self, v: Vertex) -> Result<usize, QueryError> {
        self.check(v)?;
        self.stats.degree += 1;
        Ok(self.graph.degree(v))
    }

    fn neighbor(&mut self, v: Vertex, i: usize) -> Result<Vertex, QueryError> {
        self.check(v)?;
        let degree = self.graph.degree(v);
        if i >= degree {
            return Err(QueryError::NeighborIndex {
                vertex: v,
                index: i,
                degree,
            });
        }
        self.stats.neighbor += 1;
        Ok(self.graph.neighbors(v)[i])
    }

    fn random_neighbor(&mut self, v: Vertex) -> Result<Vertex, QueryError> {
        self.check(v)?;
        let degree = self.graph.degree(v);
        if degree == 0 {
            return Err(QueryError::IsolatedVertex { vertex: v });
        }
        let i = self.choose(degree as u64) as usize;
        self.neighbor(v, i)
    }

    fn pair(&mut self, u: Vertex, v: Vertex) -> Result<bool, QueryError> {
        self.check(u)?;
        self.check(v)?;
        self.stats.pair += 1;
        Ok(self.graph.has_edge(u, v))
    }

    fn coin(&mut self, bound: u64) -> u64 {
        self.choose(bound)
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}

/// Runs `procedure` once for every outcome of its random choices on `graph`
/// and hands `visit` the arities along the path and the result. The
/// procedure must make the same choices whenever it sees the same answers.
pub fn for_each_outcome<T, P, V>(graph: &Graph, mut procedure: P, mut visit: V)
where
    P: FnMut(&mut ScriptedOracle<'_>) -> T,
    V: FnMut(&[u64], T),
{
    let mut script: Vec<(u64, u64)> = Vec::new();
    let mut arities = Vec::new();
    loop {
        let mut oracle = ScriptedOracle::new(graph, script);
        let out = procedure(&mut oracle);
        arities.clear();
        arities.extend(oracle.arities());
        let used = oracle.pos;
        script = oracle.choices;
        script.truncate(used);
        visit(&arities, out);
        // Advance to the next leaf in depth-first order.
        loop {
            match script.last_mut() {
                None => return,
                Some((c, a)) if *c + 1 < *a => {
                    *c += 1;
                    break;
                }
                Some(_) => {
                    script.pop();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_vertex_neighbor_pair() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut total = 0.0;
        let mut leaves = 0;
        for_each_outcome(
            &g,
            |o| {
                let v = o.random_vertex().unwrap();
                let u = o.random_neighbor(v).unwrap();
                (v, u)
            },
            |arities, (v, u)| {
                assert!(g.has_edge(v, u));
                total += arities.iter().map(|&a| 1.0 / a as f64).product::<f64>();
                leaves += 1;
            },
        );
        assert_eq!(leaves, 4);
        assert!((total - 1.0).abs() < 1e-15);
    }
}
