//! The estimator against an independent adjacency-list oracle.

use degmom_core::estimator::{estimate_fixed, estimate_once_partial};
use degmom_core::generators as basic;
use degmom_core::oracle::derive_rng;
use degmom_core::{
    estimate_once, exact_moment, EstimateReport, Graph, Oracle, QueryError, QueryOracle, QueryStats,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

struct ListOracle {
    adj: Vec<Vec<usize>>,
    rng: ChaCha20Rng,
    stats: QueryStats,
}

impl ListOracle {
    fn new(n: usize, edges: &[(usize, usize)], seed: u64) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        ListOracle {
            adj,
            rng: ChaCha20Rng::seed_from_u64(seed),
            stats: QueryStats::default(),
        }
    }
}

impl Oracle for ListOracle {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }
    fn random_vertex(&mut self) -> Result<usize, QueryError> {
        self.stats.uniform_vertex += 1;
        Ok(self.rng.gen_range(0..self.adj.len()))
    }
    fn degree(&mut self, v: usize) -> Result<usize, QueryError> {
        self.stats.degree += 1;
        Ok(self.adj[v].len())
    }
    fn neighbor(&mut self, v: usize, i: usize) -> Result<usize, QueryError> {
        self.stats.neighbor += 1;
        Ok(self.adj[v][i])
    }
    fn random_neighbor(&mut self, v: usize) -> Result<usize, QueryError> {
        let i = self.rng.gen_range(0..self.adj[v].len());
        self.neighbor(v, i)
    }
    fn pair(&mut self, u: usize, v: usize) -> Result<bool, QueryError> {
        self.stats.pair += 1;
        Ok(self.adj[u].contains(&v))
    }
    fn coin(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }
    fn stats(&self) -> QueryStats {
        self.stats
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn monte_carlo_mean_through_list_oracle() {
    // Triangle with a pendant path: degrees 2, 2, 3, 2, 1.
    let edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)];
    let g = Graph::from_edges(5, edges).unwrap();
    for s in 1..=3 {
        let truth = exact_moment(&g, s).mean();
        let mut o = ListOracle::new(5, &edges, s as u64);
        let xs: Vec<f64> = (0..40_000)
            .map(|_| estimate_once(&mut o, 3, 2, s).unwrap())
            .collect();
        let (mean, se) = mean_and_se(&xs);
        assert!(
            (mean - truth).abs() < 4.0 * se,
            "s={s}: {mean} vs {truth} (se {se})"
        );
    }
}

#[test]
fn accounting_identity() {
    let g = basic::cycle(30).unwrap();
    let edges: Vec<_> = g.edges().collect();
    let mut o = ListOracle::new(30, &edges, 1);
    estimate_once(&mut o, 7, 11, 2).unwrap();
    assert_eq!(o.stats(), QueryStats::for_run(7, 11));

    let mut o = QueryOracle::new(&g, 4);
    let rep: EstimateReport = estimate_fixed(&mut o, 7, 11, 2).unwrap();
    assert_eq!(rep.stats, QueryStats::for_run(7, 11));
    assert_eq!(rep.stats.total(), 2 * 7 + 2 * 11);
}

#[test]
fn isolated_sample_returns_zero_without_edge_queries() {
    let g = Graph::empty(10);
    let mut o = QueryOracle::new(&g, 0);
    assert_eq!(estimate_once(&mut o, 5, 5, 2).unwrap(), 0.0);
    let st = o.stats();
    assert_eq!((st.uniform_vertex, st.degree, st.neighbor), (5, 5, 0));
}

#[test]
fn budget_truncates_the_run() {
    let g = basic::clique(8).unwrap();
    // 4 vertex samples use 8 queries; 3 more edge samples complete with 6.
    let mut o = QueryOracle::new(&g, 9).with_budget(15);
    let out = estimate_once_partial(&mut o, 4, 10, 1).unwrap();
    assert!(out.truncated);
    assert_eq!((out.r_done, out.q_done), (4, 3));
    assert!(o.stats().total() <= 15);
    // d_R = 28 and each completed draw scores 0 or 2, so the value is 14k/3.
    let k = out.value * 3.0 / 14.0;
    assert!((k - k.round()).abs() < 1e-9 && (0.0..=3.0).contains(&k));

    let mut o = QueryOracle::new(&g, 9).with_budget(5);
    let out = estimate_once_partial(&mut o, 4, 10, 1).unwrap();
    assert_eq!((out.value, out.r_done, out.q_done), (0.0, 2, 0));
    let mut o = QueryOracle::new(&g, 9).with_budget(5);
    assert!(matches!(
        estimate_once(&mut o, 4, 10, 1),
        Err(degmom_core::estimator::EstimateError::Query(
            QueryError::BudgetExhausted { .. }
        ))
    ));
}

#[test]
fn same_seed_same_estimate() {
    let g = basic::erdos_renyi(200, 0.05, &mut derive_rng(1, 0)).unwrap();
    let a = estimate_once(&mut QueryOracle::for_trial(&g, 5, 3), 50, 50, 2).unwrap();
    let b = estimate_once(&mut QueryOracle::for_trial(&g, 5, 3), 50, 50, 2).unwrap();
    let c = estimate_once(&mut QueryOracle::for_trial(&g, 5, 4), 50, 50, 2).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}
