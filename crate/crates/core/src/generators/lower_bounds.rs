//! Pairs of graph families with a constant-factor moment gap that look alike
//! until a query lands on a small planted set.
//!
//! Every constructor builds the graph on canonical ids, then applies a
//! uniformly random relabeling. The returned `special` set lists, after
//! relabeling, the vertices whose discovery separates the two families.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};
use crate::num::root;

use super::GeneratorError;

/// Which of the two families to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Which {
    #[cfg_attr(feature = "serde", serde(rename = "1"))]
    First,
    #[cfg_attr(feature = "serde", serde(rename = "2"))]
    Second,
}

impl Which {
    pub fn from_index(i: u8) -> Option<Which> {
        match i {
            1 => Some(Which::First),
            2 => Some(Which::Second),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedGraph {
    pub graph: Graph,
    /// Vertices that distinguish the families when hit.
    pub special: Vec<Vertex>,
    /// Total degree lost on `V \ S` when a regular matching could not be
    /// repaired. Zero in all but degenerate parameter choices.
    pub degree_deficit: usize,
}

fn relabeled<R: Rng + ?Sized>(
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    special: Vec<Vertex>,
    degree_deficit: usize,
    rng: &mut R,
) -> PlantedGraph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let graph = Graph::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
        .expect("lower-bound construction produced an invalid edge");
    let mut special: Vec<Vertex> = special.into_iter().map(|v| perm[v]).collect();
    special.sort_unstable();
    PlantedGraph {
        graph,
        special,
        degree_deficit,
    }
}

fn clique_edges(vs: core::ops::Range<usize>) -> impl Iterator<Item = (Vertex, Vertex)> {
    let end = vs.end;
    vs.flat_map(move |u| (u + 1..end).map(move |v| (u, v)))
}

/// Size of the second set in the first-term construction:
/// `floor((m_t / alpha_t)^(1/s)) - alpha_t`.
pub fn first_term_c2(alpha_t: usize, m_t: f64, s: u32) -> Option<usize> {
    let outer = root(m_t / alpha_t as f64, s).floor();
    if outer.is_finite() && outer >= alpha_t as f64 {
        Some(outer as usize - alpha_t)
    } else {
        None
    }
}

/// First family: a clique `C1` on `alpha_t` vertices, the rest isolated.
/// Second family: `C1` joined completely to an independent set `C2` of size
/// [`first_term_c2`], the rest isolated. `special` is `C1` or `C1 + C2`.
pub fn gen_lb_first_term<R: Rng + ?Sized>(
    n: usize,
    alpha_t: usize,
    m_t: f64,
    s: u32,
    which: Which,
    rng: &mut R,
) -> Result<PlantedGraph, GeneratorError> {
    if alpha_t < 2 {
        return Err(GeneratorError::Invalid(
            "first-term construction needs alpha_t >= 2",
        ));
    }
    let c2 = first_term_c2(alpha_t, m_t, s)
        .ok_or(GeneratorError::Invalid("m_t is too small for alpha_t"))?;
    if alpha_t + c2 > n {
        return Err(GeneratorError::Infeasible {
            reason: "C1 and C2 do not fit in n vertices",
        });
    }
    let mut edges: Vec<_> = clique_edges(0..alpha_t).collect();
    let special_len = match which {
        Which::First => alpha_t,
        Which::Second => {
            edges.extend((0..alpha_t).flat_map(|u| (alpha_t..alpha_t + c2).map(move |v| (u, v))));
            alpha_t + c2
        }
    };
    Ok(relabeled(n, edges, (0..special_len).collect(), 0, rng))
}

/// Parameters of the planted-set construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SSetParams {
    pub n: usize,
    /// `|S|`.
    pub b: usize,
    /// Degree of every vertex outside `S`.
    pub d: usize,
    /// Degree of every vertex of `S` in the second family.
    pub d_prime: usize,
    /// Size of a clique planted outside `S` in both families.
    pub planted_clique: Option<usize>,
}

/// Pairs up `vs` into a perfect matching that avoids existing edges, repairing
/// collisions by swapping endpoints with random other pairs. Pairs that
/// cannot be repaired are dropped and returned as a count.
fn add_matching<R: Rng + ?Sized>(
    vs: &mut [Vertex],
    adj: &mut [Vec<Vertex>],
    rng: &mut R,
) -> (Vec<(Vertex, Vertex)>, usize) {
    vs.shuffle(rng);
    let pairs = vs.len() / 2;
    let clash = |adj: &[Vec<Vertex>], a: Vertex, b: Vertex| adj[a].contains(&b);
    let mut dropped = 0;
    for i in 0..pairs {
        let mut fixed = !clash(adj, vs[2 * i], vs[2 * i + 1]);
        let mut tries = 0;
        while !fixed && tries < 100 && pairs > 1 {
            tries += 1;
            let j = rng.gen_range(0..pairs);
            if j == i {
                continue;
            }
            // Swap the second endpoint of pair i with the second of pair j.
            let (a, b) = (vs[2 * i], vs[2 * j + 1]);
            let (c, d) = (vs[2 * j], vs[2 * i + 1]);
            if !clash(adj, a, b) && !clash(adj, c, d) {
                vs.swap(2 * i + 1, 2 * j + 1);
                fixed = true;
            }
        }
        if !fixed {
            dropped += 1;
        }
    }
    let mut out = Vec::with_capacity(pairs);
    for i in 0..pairs {
        let (a, b) = (vs[2 * i], vs[2 * i + 1]);
        if !clash(adj, a, b) {
            adj[a].push(b);
            adj[b].push(a);
            out.push((a, b));
        }
    }
    (out, 2 * dropped)
}

/// Planted-set construction on `n` vertices, `S = {0..b}`.
///
/// Both families share a base graph in which `V \ S` (rounded down to an
/// even size, any leftover vertex isolated) is `d`-regular, built from `d`
/// random perfect matchings. The first family is the base graph with `S`
/// isolated. The second family replaces base edges `(v, u)` by pairs
/// `(v, w), (u, z)` with `w, z` in `S`, which keeps every outside degree:
///
/// * when `b * d_prime <= n - b`, `b * d_prime / 2` vertex-disjoint base edges
///   are rerouted so each vertex of `S` gets `d_prime` distinct neighbors;
/// * when `d_prime = n - b` and `b <= d`, vertex `w` of `S` takes a whole
///   matching, which connects it to all of `V \ S`.
///
/// Other parameter combinations are rejected. A planted clique, if any, is
/// added on the same outside vertices in both families, away from the
/// rerouted edges when the matching regime allows it. Outside degrees are
/// identical in the two families.
pub fn gen_s_set_family<R: Rng + ?Sized>(
    p: SSetParams,
    which: Which,
    rng: &mut R,
) -> Result<PlantedGraph, GeneratorError> {
    let SSetParams {
        n,
        b,
        d,
        d_prime,
        planted_clique,
    } = p;
    if b == 0 || b >= n {
        return Err(GeneratorError::Invalid("s-set family needs 1 <= b < n"));
    }
    let outside = n - b;
    let even = outside - outside % 2;
    if d == 0 || d >= even {
        return Err(GeneratorError::Infeasible {
            reason: "outside degree d must satisfy 1 <= d < |V \\ S| (rounded to even)",
        });
    }
    let complete = d_prime == outside;
    if complete {
        if b > d {
            return Err(GeneratorError::Infeasible {
                reason: "complete regime needs |S| <= d",
            });
        }
        if even != outside {
            return Err(GeneratorError::Infeasible {
                reason: "complete regime needs |V \\ S| even",
            });
        }
    } else if d_prime == 0 || b * d_prime > even || (b * d_prime) % 2 != 0 {
        return Err(GeneratorError::Infeasible {
            reason: "matching regime needs b * d_prime even and at most |V \\ S|",
        });
    }
    if let Some(k) = planted_clique {
        if k < 2 || k > outside {
            return Err(GeneratorError::Invalid(
                "planted clique size must be in 2..=|V \\ S|",
            ));
        }
    }

    let mut adj = vec![Vec::new(); n];
    let mut vs: Vec<Vertex> = (b..b + even).collect();
    let mut matchings = Vec::with_capacity(d);
    let mut deficit = 0;
    for _ in 0..d {
        let (m, lost) = add_matching(&mut vs, &mut adj, rng);
        deficit += lost;
        matchings.push(m);
    }

    let clique: Vec<Vertex> = match planted_clique {
        Some(k) => {
            let mut pool: Vec<Vertex> = (b..n).collect();
            pool.shuffle(rng);
            pool.truncate(k);
            pool.sort_unstable();
            pool
        }
        None => Vec::new(),
    };
    let in_clique = |v: Vertex| clique.binary_search(&v).is_ok();

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    match which {
        Which::First => {
            edges.extend(matchings.iter().flatten().copied());
        }
        Which::Second if complete => {
            for (k, m) in matchings.iter().enumerate() {
                if k < b {
                    edges.extend(m.iter().flat_map(|&(v, u)| [(v, k), (u, k)]));
                } else {
                    edges.extend(m.iter().copied());
                }
            }
        }
        Which::Second => {
            // Pick vertex-disjoint base edges, preferring ones off the clique.
            let mut base: Vec<(Vertex, Vertex)> = matchings.iter().flatten().copied().collect();
            base.shuffle(rng);
            base.sort_by_key(|&(v, u)| in_clique(v) || in_clique(u));
            let needed = b * d_prime / 2;
            let mut used = vec![false; n];
            let mut rerouted = vec![false; base.len()];
            let mut ends = Vec::with_capacity(2 * needed);
            for (idx, &(v, u)) in base.iter().enumerate() {
                if ends.len() == 2 * needed {
                    break;
                }
                if !used[v] && !used[u] {
                    used[v] = true;
                    used[u] = true;
                    rerouted[idx] = true;
                    ends.push(v);
                    ends.push(u);
                }
            }
            if ends.len() < 2 * needed {
                return Err(GeneratorError::Infeasible {
                    reason: "not enough vertex-disjoint base edges to reroute",
                });
            }
            ends.shuffle(rng);
            for (k, chunk) in ends.chunks(d_prime).enumerate() {
                edges.extend(chunk.iter().map(|&v| (v, k)));
            }
            edges.extend(
                base.iter()
                    .zip(&rerouted)
                    .filter(|(_, &r)| !r)
                    .map(|(&e, _)| e),
            );
        }
    }
    // Clique pairs already joined by a base edge are left to the base graph,
    // so rerouting never changes an outside degree.
    for (i, &u) in clique.iter().enumerate() {
        edges.extend(
            clique[i + 1..]
                .iter()
                .filter(|&&v| !adj[u].contains(&v))
                .map(|&v| (u, v)),
        );
    }
    Ok(relabeled(n, edges, (0..b).collect(), deficit, rng))
}

/// `ceil(4 c sqrt(n))` and `floor(4 c sqrt(n))`.
fn valid_lb_sizes(n: usize, c: f64) -> (usize, usize) {
    let x = 4.0 * c * root(n as f64, 2);
    (x.ceil() as usize, x.floor() as usize)
}

/// First family: a cycle on `n - floor(4c sqrt n)` vertices next to a cycle
/// on `k = ceil(4c sqrt n)` vertices. Second family: the same long cycle next
/// to a clique on `k` vertices. `special` is the small component.
pub fn gen_valid_lb<R: Rng + ?Sized>(
    n: usize,
    c: f64,
    which: Which,
    rng: &mut R,
) -> Result<PlantedGraph, GeneratorError> {
    if c.is_nan() || c <= 0.0 {
        return Err(GeneratorError::Invalid("valid_lb needs c > 0"));
    }
    let (k, fl) = valid_lb_sizes(n, c);
    if k < 3 || fl + 3 > n {
        return Err(GeneratorError::Infeasible {
            reason: "valid_lb needs 3 <= 4c sqrt(n) <= n - 3",
        });
    }
    let long = n - fl;
    let total = long + k;
    let mut edges: Vec<_> = (0..long).map(|i| (i, (i + 1) % long)).collect();
    match which {
        Which::First => edges.extend((0..k).map(|i| (long + i, long + (i + 1) % k))),
        Which::Second => edges.extend(clique_edges(long..total)),
    }
    Ok(relabeled(total, edges, (long..total).collect(), 0, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::core_number;
    use crate::oracle::derive_rng;
    use crate::weights::exact_moment;
    use num_bigint::BigUint;

    #[test]
    fn first_term_sizes_and_moments() {
        let mut rng = derive_rng(1, 0);
        let g1 = gen_lb_first_term(1000, 10, 81_000.0, 2, Which::First, &mut rng).unwrap();
        assert_eq!(exact_moment(&g1.graph, 2).sum, BigUint::from(810u32));
        assert_eq!(core_number(&g1.graph), 9);
        assert_eq!(g1.special.len(), 10);
        let g2 = gen_lb_first_term(1000, 10, 81_000.0, 2, Which::Second, &mut rng).unwrap();
        // C1 degree 9 + 80, C2 degree 10.
        assert_eq!(
            exact_moment(&g2.graph, 2).sum,
            BigUint::from(10 * 89 * 89 + 80 * 100u32)
        );
        assert_eq!(g2.special.len(), 90);
        for &v in &g2.special {
            assert!(g2.graph.degree(v) > 0);
        }
        assert!(gen_lb_first_term(50, 10, 81_000.0, 2, Which::Second, &mut rng).is_err());
    }

    fn outside_degrees(p: &PlantedGraph) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..p.graph.n())
            .filter(|v| p.special.binary_search(v).is_err())
            .map(|v| p.graph.degree(v))
            .collect();
        ds.sort_unstable();
        ds
    }

    #[test]
    fn s_set_matching_regime() {
        let p = SSetParams {
            n: 2000,
            b: 4,
            d: 4,
            d_prime: 200,
            planted_clique: None,
        };
        let g1 = gen_s_set_family(p, Which::First, &mut derive_rng(5, 0)).unwrap();
        let g2 = gen_s_set_family(p, Which::Second, &mut derive_rng(5, 0)).unwrap();
        assert_eq!(g1.degree_deficit, 0);
        assert_eq!(outside_degrees(&g1), vec![4; 1996]);
        assert_eq!(outside_degrees(&g1), outside_degrees(&g2));
        for (&w1, &w2) in g1.special.iter().zip(&g2.special) {
            assert_eq!(g1.graph.degree(w1), 0);
            assert_eq!(g2.graph.degree(w2), 200);
        }
        let m1 = exact_moment(&g1.graph, 2).sum;
        let m2 = exact_moment(&g2.graph, 2).sum;
        assert_eq!(m2 - &m1, BigUint::from(4 * 200 * 200u32));
    }

    #[test]
    fn s_set_complete_regime_and_clique() {
        let p = SSetParams {
            n: 104,
            b: 4,
            d: 6,
            d_prime: 100,
            planted_clique: Some(8),
        };
        let g1 = gen_s_set_family(p, Which::First, &mut derive_rng(9, 0)).unwrap();
        let g2 = gen_s_set_family(p, Which::Second, &mut derive_rng(9, 0)).unwrap();
        for &w in &g2.special {
            assert_eq!(g2.graph.degree(w), 100);
        }
        assert_eq!(outside_degrees(&g1), outside_degrees(&g2));
        assert!(core_number(&g1.graph) >= 7);
        let bad = SSetParams { d_prime: 60, ..p };
        assert!(gen_s_set_family(bad, Which::Second, &mut derive_rng(9, 0)).is_err());
    }

    #[test]
    fn valid_lb_pair() {
        let mut rng = derive_rng(2, 0);
        let g1 = gen_valid_lb(10_000, 1.0, Which::First, &mut rng).unwrap();
        let g2 = gen_valid_lb(10_000, 1.0, Which::Second, &mut rng).unwrap();
        assert_eq!(g1.graph.n(), 10_000);
        assert_eq!(2 * g1.graph.m(), 2 * 10_000);
        assert_eq!(core_number(&g1.graph), 2);
        assert_eq!(core_number(&g2.graph), 399);
        assert_eq!(g2.special.len(), 400);
        // Average degree at least 3c^2.
        assert!(2.0 * g2.graph.m() as f64 / 10_000.0 >= 3.0);
    }
}
