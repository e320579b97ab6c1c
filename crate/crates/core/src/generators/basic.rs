use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::graph::{Graph, Vertex};

use super::GeneratorError;

fn build(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid edge")
}

fn require(ok: bool, msg: &'static str) -> Result<(), GeneratorError> {
    if ok {
        Ok(())
    } else {
        Err(GeneratorError::Invalid(msg))
    }
}

pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    require(n >= 1, "path needs n >= 1")?;
    Ok(build(n, (1..n).map(|i| (i - 1, i))))
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    require(n >= 3, "cycle needs n >= 3")?;
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n))))
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Result<Graph, GeneratorError> {
    require(leaves >= 1, "star needs at least one leaf")?;
    Ok(build(leaves + 1, (1..=leaves).map(|l| (0, l))))
}

pub fn clique(k: usize) -> Result<Graph, GeneratorError> {
    require(k >= 1, "clique needs k >= 1")?;
    Ok(build(
        k,
        (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))),
    ))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GeneratorError> {
    require(
        a >= 1 && b >= 1,
        "complete bipartite needs both sides nonempty",
    )?;
    Ok(build(
        a + b,
        (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))),
    ))
}

/// `G(n, p)` by geometric skipping over the pairs `(v, w)`, `w < v`.
pub fn erdos_renyi<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Graph, GeneratorError> {
    require(n >= 1, "erdos_renyi needs n >= 1")?;
    require((0.0..=1.0).contains(&p), "erdos_renyi needs p in [0, 1]")?;
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return clique(n);
    }
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let u: f64 = rng.gen();
        let skip = ((1.0 - u).ln() / log_q).floor();
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    Ok(build(n, edges))
}

/// Preferential attachment: a seed clique on `m0 + 1` vertices, then each new
/// vertex links to `m0` distinct earlier vertices drawn with probability
/// proportional to degree. Every vertex after the seed has `m0` earlier
/// neighbors, so the core number is exactly `m0`.
pub fn preferential_attachment<R: Rng + ?Sized>(
    n: usize,
    m0: usize,
    rng: &mut R,
) -> Result<Graph, GeneratorError> {
    require(m0 >= 1, "preferential_attachment needs m0 >= 1")?;
    require(n > m0, "preferential_attachment needs n > m0")?;
    let seed = m0 + 1;
    let mut edges: Vec<(Vertex, Vertex)> = (0..seed)
        .flat_map(|u| (u + 1..seed).map(move |v| (u, v)))
        .collect();
    // Every edge endpoint, so a uniform entry is a degree-proportional vertex.
    let mut endpoints: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut picked = Vec::with_capacity(m0);
    for v in seed..n {
        picked.clear();
        while picked.len() < m0 {
            let u = endpoints[rng.gen_range(0..endpoints.len())];
            if !picked.contains(&u) {
                picked.push(u);
            }
        }
        for &u in &picked {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    Ok(build(n, edges))
}

/// Star with `leaves` leaves next to a path on `path_len` vertices.
pub fn star_plus_path(leaves: usize, path_len: usize) -> Result<Graph, GeneratorError> {
    Ok(star(leaves)?.disjoint_union(&path(path_len)?))
}

/// Clique on `0..k`, the other `n - k` vertices isolated.
pub fn clique_plus_independent(n: usize, k: usize) -> Result<Graph, GeneratorError> {
    require(
        k >= 1 && k <= n,
        "clique_plus_independent needs 1 <= k <= n",
    )?;
    Ok(build(
        n,
        (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))),
    ))
}

/// Clique on `0..k` joined completely to an independent set on
/// `k..k+tail`; the rest isolated.
pub fn clique_bipartite_tail(n: usize, k: usize, tail: usize) -> Result<Graph, GeneratorError> {
    require(k >= 1, "clique_bipartite_tail needs k >= 1")?;
    require(k + tail <= n, "clique_bipartite_tail needs k + tail <= n")?;
    let inner = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
    let cross = (0..k).flat_map(|u| (k..k + tail).map(move |v| (u, v)));
    Ok(build(n, inner.chain(cross)))
}

pub fn cycle_plus_cycle(a: usize, b: usize) -> Result<Graph, GeneratorError> {
    Ok(cycle(a)?.disjoint_union(&cycle(b)?))
}

pub fn cycle_plus_clique(a: usize, k: usize) -> Result<Graph, GeneratorError> {
    Ok(cycle(a)?.disjoint_union(&clique(k)?))
}
