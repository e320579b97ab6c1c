//! Dyadic degree classes `U_i` and, for each class, the partition of all
//! vertices by how many out-neighbors they have in it.
//!
//! `U_i` holds the vertices of degree in `(2^(i-1), 2^i]`, so degree 1 is
//! `U_0` and isolated vertices are in no class. For a fixed `i`, a vertex
//! with `c` out-neighbors in `U_i` is in `V_(i,0)` when `c <= alpha` and in
//! `V_(i,j)` when `2^(j-1) alpha < c <= 2^j alpha`. `U_hat(i,j)` is the set of
//! out-neighbors in `U_i` of the members of `V_(i,j)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::degeneracy::core_number;
use crate::graph::{Graph, Vertex};
use crate::weights::exact_moment;

/// Class index of a vertex of positive degree: `ceil(log2 d)`.
pub fn degree_bucket(d: usize) -> Option<u32> {
    match d {
        0 => None,
        d => Some(usize::BITS - (d - 1).leading_zeros()),
    }
}

/// Partition index `j` for `c` out-neighbors in a class.
fn out_bucket(c: u64, alpha: u64) -> u32 {
    let mut j = 0;
    let mut bound = alpha;
    while c > bound {
        j += 1;
        bound = bound.saturating_mul(2);
    }
    j
}

/// One nonempty cell `V_(i,j)` with `j >= 1`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BucketCell {
    pub i: u32,
    pub j: u32,
    pub v_size: usize,
    pub u_hat_size: usize,
    /// Ordered edges from `V_(i,j)` into `U_i`.
    pub edges: u64,
    /// `edges <= M / 2^((i-1)(s-1) + j - 1)`; checked for `j >= 2` only.
    pub claim_ok: Option<bool>,
    /// `|U_hat(i,j)| >= |V_(i,j)|`; checked for `j >= 2` only.
    pub hat_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BucketDecomposition {
    pub s: u32,
    pub alpha: u64,
    /// `alpha` is at least the core number, so the claim's hypothesis holds.
    pub hypothesis_holds: bool,
    /// `u[i]` lists `U_i`, for `i` in `0..=ceil(log2 n)`.
    pub u: Vec<Vec<Vertex>>,
    /// `part[i][v]` is the `j` with `v` in `V_(i,j)`.
    pub part: Vec<Vec<u32>>,
    /// Cells with `j >= 1` that are nonempty.
    pub cells: Vec<BucketCell>,
}

impl BucketDecomposition {
    /// Cells with `j >= 2` violating either check. Only meaningful when
    /// `hypothesis_holds`.
    pub fn violations(&self) -> impl Iterator<Item = &BucketCell> {
        self.cells
            .iter()
            .filter(|c| c.claim_ok == Some(false) || c.hat_ok == Some(false))
    }
}

/// `edges * 2^e <= M`, where `e` may be negative.
fn claim_holds(edges: u64, exponent: i64, total: &BigUint) -> bool {
    let e = BigUint::from(edges);
    if exponent >= 0 {
        (e << exponent as u64) <= *total
    } else {
        e <= total << (-exponent) as u64
    }
}

pub fn bucket_decomposition(g: &Graph, s: u32, alpha: u64) -> BucketDecomposition {
    assert!(alpha >= 1, "alpha must be at least 1");
    let n = g.n();
    let classes = degree_bucket(n.max(1)).unwrap() as usize + 1;
    let class_of: Vec<Option<u32>> = g.degrees().map(degree_bucket).collect();
    let mut u = vec![Vec::new(); classes];
    for (v, c) in class_of.iter().enumerate() {
        if let Some(i) = c {
            u[*i as usize].push(v);
        }
    }

    let mut part = vec![vec![0u32; n]; classes];
    let mut counts = vec![0u64; classes];
    for v in 0..n {
        for w in g.out_neighbors(v) {
            if let Some(i) = class_of[w] {
                counts[i as usize] += 1;
            }
        }
        for (i, c) in counts.iter_mut().enumerate() {
            if *c > 0 {
                part[i][v] = out_bucket(*c, alpha);
                *c = 0;
            }
        }
    }

    let total = exact_moment(g, s).sum;
    let mut cells = Vec::new();
    let mut stamp = vec![usize::MAX; n];
    for (i, row) in part.iter().enumerate() {
        let max_j = row.iter().copied().max().unwrap_or(0);
        for j in 1..=max_j {
            let members: Vec<Vertex> = (0..n).filter(|&v| row[v] == j).collect();
            if members.is_empty() {
                continue;
            }
            let tag = i * 64 + j as usize;
            let mut edges = 0u64;
            let mut u_hat_size = 0;
            for &v in &members {
                for w in g.out_neighbors(v) {
                    if class_of[w] == Some(i as u32) {
                        edges += 1;
                        if stamp[w] != tag {
                            stamp[w] = tag;
                            u_hat_size += 1;
                        }
                    }
                }
            }
            let checked = j >= 2;
            let exponent = (i as i64 - 1) * (s as i64 - 1) + j as i64 - 1;
            cells.push(BucketCell {
                i: i as u32,
                j,
                v_size: members.len(),
                u_hat_size,
                edges,
                claim_ok: checked.then(|| claim_holds(edges, exponent, &total)),
                hat_ok: checked.then_some(u_hat_size >= members.len()),
            });
        }
    }

    BucketDecomposition {
        s,
        alpha,
        hypothesis_holds: alpha >= core_number(g) as u64,
        u,
        part,
        cells,
    }
}
