//! Degeneracy via min-degree peeling.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::graph::Graph;
use crate::weights::exact_moment;

/// Per-vertex core numbers, by bucket-queue peeling in `O(n + m)`.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = g.degrees().collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // Vertices sorted by current degree, with the start of each degree block.
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &u in g.neighbors(v) {
            if degree[u] > degree[v] {
                // Move u to the front of its block, then shrink the block.
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order[pu] = w;
                    pos[w] = pu;
                    order[pw] = u;
                    pos[u] = pw;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Largest degree seen at removal time while peeling minimum-degree vertices.
/// This is the degeneracy bound `alpha` fed to degeneracy-aware planning.
pub fn core_number(g: &Graph) -> usize {
    core_numbers(g).into_iter().max().unwrap_or(0)
}

/// Whether `core_number(g) <= M^(1/(s+1))`, checked exactly as
/// `core^(s+1) <= M`.
pub fn verify_alpha_moment_bound(g: &Graph, s: u32) -> bool {
    let k = core_number(g);
    BigUint::from(k).pow(s + 1) <= exact_moment(g, s).sum
}
