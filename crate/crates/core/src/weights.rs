//! Edge and vertex weights over the degree ordering, and exact moments.
//!
//! An ordered edge `(v, u)` with `v` before `u` weighs `d_v^(s-1) + d_u^(s-1)`;
//! the reverse orientation weighs 0. Summing over all out-edges charges every
//! undirected edge once with both endpoints' `d^(s-1)`, so the vertex weights
//! add up to `sum_v d_v^s`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{Graph, GraphError, Vertex};
use crate::num::big_to_f64;

#[inline]
fn big_pow(base: usize, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// Weight of the ordered edge `(v, u)` for moment order `s`.
pub fn edge_weight(g: &Graph, v: Vertex, u: Vertex, s: u32) -> Result<BigUint, GraphError> {
    assert!(s >= 1, "moment order must be at least 1");
    if !g.has_edge(v, u) {
        return Err(GraphError::NotAdjacent { u: v, v: u });
    }
    if g.precedes(v, u) {
        Ok(big_pow(g.degree(v), s - 1) + big_pow(g.degree(u), s - 1))
    } else {
        Ok(BigUint::zero())
    }
}

/// Everything the variance analysis needs about the weights of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WeightProfile {
    pub s: u32,
    pub vertex_weight: Vec<BigUint>,
    /// `M = sum_v wt(v)`, equal to `sum_v d_v^s`.
    pub total: BigUint,
    pub sum_squares: BigUint,
    /// `sum_v d_v^(2s-1)`.
    pub mu_2s_minus_1: BigUint,
    /// Sum over out-edges of `wt(e)^2`.
    pub edge_sum_squares: BigUint,
    pub max_out_degree: usize,
}

/// Enumerates every out-edge of the degree ordering.
pub fn weight_profile(g: &Graph, s: u32) -> WeightProfile {
    assert!(s >= 1, "moment order must be at least 1");
    let powers: Vec<BigUint> = g.degrees().map(|d| big_pow(d, s - 1)).collect();
    let mut vertex_weight = Vec::with_capacity(g.n());
    let mut total = BigUint::zero();
    let mut sum_squares = BigUint::zero();
    let mut edge_sum_squares = BigUint::zero();
    let mut max_out_degree = 0;
    for v in 0..g.n() {
        let mut wt = BigUint::zero();
        let mut out = 0;
        for u in g.out_neighbors(v) {
            let e = &powers[v] + &powers[u];
            edge_sum_squares += &e * &e;
            wt += e;
            out += 1;
        }
        max_out_degree = max_out_degree.max(out);
        sum_squares += &wt * &wt;
        total += &wt;
        vertex_weight.push(wt);
    }
    WeightProfile {
        s,
        vertex_weight,
        total,
        sum_squares,
        mu_2s_minus_1: degree_power_sum(g, 2 * s - 1),
        edge_sum_squares,
        max_out_degree,
    }
}

/// `sum_v d_v^p`.
pub fn degree_power_sum(g: &Graph, p: u32) -> BigUint {
    g.degrees().map(|d| big_pow(d, p)).sum()
}

/// `M = sum_v d_v^s` together with `n`, so the normalized moment `M / n` can
/// be formed exactly or as a float.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExactMoment {
    pub s: u32,
    pub n: usize,
    pub sum: BigUint,
}

impl ExactMoment {
    /// `M / n` as a float; 0 for the empty graph.
    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        // Divide in integers first so large sums keep their leading bits.
        let n = BigUint::from(self.n);
        let whole = &self.sum / &n;
        let rem = &self.sum % &n;
        big_to_f64(&whole) + rem.to_f64().unwrap_or(0.0) / self.n as f64
    }

    pub fn sum_f64(&self) -> f64 {
        big_to_f64(&self.sum)
    }
}

/// Direct summation of `d_v^s`; independent of the weight machinery.
pub fn exact_moment(g: &Graph, s: u32) -> ExactMoment {
    assert!(s >= 1, "moment order must be at least 1");
    ExactMoment {
        s,
        n: g.n(),
        sum: degree_power_sum(g, s),
    }
}

/// Float copy of the vertex weights, for samplers that run many resamples.
pub fn vertex_weights_f64(profile: &WeightProfile) -> Vec<f64> {
    profile.vertex_weight.iter().map(big_to_f64).collect()
}
