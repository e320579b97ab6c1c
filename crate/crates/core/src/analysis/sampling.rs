use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use rand::Rng;

use crate::graph::Graph;
use crate::num::{big_to_f64, fraction_to_f64};
use crate::weights::{vertex_weights_f64, WeightProfile};
use crate::Fraction;

/// How often a uniform multiset `R` of `r` vertices satisfied each of
/// `wt(R)` in `(1 +- eps/2) (r/n) M`, `d_R <= (12/delta) (r/n) m` and
/// `sum over out-edges of R of wt(e)^2 <= (18/delta) (r/n) mu_(2s-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VertexSampleEvents {
    pub resamples: u64,
    pub weight_ok: u64,
    pub edges_ok: u64,
    pub squares_ok: u64,
    pub all_ok: u64,
}

impl VertexSampleEvents {
    pub fn all_fraction(&self) -> f64 {
        self.all_ok as f64 / self.resamples as f64
    }
}

pub fn vertex_sample_events<R: Rng + ?Sized>(
    g: &Graph,
    profile: &WeightProfile,
    eps: Fraction,
    delta: Fraction,
    r: u64,
    resamples: u64,
    rng: &mut R,
) -> VertexSampleEvents {
    let n = g.n();
    let s = profile.s as i32;
    let wt = vertex_weights_f64(profile);
    let square: Vec<f64> = (0..n)
        .map(|v| {
            let dv = (g.degree(v) as f64).powi(s - 1);
            g.out_neighbors(v)
                .map(|u| {
                    let e = dv + (g.degree(u) as f64).powi(s - 1);
                    e * e
                })
                .sum()
        })
        .collect();
    let (eps, delta) = (fraction_to_f64(eps), fraction_to_f64(delta));
    let frac = r as f64 / n as f64;
    let mean_wt = frac * big_to_f64(&profile.total);
    let edge_cap = 12.0 / delta * frac * g.m() as f64;
    let square_cap = 18.0 / delta * frac * big_to_f64(&profile.mu_2s_minus_1);

    let mut out = VertexSampleEvents {
        resamples,
        weight_ok: 0,
        edges_ok: 0,
        squares_ok: 0,
        all_ok: 0,
    };
    for _ in 0..resamples {
        let (mut w, mut d, mut sq) = (0.0, 0.0, 0.0);
        for _ in 0..r {
            let v = rng.gen_range(0..n);
            w += wt[v];
            d += g.degree(v) as f64;
            sq += square[v];
        }
        let a = (w - mean_wt).abs() <= 0.5 * eps * mean_wt;
        let b = d <= edge_cap;
        let c = sq <= square_cap;
        out.weight_ok += a as u64;
        out.edges_ok += b as u64;
        out.squares_ok += c as u64;
        out.all_ok += (a && b && c) as u64;
    }
    out
}
