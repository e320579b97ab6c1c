use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_bigint::BigUint;

use crate::degeneracy::core_number;
use crate::graph::Graph;
use crate::num::{big_to_f64, log2, root};
use crate::weights::WeightProfile;

/// One inequality `lhs <= rhs`. `ok` is decided in exact integer arithmetic
/// (by raising both sides to a common power); `lhs` and `rhs` are floats for
/// display.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// `sum wt(v)^2 <= 4 M^(2 - 1/(s+1))`, as
/// `(sum wt^2)^(s+1) <= 4^(s+1) M^(2s+1)`.
pub fn verify_sum_square_bound(profile: &WeightProfile) -> BoundCheck {
    let s = profile.s;
    let m = &profile.total;
    let lhs = &profile.sum_squares;
    let ok = lhs.pow(s + 1) <= BigUint::from(4u32).pow(s + 1) * m.pow(2 * s + 1);
    let mf = big_to_f64(m);
    BoundCheck {
        name: "sum_wt_squared_le_4_m_pow",
        lhs: big_to_f64(lhs),
        rhs: 4.0 * mf.powf(2.0 - 1.0 / (s as f64 + 1.0)),
        ok,
    }
}

/// `max_v d+_v <= M^(1/(s+1))`, as `(d+max)^(s+1) <= M`.
pub fn verify_max_out_degree(profile: &WeightProfile) -> BoundCheck {
    let s = profile.s;
    let d = profile.max_out_degree;
    BoundCheck {
        name: "max_out_degree_le_m_root",
        lhs: d as f64,
        rhs: root(big_to_f64(&profile.total), s + 1),
        ok: big(d).pow(s + 1) <= profile.total,
    }
}

/// Degeneracy-dependent sum-of-squares bound: the ratio
/// `sum wt(v)^2 / (2^s alpha^(1/s) M^(2-1/s) log2(n)^2)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DegeneracyRatio {
    pub alpha: u64,
    pub lhs: f64,
    pub rhs_over_c: f64,
    /// 0 when the left-hand side is 0.
    pub ratio: f64,
}

pub fn verify_degeneracy_sum_square_bound(
    g: &Graph,
    profile: &WeightProfile,
    alpha: u64,
) -> DegeneracyRatio {
    let s = profile.s;
    let lhs = big_to_f64(&profile.sum_squares);
    let lg = log2(g.n() as f64);
    let m = big_to_f64(&profile.total);
    let rhs_over_c =
        2f64.powi(s as i32) * root(alpha as f64, s) * m.powf(2.0 - 1.0 / s as f64) * lg * lg;
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs_over_c };
    DegeneracyRatio {
        alpha,
        lhs,
        rhs_over_c,
        ratio,
    }
}

/// The norm inequalities relating `mu_(2s-1)`, `m`, `n` and `M`:
///
/// * `mu_(2s-1) <= M^(2-1/s)`
/// * `mu_(2s-1) <= n^(s-1) M`
/// * `2m <= n^(1-1/s) M^(1/s)`
/// * `n^(1-1/s) >= 2m mu_(2s-1) / M^2`
/// * `n^(s-1/s) / M^(1-1/s) >= 2m mu_(2s-1) / M^2`
///
/// The last two together say the general edge-sample plan meets the edge
/// condition.
pub fn verify_norm_inequalities(g: &Graph, profile: &WeightProfile) -> Vec<BoundCheck> {
    let s = profile.s;
    let n = big(g.n());
    let m = &profile.total;
    let mu = &profile.mu_2s_minus_1;
    let two_m = big(2 * g.m());
    let (nf, mf, muf, tmf) = (
        g.n() as f64,
        big_to_f64(m),
        big_to_f64(mu),
        (2 * g.m()) as f64,
    );
    let sf = s as f64;
    let prod = &two_m * mu;
    let prod_s = prod.pow(s);
    let prodf = tmf * muf / (mf * mf);

    let mut out = Vec::with_capacity(5);
    out.push(BoundCheck {
        name: "mu_2s_minus_1_le_m_pow",
        lhs: muf,
        rhs: mf.powf(2.0 - 1.0 / sf),
        ok: mu.pow(s) <= m.pow(2 * s - 1),
    });
    out.push(BoundCheck {
        name: "mu_2s_minus_1_le_n_pow_m",
        lhs: muf,
        rhs: nf.powi(s as i32 - 1) * mf,
        ok: *mu <= n.pow(s - 1) * m,
    });
    out.push(BoundCheck {
        name: "two_m_le_n_m_root",
        lhs: tmf,
        rhs: nf.powf(1.0 - 1.0 / sf) * mf.powf(1.0 / sf),
        ok: two_m.pow(s) <= n.pow(s - 1) * m,
    });
    out.push(BoundCheck {
        name: "edge_plan_first_term",
        lhs: if mf > 0.0 { prodf } else { 0.0 },
        rhs: nf.powf(1.0 - 1.0 / sf),
        ok: prod_s <= n.pow(s - 1) * m.pow(2 * s),
    });
    out.push(BoundCheck {
        name: "edge_plan_second_term",
        lhs: if mf > 0.0 { prodf } else { 0.0 },
        rhs: nf.powf(sf - 1.0 / sf) / mf.powf(1.0 - 1.0 / sf),
        ok: prod_s <= n.pow(s * s - 1) * m.pow(s + 1),
    });
    out
}

/// `core^(s+1) <= M` with the peeling core number.
fn verify_core_moment(g: &Graph, profile: &WeightProfile) -> BoundCheck {
    let s = profile.s;
    let k = core_number(g);
    BoundCheck {
        name: "core_number_le_m_root",
        lhs: k as f64,
        rhs: root(big_to_f64(&profile.total), s + 1),
        ok: big(k).pow(s + 1) <= profile.total,
    }
}

/// Every exact structural inequality for `(g, s)` except the bucket claim.
pub fn structural_checks(g: &Graph, profile: &WeightProfile) -> Vec<BoundCheck> {
    let mut out = Vec::with_capacity(8);
    out.push(verify_sum_square_bound(profile));
    out.push(verify_max_out_degree(profile));
    out.extend(verify_norm_inequalities(g, profile));
    out.push(verify_core_moment(g, profile));
    out
}
