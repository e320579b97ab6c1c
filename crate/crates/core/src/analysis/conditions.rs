use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::graph::Graph;
use crate::num::big_to_f64;
use crate::weights::{weight_profile, WeightProfile};
use crate::Fraction;

/// Leading constants of the vertex-sample and edge-sample conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConditionConstants {
    pub vertex: u64,
    pub edge: u64,
}

impl Default for ConditionConstants {
    fn default() -> Self {
        ConditionConstants {
            vertex: 30,
            edge: 2000,
        }
    }
}

/// Whether `(r, q)` meet
/// `r >= c_v n sum wt(v)^2 / (eps^2 delta M^2)` and
/// `q >= c_e m mu_(2s-1) / (eps^2 delta^3 M^2)`.
///
/// The comparisons are exact; the right-hand sides are also reported as
/// floats. An edgeless graph has `M = 0`, the estimator is exact there, and
/// both conditions are reported as met with right-hand side 0.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConditionReport {
    pub vertex_condition_rhs: f64,
    pub edge_condition_rhs: f64,
    pub r_given: u64,
    pub q_given: u64,
    pub vertex_ok: bool,
    pub edge_ok: bool,
}

impl ConditionReport {
    pub fn both(&self) -> bool {
        self.vertex_ok && self.edge_ok
    }
}

/// A threshold `num / den` kept as integers.
struct Threshold {
    num: BigUint,
    den: BigUint,
}

impl Threshold {
    fn met_by(&self, x: u64) -> bool {
        BigUint::from(x) * &self.den >= self.num
    }

    fn to_f64(&self) -> f64 {
        if self.den.is_zero() {
            return 0.0;
        }
        let (whole, rem) = (&self.num / &self.den, &self.num % &self.den);
        // Shift the remainder so its ratio keeps precision when den is huge.
        let shift = self.den.bits().saturating_sub(60);
        let frac = match (rem >> shift).to_f64().zip((&self.den >> shift).to_f64()) {
            Some((a, b)) if b > 0.0 => a / b,
            _ => 0.0,
        };
        big_to_f64(&whole) + frac
    }

    /// Smallest positive integer meeting the threshold.
    fn ceil(&self) -> u64 {
        if self.den.is_zero() {
            return 1;
        }
        let (whole, rem) = (&self.num / &self.den, &self.num % &self.den);
        let c = if rem.is_zero() { whole } else { whole + 1u32 };
        c.to_u64().unwrap_or(u64::MAX).max(1)
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn thresholds(
    g: &Graph,
    profile: &WeightProfile,
    eps: Fraction,
    delta: Fraction,
    consts: ConditionConstants,
) -> (Threshold, Threshold) {
    let (a, b) = (big(*eps.numer()), big(*eps.denom()));
    let (c, d) = (big(*delta.numer()), big(*delta.denom()));
    let m2 = &profile.total * &profile.total;
    let eps_num = &b * &b;
    let eps_den = &a * &a;
    // 1 / (eps^2 delta) = b^2 d / (a^2 c).
    let vertex = Threshold {
        num: big(consts.vertex) * big(g.n() as u64) * &profile.sum_squares * &eps_num * &d,
        den: &eps_den * &c * &m2,
    };
    let edge = Threshold {
        num: big(consts.edge) * big(g.m() as u64) * &profile.mu_2s_minus_1 * &eps_num * d.pow(3),
        den: &eps_den * c.pow(3) * &m2,
    };
    (vertex, edge)
}

pub fn check_conditions_with(
    g: &Graph,
    profile: &WeightProfile,
    eps: Fraction,
    delta: Fraction,
    r: u64,
    q: u64,
    consts: ConditionConstants,
) -> ConditionReport {
    let (vertex, edge) = thresholds(g, profile, eps, delta, consts);
    ConditionReport {
        vertex_condition_rhs: vertex.to_f64(),
        edge_condition_rhs: edge.to_f64(),
        r_given: r,
        q_given: q,
        vertex_ok: vertex.den.is_zero() || vertex.met_by(r),
        edge_ok: edge.den.is_zero() || edge.met_by(q),
    }
}

/// Checks `(r, q)` against both conditions with the default constants.
pub fn check_conditions(
    g: &Graph,
    s: u32,
    eps: Fraction,
    delta: Fraction,
    r: u64,
    q: u64,
) -> ConditionReport {
    let profile = weight_profile(g, s);
    check_conditions_with(g, &profile, eps, delta, r, q, ConditionConstants::default())
}

/// The smallest `(r, q)`, each at least 1, meeting both conditions.
pub fn certified_plan(
    g: &Graph,
    profile: &WeightProfile,
    eps: Fraction,
    delta: Fraction,
    consts: ConditionConstants,
) -> (u64, u64) {
    let (vertex, edge) = thresholds(g, profile, eps, delta, consts);
    (vertex.ceil(), edge.ceil())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn star_vertex_threshold_is_exact() {
        let g = star(4);
        let eps = Fraction::new(1, 2);
        let delta = Fraction::new(1, 3);
        let pass = check_conditions(&g, 2, eps, delta, 450, 1);
        assert!(pass.vertex_ok);
        assert_eq!(pass.vertex_condition_rhs, 450.0);
        assert!(!check_conditions(&g, 2, eps, delta, 449, 1).vertex_ok);
        let p = weight_profile(&g, 2);
        assert_eq!(
            certified_plan(&g, &p, eps, delta, Default::default()).0,
            450
        );
    }

    #[test]
    fn triangle_edge_threshold() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let eps = Fraction::new(1, 4);
        let delta = Fraction::new(1, 3);
        // 2000 * 3 * 6 / (eps^2 delta^3 36) = 1000 * 16 * 27
        let rep = check_conditions(&g, 1, eps, delta, 1, 432_000);
        assert_eq!(rep.edge_condition_rhs, 432_000.0);
        assert!(rep.edge_ok);
        assert!(!check_conditions(&g, 1, eps, delta, 1, 431_999).edge_ok);
    }

    #[test]
    fn edgeless_graph_is_trivially_met() {
        let g = Graph::empty(4);
        let rep = check_conditions(&g, 2, Fraction::new(1, 2), Fraction::new(1, 2), 1, 1);
        assert!(rep.both());
        assert_eq!(rep.vertex_condition_rhs, 0.0);
    }
}
