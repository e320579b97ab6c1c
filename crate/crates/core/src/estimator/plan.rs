//! Sample sizes from a guess of `M`.
//!
//! Every count is `ceil(coefficient * term)` where the coefficient depends only
//! on `(eps, delta)` and the constants, and the term only on `(n, M, alpha, s)`.
//! The degeneracy-aware planner takes a minimum over a superset of the general
//! planner's terms, and both evaluate the shared terms through the same
//! functions, so it never plans more samples than the general one.

use crate::num::{ceil_count, log2, pow_ratio, root};
use crate::Fraction;
#[allow(unused_imports)]
use num_traits::Float;

use super::EstimatorConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Plan {
    pub r: u64,
    pub q: u64,
    /// The guess of `M` was below 1 (or NaN) and was raised to 1.
    pub clamped: bool,
}

impl Plan {
    /// Whether either sample size is above `cap`.
    pub fn exceeds(&self, cap: f64) -> bool {
        self.r as f64 > cap || self.q as f64 > cap
    }

    pub fn scaled(self, k: u64) -> Plan {
        Plan {
            r: self.r.saturating_mul(k),
            q: self.q.saturating_mul(k),
            clamped: self.clamped,
        }
    }
}

/// `c * b^x * d^y / (a^x * c_delta^y)` for `eps = a/b` and `delta = c_delta/d`,
/// i.e. `c / (eps^x * delta^y)`, with the rational part formed in integers
/// when it fits.
fn inverse_power_coefficient(c: f64, eps: Fraction, x: u32, delta: Fraction, y: u32) -> f64 {
    let (a, b) = (*eps.numer() as u128, *eps.denom() as u128);
    let (cd, d) = (*delta.numer() as u128, *delta.denom() as u128);
    let exact = (|| {
        let num = b.checked_pow(x)?.checked_mul(d.checked_pow(y)?)?;
        let den = a.checked_pow(x)?.checked_mul(cd.checked_pow(y)?)?;
        Some((num, den))
    })();
    match exact {
        Some((num, den)) => {
            let ratio = num_rational::Ratio::new(num, den);
            c * *ratio.numer() as f64 / *ratio.denom() as f64
        }
        None => {
            let e = *eps.numer() as f64 / *eps.denom() as f64;
            let dl = *delta.numer() as f64 / *delta.denom() as f64;
            c / (e.powi(x as i32) * dl.powi(y as i32))
        }
    }
}

/// `c_r / (eps^2 delta)`.
pub fn vertex_coefficient(cfg: &EstimatorConfig) -> f64 {
    inverse_power_coefficient(cfg.c_r, cfg.eps, 2, cfg.delta, 1)
}

/// `c_q / (eps^2 delta^3)`.
pub fn edge_coefficient(cfg: &EstimatorConfig) -> f64 {
    inverse_power_coefficient(cfg.c_q, cfg.eps, 2, cfg.delta, 3)
}

fn clamp_guess(m_hat: f64) -> (f64, bool) {
    if m_hat >= 1.0 {
        (m_hat, false)
    } else {
        (1.0, true)
    }
}

/// `n / M^(1/(s+1))`.
fn general_r_term(n: f64, m: f64, s: u32) -> f64 {
    n / root(m, s + 1)
}

/// `min{ n^(1-1/s), n^(s-1/s) / M^(1-1/s) }`; both are 1 when `s = 1`.
fn general_q_term(n: f64, m: f64, s: u32) -> f64 {
    let first = pow_ratio(n, s - 1, s);
    let second = pow_ratio(n, s * s - 1, s) / pow_ratio(m, s - 1, s);
    first.min(second)
}

/// `2^s * n * log2(n)^2 * (alpha / M)^(1/s)`.
fn degeneracy_r_term(n: f64, m: f64, alpha: f64, s: u32) -> f64 {
    let lg = log2(n);
    2f64.powi(s as i32) * n * lg * lg * root(alpha / m, s)
}

/// `min{ n * alpha / M^(1/s), n^s * alpha / M }`.
fn degeneracy_q_term(n: f64, m: f64, alpha: f64, s: u32) -> f64 {
    let first = n * alpha / root(m, s);
    let second = n.powi(s as i32) * alpha / m;
    first.min(second)
}

/// Sample sizes for arbitrary graphs from the guess `m_hat` of `M`.
pub fn plan_general(n: usize, m_hat: f64, cfg: &EstimatorConfig) -> Plan {
    let (m, clamped) = clamp_guess(m_hat);
    let n = n as f64;
    Plan {
        r: ceil_count(vertex_coefficient(cfg) * general_r_term(n, m, cfg.s)),
        q: ceil_count(edge_coefficient(cfg) * general_q_term(n, m, cfg.s)),
        clamped,
    }
}

/// Sample sizes for graphs of degeneracy at most `alpha`. An infinite `alpha`
/// reproduces [`plan_general`].
pub fn plan_degeneracy(n: usize, m_hat: f64, alpha: f64, cfg: &EstimatorConfig) -> Plan {
    let (m, clamped) = clamp_guess(m_hat);
    let n = n as f64;
    let s = cfg.s;
    let r_term = general_r_term(n, m, s).min(cfg.c_arb * degeneracy_r_term(n, m, alpha, s));
    let q_term = general_q_term(n, m, s).min(degeneracy_q_term(n, m, alpha, s));
    Plan {
        r: ceil_count(vertex_coefficient(cfg) * r_term),
        q: ceil_count(edge_coefficient(cfg) * q_term),
        clamped,
    }
}

/// Sample sizes for the thresholded first-moment estimator:
/// `r = c_r * n * alpha / (eps^3 delta M1)` and `q` from [`plan_degeneracy`]
/// at `s = 1`.
pub fn plan_s1_threshold(n: usize, m1_hat: f64, alpha: u64, cfg: &EstimatorConfig) -> Plan {
    let (m, clamped) = clamp_guess(m1_hat);
    let first = EstimatorConfig {
        s: 1,
        ..cfg.clone()
    };
    let coef = inverse_power_coefficient(cfg.c_r, cfg.eps, 3, cfg.delta, 1);
    Plan {
        r: ceil_count(coef * (n as f64) * (alpha as f64) / m),
        q: plan_degeneracy(n, m, alpha as f64, &first).q,
        clamped,
    }
}

/// Edge samples for the edge-sample variant: `c_q * m / (eps^2 delta^3 M^(1/s))`.
/// `r` is reported as 0 since the variant takes no vertex samples.
pub fn plan_edge_samples(edges: usize, m_hat: f64, cfg: &EstimatorConfig) -> Plan {
    let (m, clamped) = clamp_guess(m_hat);
    Plan {
        r: 0,
        q: ceil_count(edge_coefficient(cfg) * edges as f64 / root(m, cfg.s)),
        clamped,
    }
}
