//! Two variants of the estimator: a thresholded first-moment estimator for
//! graphs of bounded degeneracy, and an estimator with uniform edge samples.

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::graph::Graph;
use crate::oracle::{Oracle, QueryStats};

use super::{
    diff, estimate_once_thresholded, exact_scan, plan_s1_threshold, EstimateError, EstimateReport,
    EstimatorConfig, Mode,
};

/// First-moment estimate in which an edge sample scores only if its lower
/// endpoint has degree at most `theta = 2 alpha / eps`.
///
/// Requires `cfg.s == 1` and `cfg.alpha`. High-degree vertices are ignored, so
/// the expectation lies in `[(1 - eps) M1 / n, M1 / n]` when `alpha` bounds
/// the degeneracy. `m1_hat` is a guess of `M1 = 2m`.
pub fn estimate_s1_threshold<O: Oracle + ?Sized>(
    oracle: &mut O,
    cfg: &EstimatorConfig,
    m1_hat: f64,
) -> Result<EstimateReport, EstimateError> {
    cfg.validate()?;
    if cfg.s != 1 {
        return Err(EstimateError::NotFirstMoment { s: cfg.s });
    }
    let alpha = cfg.alpha.ok_or(EstimateError::MissingAlpha)?;
    let n = oracle.vertex_count();
    let plan = plan_s1_threshold(n, m1_hat, alpha, cfg);
    let theta = 2.0 * alpha as f64 / cfg.eps_f64();
    let before = oracle.stats();
    let (estimate, exceeded) = if plan.exceeds(cfg.cap_for(n)) {
        (exact_scan(oracle, 1)?, true)
    } else {
        (
            estimate_once_thresholded(oracle, plan.r, plan.q, theta)?,
            false,
        )
    };
    Ok(EstimateReport {
        estimate,
        r: plan.r,
        q: plan.q,
        stats: diff(oracle.stats(), before),
        mode: Mode::S1Threshold,
        guess_trace: None,
        exceeded_sublinear_budget: exceeded,
        truncated: false,
        m_hat_clamped: plan.clamped,
    })
}

/// Estimate of `M / n` from `q` uniform edge samples with full graph access.
///
/// Each sample is a uniform ordered pair `(v, u)` among the `2m` adjacency
/// slots. It scores `d_v^(s-1) + d_u^(s-1)` when `v` precedes `u`, and the
/// result is `(2m / q) * (sum of scores) / n`. The edgeless graph gives 0.
pub fn estimate_with_edge_samples<R: Rng + ?Sized>(
    g: &Graph,
    s: u32,
    q: u64,
    rng: &mut R,
) -> Result<EstimateReport, EstimateError> {
    if q == 0 {
        return Err(EstimateError::EmptySample { r: 0, q });
    }
    let slots = 2 * g.m();
    let mut report = EstimateReport {
        estimate: 0.0,
        r: 0,
        q,
        stats: QueryStats::default(),
        mode: Mode::EdgeSamples,
        guess_trace: None,
        exceeded_sublinear_budget: false,
        truncated: false,
        m_hat_clamped: false,
    };
    if slots == 0 {
        return Ok(report);
    }
    let mut sum = 0.0;
    for _ in 0..q {
        let (v, u) = g.slot(rng.gen_range(0..slots));
        if g.precedes(v, u) {
            let e = s as i32 - 1;
            sum += (g.degree(v) as f64).powi(e) + (g.degree(u) as f64).powi(e);
        }
    }
    report.estimate = (slots as f64 / q as f64) * sum / g.n() as f64;
    Ok(report)
}
