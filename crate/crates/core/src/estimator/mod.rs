//! The moment estimator, its sample-size planners, the geometric search that
//! removes the need to know `M`, and two variants (thresholded `s = 1`, and
//! full edge-sample access).
//!
//! One run with `r` vertex samples and `q` edge samples:
//!
//! 1. sample a multiset `R` of `r` uniform vertices and query their degrees;
//! 2. `q` times, pick `v` in `R` with probability `d_v / d_R`, query a uniform
//!    neighbor `u` and its degree, and score `d_v^(s-1) + d_u^(s-1)` if `v`
//!    precedes `u` in the degree ordering, 0 otherwise;
//! 3. return `(1/r) * (d_R/q) * sum of scores`.
//!
//! The expectation of the result is exactly `M / n` for every `r, q >= 1`.

mod plan;
mod sample;
mod search;
mod variants;

use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::num::fraction_to_f64;
use crate::oracle::{Oracle, QueryError, QueryStats};
use crate::weights::ExactMoment;
use crate::Fraction;

pub use plan::{
    edge_coefficient, plan_degeneracy, plan_edge_samples, plan_general, plan_s1_threshold,
    vertex_coefficient, Plan,
};
pub use sample::RSample;
pub use search::{geometric_search, guess_cost, guess_plan, max_guesses, repetitions};
pub use variants::{estimate_s1_threshold, estimate_with_edge_samples};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("moment order s must be at least 1")]
    MomentOrder,
    #[error("eps must lie in (0, 1), got {0}")]
    Eps(Fraction),
    #[error("delta must lie in (0, 1), got {0}")]
    Delta(Fraction),
    #[error("degeneracy bound must be at least 1")]
    Alpha,
    #[error("constant {name} must be positive and finite, got {value}")]
    Constant { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("sample sizes must be positive (r = {r}, q = {q})")]
    EmptySample { r: u64, q: u64 },
    #[error("geometric search needs at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("this estimator needs a degeneracy bound")]
    MissingAlpha,
    #[error("the thresholded variant estimates the first moment only, got s = {s}")]
    NotFirstMoment { s: u32 },
}

/// Accuracy target and constants for planning.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EstimatorConfig {
    pub s: u32,
    pub eps: Fraction,
    pub delta: Fraction,
    /// Upper bound on the degeneracy; `None` plans for general graphs.
    pub alpha: Option<u64>,
    /// Vertex-sample constant.
    pub c_r: f64,
    /// Edge-sample constant.
    pub c_q: f64,
    /// Median repetitions per guess in the geometric search.
    pub c_t: f64,
    /// Multiplier on the degeneracy-dependent vertex-sample term.
    pub c_arb: f64,
    /// A planned `r` or `q` above `workload_cap * n` is replaced by an exact
    /// degree scan.
    pub workload_cap: f64,
}

impl EstimatorConfig {
    pub const C_R: f64 = 120.0;
    pub const C_Q: f64 = 1000.0;
    pub const C_T: f64 = 4.0;
    pub const C_ARB: f64 = 4.0;
    pub const WORKLOAD_CAP: f64 = 50.0;

    pub fn new(s: u32, eps: Fraction, delta: Fraction) -> Result<Self, ConfigError> {
        let cfg = EstimatorConfig {
            s,
            eps,
            delta,
            alpha: None,
            c_r: Self::C_R,
            c_q: Self::C_Q,
            c_t: Self::C_T,
            c_arb: Self::C_ARB,
            workload_cap: Self::WORKLOAD_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_alpha(mut self, alpha: Option<u64>) -> Result<Self, ConfigError> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let unit = |x: Fraction| *x.numer() > 0 && x.numer() < x.denom();
        if self.s < 1 {
            return Err(ConfigError::MomentOrder);
        }
        if !unit(self.eps) {
            return Err(ConfigError::Eps(self.eps));
        }
        if !unit(self.delta) {
            return Err(ConfigError::Delta(self.delta));
        }
        if self.alpha == Some(0) {
            return Err(ConfigError::Alpha);
        }
        for (name, value) in [
            ("c_r", self.c_r),
            ("c_q", self.c_q),
            ("c_t", self.c_t),
            ("c_arb", self.c_arb),
            ("workload_cap", self.workload_cap),
        ] {
            // NaN fails this comparison as well.
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::Constant { name, value });
            }
        }
        Ok(())
    }

    pub fn eps_f64(&self) -> f64 {
        fraction_to_f64(self.eps)
    }

    /// Largest `r` or `q` allowed before falling back to an exact scan.
    pub fn cap_for(&self, n: usize) -> f64 {
        self.workload_cap * n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Mode {
    General,
    Degeneracy,
    SearchGeneral,
    SearchDegeneracy,
    S1Threshold,
    EdgeSamples,
    /// Caller-supplied `(r, q)`, typically certified against the exact
    /// sample-size conditions.
    Certified,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::General => "general",
            Mode::Degeneracy => "degeneracy",
            Mode::SearchGeneral => "search-general",
            Mode::SearchDegeneracy => "search-degeneracy",
            Mode::S1Threshold => "s1-threshold",
            Mode::EdgeSamples => "edge-samples",
            Mode::Certified => "certified",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One guess of the geometric search.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GuessRow {
    pub guess: f64,
    pub r: u64,
    pub q: u64,
    pub repetitions: u32,
    pub median: f64,
    pub stop: bool,
    /// The guess's plan exceeded the workload cap and `median` is exact.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EstimateReport {
    /// Estimate of `M / n`.
    pub estimate: f64,
    pub r: u64,
    pub q: u64,
    pub stats: QueryStats,
    pub mode: Mode,
    pub guess_trace: Option<Vec<GuessRow>>,
    /// The plan exceeded the workload cap and the estimate is an exact scan.
    pub exceeded_sublinear_budget: bool,
    /// The oracle's query budget ran out and the estimate is partial.
    pub truncated: bool,
    /// The supplied guess of `M` was below 1 and was raised to 1.
    pub m_hat_clamped: bool,
}

impl EstimateReport {
    fn new(mode: Mode, estimate: f64, r: u64, q: u64, stats: QueryStats) -> Self {
        EstimateReport {
            estimate,
            r,
            q,
            stats,
            mode,
            guess_trace: None,
            exceeded_sublinear_budget: false,
            truncated: false,
            m_hat_clamped: false,
        }
    }
}

/// Outcome of a run that may have been cut short by the oracle's budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialEstimate {
    pub value: f64,
    /// Vertex samples whose degree was obtained.
    pub r_done: u64,
    /// Edge samples completed.
    pub q_done: u64,
    pub truncated: bool,
}

/// Maps a budget refusal to `None`; other errors pass through.
fn within_budget<T>(res: Result<T, QueryError>) -> Result<Option<T>, QueryError> {
    match res {
        Ok(x) => Ok(Some(x)),
        Err(QueryError::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[inline]
fn power(d: u64, e: u32) -> f64 {
    (d as f64).powi(e as i32)
}

/// Shared body of the estimator. `cutoff` zeroes scores from sampled vertices
/// whose degree exceeds it.
fn run<O: Oracle + ?Sized>(
    oracle: &mut O,
    r: u64,
    q: u64,
    s: u32,
    cutoff: Option<f64>,
) -> Result<PartialEstimate, EstimateError> {
    if r == 0 || q == 0 {
        return Err(EstimateError::EmptySample { r, q });
    }
    let truncated = |value, r_done, q_done| PartialEstimate {
        value,
        r_done,
        q_done,
        truncated: true,
    };

    let mut sample = RSample::with_capacity(r.min(1 << 24) as usize);
    for _ in 0..r {
        let Some(v) = within_budget(oracle.random_vertex())? else {
            return Ok(truncated(0.0, sample.len() as u64, 0));
        };
        let Some(d) = within_budget(oracle.degree(v))? else {
            return Ok(truncated(0.0, sample.len() as u64, 0));
        };
        sample.push(v, d as u64);
    }
    let d_r = sample.d_r();
    if d_r == 0 {
        return Ok(PartialEstimate {
            value: 0.0,
            r_done: r,
            q_done: 0,
            truncated: false,
        });
    }

    let scale = |sum: f64, draws: u64| (d_r as f64 / draws as f64) * sum / r as f64;
    let mut sum = 0.0;
    for i in 0..q {
        let j = sample.draw(oracle);
        let v = sample.members()[j];
        let dv = sample.degrees()[j];
        let Some(u) = within_budget(oracle.random_neighbor(v))? else {
            let value = if i == 0 { 0.0 } else { scale(sum, i) };
            return Ok(truncated(value, r, i));
        };
        let Some(du) = within_budget(oracle.degree(u))? else {
            let value = if i == 0 { 0.0 } else { scale(sum, i) };
            return Ok(truncated(value, r, i));
        };
        let du = du as u64;
        let ordered = dv < du || (dv == du && v < u);
        let kept = cutoff.is_none_or(|theta| dv as f64 <= theta);
        if ordered && kept {
            sum += power(dv, s - 1) + power(du, s - 1);
        }
    }
    Ok(PartialEstimate {
        value: scale(sum, q),
        r_done: r,
        q_done: q,
        truncated: false,
    })
}

/// One run of the estimator with `r` vertex samples and `q` edge samples.
///
/// Issues `r` uniform-vertex, `r + q` degree and `q` neighbor queries, except
/// that a sample whose degrees sum to 0 returns 0 without edge samples.
pub fn estimate_once<O: Oracle + ?Sized>(
    oracle: &mut O,
    r: u64,
    q: u64,
    s: u32,
) -> Result<f64, EstimateError> {
    let out = run(oracle, r, q, s, None)?;
    if out.truncated {
        let limit = oracle.stats().total();
        return Err(QueryError::BudgetExhausted { limit }.into());
    }
    Ok(out.value)
}

/// Like [`estimate_once`], but a budget refusal ends the run with the
/// estimate formed from the samples completed so far (0 when no edge sample
/// completed).
pub fn estimate_once_partial<O: Oracle + ?Sized>(
    oracle: &mut O,
    r: u64,
    q: u64,
    s: u32,
) -> Result<PartialEstimate, EstimateError> {
    run(oracle, r, q, s, None)
}

pub(crate) fn estimate_once_thresholded<O: Oracle + ?Sized>(
    oracle: &mut O,
    r: u64,
    q: u64,
    theta: f64,
) -> Result<f64, EstimateError> {
    let out = run(oracle, r, q, 1, Some(theta))?;
    if out.truncated {
        let limit = oracle.stats().total();
        return Err(QueryError::BudgetExhausted { limit }.into());
    }
    Ok(out.value)
}

/// Reads every degree through the oracle (`n` degree queries) and returns the
/// exact `M / n`.
pub fn exact_scan<O: Oracle + ?Sized>(oracle: &mut O, s: u32) -> Result<f64, EstimateError> {
    let n = oracle.vertex_count();
    let mut sum = BigUint::zero();
    for v in 0..n {
        let d = oracle.degree(v)?;
        sum += BigUint::from(d).pow(s);
    }
    Ok(ExactMoment { s, n, sum }.mean())
}

/// Plans `(r, q)` from the guess `m_hat` of `M`, using the degeneracy-aware
/// planner when `cfg.alpha` is set, then runs once. Plans above the workload
/// cap are answered by an exact scan instead.
pub fn estimate_planned<O: Oracle + ?Sized>(
    oracle: &mut O,
    m_hat: f64,
    cfg: &EstimatorConfig,
) -> Result<EstimateReport, EstimateError> {
    cfg.validate()?;
    let n = oracle.vertex_count();
    let (plan, mode) = match cfg.alpha {
        Some(alpha) => (
            plan_degeneracy(n, m_hat, alpha as f64, cfg),
            Mode::Degeneracy,
        ),
        None => (plan_general(n, m_hat, cfg), Mode::General),
    };
    let before = oracle.stats();
    let mut report = if plan.exceeds(cfg.cap_for(n)) {
        let estimate = exact_scan(oracle, cfg.s)?;
        let mut rep = EstimateReport::new(mode, estimate, plan.r, plan.q, QueryStats::default());
        rep.exceeded_sublinear_budget = true;
        rep
    } else {
        let out = run(oracle, plan.r, plan.q, cfg.s, None)?;
        let mut rep = EstimateReport::new(mode, out.value, plan.r, plan.q, QueryStats::default());
        rep.truncated = out.truncated;
        rep
    };
    report.stats = diff(oracle.stats(), before);
    report.m_hat_clamped = plan.clamped;
    Ok(report)
}

/// Runs with caller-supplied `(r, q)`.
pub fn estimate_fixed<O: Oracle + ?Sized>(
    oracle: &mut O,
    r: u64,
    q: u64,
    s: u32,
) -> Result<EstimateReport, EstimateError> {
    let before = oracle.stats();
    let out = run(oracle, r, q, s, None)?;
    let mut report = EstimateReport::new(Mode::Certified, out.value, r, q, QueryStats::default());
    report.truncated = out.truncated;
    report.stats = diff(oracle.stats(), before);
    Ok(report)
}

pub(crate) fn diff(after: QueryStats, before: QueryStats) -> QueryStats {
    QueryStats {
        uniform_vertex: after.uniform_vertex - before.uniform_vertex,
        degree: after.degree - before.degree,
        neighbor: after.neighbor - before.neighbor,
        pair: after.pair - before.pair,
    }
}
