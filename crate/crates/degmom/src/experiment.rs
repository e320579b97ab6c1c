//! Repeated estimator runs against exact ground truth.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use degmom_core::analysis::{certified_plan, ConditionConstants};
use degmom_core::estimator::{
    estimate_fixed, estimate_s1_threshold, estimate_with_edge_samples, plan_edge_samples,
};
use degmom_core::generators::GeneratorSpec;
use degmom_core::oracle::derive_rng;
use degmom_core::{
    estimate_planned, exact_moment, geometric_search, weight_profile, EstimateReport,
    EstimatorConfig, Graph, QueryOracle,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::load_edge_list;
use crate::params::{AlphaPolicy, Frac};

/// Trial `i` draws from stream `TRIAL_STREAM + i` of the master seed; the
/// low streams belong to graph generation.
pub const TRIAL_STREAM: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    File { path: PathBuf },
    Generator(GeneratorSpec),
}

impl GraphSource {
    pub fn load(&self) -> Result<(Graph, String)> {
        match self {
            GraphSource::File { path } => {
                let (g, _) = load_edge_list(path)?;
                Ok((g, path.display().to_string()))
            }
            GraphSource::Generator(spec) => {
                let g = spec
                    .generate()
                    .with_context(|| format!("generating {}", spec.label()))?;
                Ok((g.graph, spec.label()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    /// One run with sample sizes planned from a guess of `M`.
    Planned,
    /// Geometric search over guesses of `M`.
    Search,
    /// The thresholded first-moment variant.
    S1,
    /// Uniform edge samples with full graph access.
    Edge,
    /// Sample sizes that meet both sample-size conditions on this graph.
    Certified,
}

fn default_trials() -> u64 {
    1
}

/// Overrides for the planning constants; unset fields keep the defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Constants {
    pub c_r: Option<f64>,
    pub c_q: Option<f64>,
    pub c_t: Option<f64>,
    pub c_arb: Option<f64>,
    pub workload_cap: Option<f64>,
    pub c_vertex: Option<u64>,
    pub c_edge: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub graph: GraphSource,
    pub s: u32,
    pub eps: Frac,
    pub delta: Frac,
    #[serde(default)]
    pub alpha: AlphaPolicy,
    pub mode: RunMode,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    /// Guess of `M` for the planned modes; the exact value when absent.
    #[serde(default)]
    pub m_hat: Option<f64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub constants: Constants,
}

impl ExperimentSpec {
    pub fn config(&self, alpha: Option<u64>) -> Result<EstimatorConfig> {
        let mut cfg = EstimatorConfig::new(self.s, self.eps.0, self.delta.0)?.with_alpha(alpha)?;
        let c = &self.constants;
        cfg.c_r = c.c_r.unwrap_or(cfg.c_r);
        cfg.c_q = c.c_q.unwrap_or(cfg.c_q);
        cfg.c_t = c.c_t.unwrap_or(cfg.c_t);
        cfg.c_arb = c.c_arb.unwrap_or(cfg.c_arb);
        cfg.workload_cap = c.workload_cap.unwrap_or(cfg.workload_cap);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn condition_constants(&self) -> ConditionConstants {
        let d = ConditionConstants::default();
        ConditionConstants {
            vertex: self.constants.c_vertex.unwrap_or(d.vertex),
            edge: self.constants.c_edge.unwrap_or(d.edge),
        }
    }
}

/// One CSV row. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub s: u32,
    pub eps: f64,
    pub alpha_used: Option<u64>,
    pub mode: String,
    pub trial: u64,
    pub estimate: f64,
    pub truth: f64,
    pub relative_error: Option<f64>,
    pub r: u64,
    pub q: u64,
    pub uniform_queries: u64,
    pub degree_queries: u64,
    pub neighbor_queries: u64,
    pub pair_queries: u64,
    pub seed: u64,
    pub wall_time_s: Option<f64>,
    /// Guesses made by the search; empty in other modes.
    pub guesses: Option<usize>,
    pub exceeded_budget: bool,
    pub truncated: bool,
}

impl ResultRow {
    pub fn total_queries(&self) -> u64 {
        self.uniform_queries + self.degree_queries + self.neighbor_queries + self.pair_queries
    }

    /// Within `(1 ± eps)` of the truth; an exact 0 for a zero truth.
    pub fn success(&self) -> bool {
        if self.truth > 0.0 {
            (self.estimate - self.truth).abs() < self.eps * self.truth
        } else {
            self.estimate == 0.0
        }
    }
}

/// Everything a trial needs that does not change between trials.
pub struct Prepared<'g> {
    pub graph: &'g Graph,
    pub label: String,
    pub truth: f64,
    pub exact_m: f64,
    pub alpha: Option<u64>,
    pub cfg: EstimatorConfig,
    /// `(r, q)` for certified runs.
    pub certified: Option<(u64, u64)>,
}

impl<'g> Prepared<'g> {
    pub fn new(spec: &ExperimentSpec, graph: &'g Graph, label: String) -> Result<Self> {
        if spec.trials == 0 {
            bail!("trials must be at least 1");
        }
        let exact = exact_moment(graph, spec.s);
        let alpha = spec.alpha.resolve(graph);
        let cfg = spec.config(alpha)?;
        let certified = (spec.mode == RunMode::Certified).then(|| {
            let profile = weight_profile(graph, spec.s);
            certified_plan(
                graph,
                &profile,
                spec.eps.0,
                spec.delta.0,
                spec.condition_constants(),
            )
        });
        Ok(Prepared {
            graph,
            label,
            truth: exact.mean(),
            exact_m: exact.sum_f64(),
            alpha,
            cfg,
            certified,
        })
    }
}

fn run_one(spec: &ExperimentSpec, prep: &Prepared<'_>, trial: u64) -> Result<ResultRow> {
    let g = prep.graph;
    let stream = TRIAL_STREAM + trial;
    let m_hat = spec.m_hat.unwrap_or(prep.exact_m);
    let mut oracle = QueryOracle::for_trial(g, spec.seed, stream);
    let start = Instant::now();
    let report: EstimateReport = match spec.mode {
        RunMode::Planned => estimate_planned(&mut oracle, m_hat, &prep.cfg)?,
        RunMode::Search => geometric_search(&mut oracle, &prep.cfg)?,
        RunMode::S1 => estimate_s1_threshold(&mut oracle, &prep.cfg, m_hat)?,
        RunMode::Certified => {
            let (r, q) = prep.certified.expect("prepared for certified mode");
            estimate_fixed(&mut oracle, r, q, spec.s)?
        }
        RunMode::Edge => {
            let plan = plan_edge_samples(g.m(), m_hat, &prep.cfg);
            let cap = prep.cfg.cap_for(g.n()).floor() as u64;
            let q = plan.q.clamp(1, cap.max(1));
            let mut rng = derive_rng(spec.seed, stream);
            let mut rep = estimate_with_edge_samples(g, spec.s, q, &mut rng)?;
            rep.exceeded_sublinear_budget = plan.q > cap;
            rep.m_hat_clamped = plan.clamped;
            rep
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    let relative_error =
        (prep.truth > 0.0).then(|| (report.estimate - prep.truth).abs() / prep.truth);
    Ok(ResultRow {
        graph: prep.label.clone(),
        n: g.n(),
        m: g.m(),
        s: spec.s,
        eps: prep.cfg.eps_f64(),
        alpha_used: prep.alpha,
        mode: report.mode.as_str().to_owned(),
        trial,
        estimate: report.estimate,
        truth: prep.truth,
        relative_error,
        r: report.r,
        q: report.q,
        uniform_queries: report.stats.uniform_vertex,
        degree_queries: report.stats.degree,
        neighbor_queries: report.stats.neighbor,
        pair_queries: report.stats.pair,
        seed: spec.seed,
        wall_time_s: spec.timing.then_some(elapsed),
        guesses: report.guess_trace.as_ref().map(Vec::len),
        exceeded_budget: report.exceeded_sublinear_budget,
        truncated: report.truncated,
    })
}

/// Runs every trial of `spec` on `graph` in parallel. Rows come back in
/// trial order whatever the scheduling.
pub fn run_trials_on(
    spec: &ExperimentSpec,
    graph: &Graph,
    label: String,
) -> Result<Vec<ResultRow>> {
    let prep = Prepared::new(spec, graph, label)?;
    (0..spec.trials)
        .into_par_iter()
        .map(|t| run_one(spec, &prep, t))
        .collect()
}

pub fn run_trials(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    let (g, label) = spec.graph.load()?;
    run_trials_on(spec, &g, label)
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub successes: usize,
    pub success_fraction: f64,
    pub mean_relative_error: Option<f64>,
    pub median_relative_error: Option<f64>,
    pub mean_queries: f64,
}

impl Summary {
    pub fn of(rows: &[ResultRow]) -> Summary {
        let trials = rows.len();
        let successes = rows.iter().filter(|r| r.success()).count();
        let mut errs: Vec<f64> = rows.iter().filter_map(|r| r.relative_error).collect();
        errs.sort_by(f64::total_cmp);
        let mean_relative_error =
            (!errs.is_empty()).then(|| errs.iter().sum::<f64>() / errs.len() as f64);
        let median_relative_error = (!errs.is_empty()).then(|| {
            let k = errs.len();
            if k % 2 == 1 {
                errs[k / 2]
            } else {
                (errs[k / 2 - 1] + errs[k / 2]) / 2.0
            }
        });
        let denom = trials.max(1) as f64;
        Summary {
            trials,
            successes,
            success_fraction: successes as f64 / denom,
            mean_relative_error,
            median_relative_error,
            mean_queries: rows.iter().map(|r| r.total_queries() as f64).sum::<f64>() / denom,
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |x: Option<f64>| x.map_or("n/a".to_owned(), |v| format!("{v:.4}"));
        write!(
            f,
            "trials={} success={}/{} ({:.3}) mean_rel_err={} median_rel_err={} mean_queries={:.1}",
            self.trials,
            self.successes,
            self.trials,
            self.success_fraction,
            opt(self.mean_relative_error),
            opt(self.median_relative_error),
            self.mean_queries
        )
    }
}
