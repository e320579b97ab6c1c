//! Estimation without a guess of `M`: halve a guess from the largest possible
//! value until a median of repeated estimates confirms it.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::num::{ceil_count, log2, median};
use crate::oracle::{Oracle, QueryStats};
use crate::Fraction;

use super::{
    diff, exact_scan, plan_degeneracy, plan_general, run, EstimateError, EstimateReport,
    EstimatorConfig, GuessRow, Mode, Plan,
};

/// Median repetitions per guess: `max(1, ceil(c_t * log2(s * log2 n)))`.
pub fn repetitions(n: usize, s: u32, c_t: f64) -> u32 {
    let inner = s as f64 * log2(n as f64);
    let t = if inner > 1.0 {
        ceil_count(c_t * log2(inner))
    } else {
        0
    };
    t.clamp(1, u32::MAX as u64) as u32
}

/// The per-run plan used at guess `guess`: the configured planner at
/// `delta = 1/3`, with both sample sizes tripled.
pub fn guess_plan(n: usize, guess: f64, cfg: &EstimatorConfig) -> Plan {
    let inner = EstimatorConfig {
        delta: Fraction::new(1, 3),
        ..cfg.clone()
    };
    let plan = match cfg.alpha {
        Some(alpha) => plan_degeneracy(n, guess, alpha as f64, &inner),
        None => plan_general(n, guess, &inner),
    };
    plan.scaled(3)
}

/// Queries spent by the search at a single guess: `t` runs of the guess plan,
/// or `n` degree queries when the plan is over the workload cap.
pub fn guess_cost(n: usize, guess: f64, cfg: &EstimatorConfig) -> u64 {
    let plan = guess_plan(n, guess, cfg);
    if plan.exceeds(cfg.cap_for(n)) {
        n as u64
    } else {
        let t = repetitions(n, cfg.s, cfg.c_t) as u64;
        QueryStats::for_run(plan.r, plan.q)
            .total()
            .saturating_mul(t)
    }
}

/// Starts at the guess `n^(s+1)` and halves it until `n` times the median of
/// `t` runs reaches the guess, returning that median. The guess never drops
/// below 1; if it would, the last median is returned. A guess whose plan is
/// over the workload cap ends the search with an exact scan.
pub fn geometric_search<O: Oracle + ?Sized>(
    oracle: &mut O,
    cfg: &EstimatorConfig,
) -> Result<EstimateReport, EstimateError> {
    cfg.validate()?;
    let n = oracle.vertex_count();
    if n < 2 {
        return Err(EstimateError::TooFewVertices { n });
    }
    let mode = if cfg.alpha.is_some() {
        Mode::SearchDegeneracy
    } else {
        Mode::SearchGeneral
    };
    let t = repetitions(n, cfg.s, cfg.c_t);
    let cap = cfg.cap_for(n);
    let before = oracle.stats();
    let mut trace = Vec::new();
    let mut guess = (n as f64).powi(cfg.s as i32 + 1);
    let mut report = EstimateReport::new(mode, 0.0, 0, 0, QueryStats::default());
    let mut values = Vec::with_capacity(t as usize);

    loop {
        let plan = guess_plan(n, guess, cfg);
        report.r = plan.r;
        report.q = plan.q;
        if plan.exceeds(cap) {
            report.estimate = exact_scan(oracle, cfg.s)?;
            report.exceeded_sublinear_budget = true;
            trace.push(GuessRow {
                guess,
                r: plan.r,
                q: plan.q,
                repetitions: 0,
                median: report.estimate,
                stop: true,
                exact: true,
            });
            break;
        }

        values.clear();
        for _ in 0..t {
            let out = run(oracle, plan.r, plan.q, cfg.s, None)?;
            if out.truncated {
                report.truncated = true;
                // A run that completed no edge samples says nothing.
                if out.q_done > 0 {
                    values.push(out.value);
                }
                break;
            }
            values.push(out.value);
        }
        let z = if values.is_empty() {
            0.0
        } else {
            median(&mut values)
        };
        let stop = n as f64 * z >= guess || report.truncated;
        report.estimate = z;
        trace.push(GuessRow {
            guess,
            r: plan.r,
            q: plan.q,
            repetitions: t,
            median: z,
            stop,
            exact: false,
        });
        if stop || guess / 2.0 < 1.0 {
            break;
        }
        guess /= 2.0;
    }

    report.guess_trace = Some(trace);
    report.stats = diff(oracle.stats(), before);
    Ok(report)
}

/// Upper bound on the number of guesses: `floor((s+1) log2 n) + 1`.
pub fn max_guesses(n: usize, s: u32) -> usize {
    ((s as f64 + 1.0) * log2(n as f64)).floor() as usize + 1
}
