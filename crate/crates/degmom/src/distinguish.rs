//! The distinguishing game behind the lower bounds: a budgeted estimator must
//! tell a draw from the first family from a draw from the second.

use anyhow::{bail, Context, Result};
use degmom_core::estimator::estimate_once_partial;
use degmom_core::generators::{Family, GeneratorSpec};
use degmom_core::oracle::derive_rng;
use degmom_core::{exact_moment, Graph, Oracle, QueryError, QueryOracle, QueryStats, Vertex};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::experiment::TRIAL_STREAM;

/// Wraps an oracle and records whether a query reaches the planted set.
pub struct HitTracker<'s, O> {
    inner: O,
    special: &'s [bool],
    /// A uniform vertex sample landed in the planted set.
    pub vertex_hit: bool,
    /// Some answered query named or returned a planted vertex.
    pub touched: bool,
}

impl<'s, O: Oracle> HitTracker<'s, O> {
    /// `special[v]` marks the planted vertices.
    pub fn new(inner: O, special: &'s [bool]) -> Self {
        HitTracker {
            inner,
            special,
            vertex_hit: false,
            touched: false,
        }
    }

    fn note(&mut self, v: Vertex) {
        if self.special[v] {
            self.touched = true;
        }
    }
}

impl<O: Oracle> Oracle for HitTracker<'_, O> {
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn random_vertex(&mut self) -> Result<Vertex, QueryError> {
        let v = self.inner.random_vertex()?;
        if self.special[v] {
            self.vertex_hit = true;
        }
        self.note(v);
        Ok(v)
    }

    fn degree(&mut self, v: Vertex) -> Result<usize, QueryError> {
        let d = self.inner.degree(v)?;
        self.note(v);
        Ok(d)
    }

    fn neighbor(&mut self, v: Vertex, i: usize) -> Result<Vertex, QueryError> {
        let u = self.inner.neighbor(v, i)?;
        self.note(v);
        self.note(u);
        Ok(u)
    }

    fn random_neighbor(&mut self, v: Vertex) -> Result<Vertex, QueryError> {
        let u = self.inner.random_neighbor(v)?;
        self.note(v);
        self.note(u);
        Ok(u)
    }

    fn pair(&mut self, u: Vertex, v: Vertex) -> Result<bool, QueryError> {
        let a = self.inner.pair(u, v)?;
        self.note(u);
        self.note(v);
        Ok(a)
    }

    fn coin(&mut self, bound: u64) -> u64 {
        self.inner.coin(bound)
    }

    fn stats(&self) -> QueryStats {
        self.inner.stats()
    }
}

/// `family` with its `which` parameter replaced, for the planted-set families.
pub fn with_which(family: &Family, w: u8) -> Option<Family> {
    let mut f = family.clone();
    match &mut f {
        Family::LbFirstTerm { which, .. }
        | Family::SSetFamily { which, .. }
        | Family::ValidLb { which, .. } => *which = w,
        _ => return None,
    }
    Some(f)
}

#[derive(Debug, Clone)]
pub struct DistinguishSpec {
    /// A planted-set family; its `which` is ignored.
    pub family: Family,
    /// Moment order the estimator targets.
    pub s: u32,
    pub budgets: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    /// Independently labeled graphs generated per family; trials pick one.
    pub pool: usize,
}

/// One family's side of the game at one budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinguishRow {
    pub budget: u64,
    pub which: u8,
    pub trials: u64,
    /// Per-sample hit probability `|special| / n`.
    pub hit_probability: f64,
    pub all_miss: u64,
    pub all_miss_rate: f64,
    /// `(1 - h)^B`.
    pub predicted_all_miss: f64,
    /// Binomial standard error of `all_miss_rate` under the prediction.
    pub sigma: f64,
    pub correct: u64,
    pub success_rate: f64,
    /// Both families' success over all trials at this budget.
    pub overall_success_rate: f64,
}

impl DistinguishRow {
    /// Observed all-miss rate within `k` standard errors of the prediction.
    /// A zero-variance prediction must be met exactly.
    pub fn all_miss_within(&self, k: f64) -> bool {
        (self.all_miss_rate - self.predicted_all_miss).abs() <= k * self.sigma
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinguishReport {
    pub family: String,
    pub moment_first: f64,
    pub moment_second: f64,
    pub moment_ratio: f64,
    /// Estimates at or above this value are classified as the second family.
    pub threshold: f64,
    pub rows: Vec<DistinguishRow>,
}

struct Member {
    graph: Graph,
    special: Vec<bool>,
}

struct Side {
    members: Vec<Member>,
    h: f64,
    moment: f64,
}

fn build_side(spec: &DistinguishSpec, w: u8) -> Result<Side> {
    let family = with_which(&spec.family, w).context("distinguish needs a planted-set family")?;
    let mut members = Vec::with_capacity(spec.pool);
    let mut h = 0.0;
    let mut moment = 0.0;
    for k in 0..spec.pool.max(1) {
        let seed = spec.seed ^ ((w as u64) << 56) ^ k as u64;
        let out = GeneratorSpec::new(family.clone(), seed)
            .generate()
            .with_context(|| format!("generating {}", family.label()))?;
        let n = out.graph.n();
        let mut special = vec![false; n];
        for &v in out.special.as_deref().unwrap_or(&[]) {
            special[v] = true;
        }
        h = special.iter().filter(|&&b| b).count() as f64 / n as f64;
        // Exact moments only depend on the construction, not the labeling.
        moment = exact_moment(&out.graph, spec.s).sum_f64();
        members.push(Member {
            graph: out.graph,
            special,
        });
    }
    Ok(Side { members, h, moment })
}

struct Outcome {
    which: u8,
    all_miss: bool,
    correct: bool,
}

fn play(
    spec: &DistinguishSpec,
    sides: &[Side; 2],
    threshold: f64,
    budget: u64,
    stream: u64,
) -> Result<Outcome> {
    let mut rng = derive_rng(spec.seed, stream);
    let which = if rng.gen::<bool>() { 2u8 } else { 1 };
    let side = &sides[which as usize - 1];
    let member = &side.members[rng.gen_range(0..side.members.len())];
    if budget == 0 {
        let guess = if rng.gen::<bool>() { 2 } else { 1 };
        return Ok(Outcome {
            which,
            all_miss: true,
            correct: guess == which,
        });
    }
    let oracle = QueryOracle::with_rng(&member.graph, derive_rng(spec.seed, stream ^ (1 << 63)))
        .with_budget(4 * budget);
    let mut tracked = HitTracker::new(oracle, &member.special);
    let out = estimate_once_partial(&mut tracked, budget, budget, spec.s)?;
    let guess = if out.value >= threshold { 2 } else { 1 };
    Ok(Outcome {
        which,
        all_miss: !tracked.vertex_hit,
        correct: guess == which,
    })
}

/// Plays `trials` rounds at every budget `B`. A round runs the estimator with
/// `r = q = B` under a query budget of `4B`; `B = 0` is a fair coin.
pub fn run_distinguish(spec: &DistinguishSpec) -> Result<DistinguishReport> {
    if spec.trials == 0 {
        bail!("trials must be at least 1");
    }
    let sides = [build_side(spec, 1)?, build_side(spec, 2)?];
    let n = sides[0].members[0].graph.n() as f64;
    let threshold = (sides[0].moment * sides[1].moment).sqrt() / n;
    let mut rows = Vec::new();
    for (bi, &budget) in spec.budgets.iter().enumerate() {
        let base = TRIAL_STREAM + bi as u64 * spec.trials;
        let outcomes: Vec<Outcome> = (0..spec.trials)
            .into_par_iter()
            .map(|t| play(spec, &sides, threshold, budget, base + t))
            .collect::<Result<_>>()?;
        let overall = outcomes.iter().filter(|o| o.correct).count() as f64 / outcomes.len() as f64;
        for w in [1u8, 2] {
            let mine: Vec<&Outcome> = outcomes.iter().filter(|o| o.which == w).collect();
            let trials = mine.len() as u64;
            let all_miss = mine.iter().filter(|o| o.all_miss).count() as u64;
            let correct = mine.iter().filter(|o| o.correct).count() as u64;
            let h = sides[w as usize - 1].h;
            let p = (1.0 - h).powi(budget as i32);
            let denom = trials.max(1) as f64;
            rows.push(DistinguishRow {
                budget,
                which: w,
                trials,
                hit_probability: h,
                all_miss,
                all_miss_rate: all_miss as f64 / denom,
                predicted_all_miss: p,
                sigma: (p * (1.0 - p) / denom).sqrt(),
                correct,
                success_rate: correct as f64 / denom,
                overall_success_rate: overall,
            });
        }
    }
    Ok(DistinguishReport {
        family: spec.family.name().to_owned(),
        moment_first: sides[0].moment,
        moment_second: sides[1].moment,
        moment_ratio: sides[1].moment / sides[0].moment,
        threshold,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(budgets: Vec<u64>) -> DistinguishSpec {
        DistinguishSpec {
            family: Family::LbFirstTerm {
                n: 200,
                alpha_t: 4,
                m_t: 4.0 * 400.0,
                s: 2,
                which: 1,
            },
            s: 2,
            budgets,
            trials: 400,
            seed: 3,
            pool: 2,
        }
    }

    #[test]
    fn tracker_sees_planted_queries() {
        let g = degmom_core::generators::star(3).unwrap();
        let special = [true, false, false, false];
        let mut t = HitTracker::new(QueryOracle::new(&g, 1), &special);
        t.degree(2).unwrap();
        assert!(!t.touched);
        t.random_neighbor(2).unwrap();
        assert!(t.touched && !t.vertex_hit);
    }

    #[test]
    fn zero_budget_is_a_coin_flip() {
        let rep = run_distinguish(&spec(vec![0])).unwrap();
        assert!(rep.moment_ratio > 1.0);
        let row = &rep.rows[0];
        assert_eq!(row.predicted_all_miss, 1.0);
        assert!(rep.rows.iter().all(|r| r.all_miss == r.trials));
        assert!((row.overall_success_rate - 0.5).abs() < 0.1);
    }

    #[test]
    fn large_budgets_win() {
        // h = 20/200 for the second family; 100 samples miss with prob 3e-5.
        let rep = run_distinguish(&spec(vec![100])).unwrap();
        assert!(rep.rows[0].overall_success_rate > 0.9, "{:?}", rep.rows[0]);
        assert!(rep.rows.iter().all(|r| r.all_miss_within(4.0)));
    }

    #[test]
    fn deterministic() {
        let a = run_distinguish(&spec(vec![5])).unwrap();
        let b = run_distinguish(&spec(vec![5])).unwrap();
        assert_eq!(a.rows, b.rows);
    }
}
