//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Runs as a plain binary (`harness = false`). Failures are reported but only
//! change the exit code when `DEGMOM_ACCEPTANCE_STRICT` is set, so the rest of
//! `cargo test` still runs.

use std::process::Command;
use std::time::Instant;

use degmom::distinguish::{run_distinguish, DistinguishSpec};
use degmom::experiment::{
    run_trials_on, Constants, ExperimentSpec, GraphSource, ResultRow, RunMode,
};
use degmom::params::{AlphaPolicy, Frac};
use degmom_core::analysis::{
    bucket_decomposition, structural_checks, verify_degeneracy_sum_square_bound,
};
use degmom_core::enumerate::for_each_outcome;
use degmom_core::estimator::{guess_cost, max_guesses, plan_degeneracy, plan_general};
use degmom_core::generators::{corpus, Family, GeneratorSpec};
use degmom_core::oracle::derive_rng;
use degmom_core::{
    core_number, estimate_once, exact_moment, weight_profile, EstimatorConfig, Fraction, Graph,
    QueryOracle,
};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::Rng;

type Q = Ratio<i128>;

/// Upper limit on the degeneracy variance ratio, the configured `c`.
const C_ARB: f64 = 4.0;
/// Moment gap the lower-bound pairs must reach.
const LB_GAP: f64 = 4.0;
/// One-sided slack allowed beyond `delta` in success fractions.
const SLACK: f64 = 0.07;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn frac(a: u64, b: u64) -> Frac {
    Frac(Fraction::new(a, b))
}

/// `sum_v d_v^s` straight from the degree sequence.
fn moment_u128(g: &Graph, s: u32) -> u128 {
    g.degrees().map(|d| (d as u128).pow(s)).sum()
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn corpus_graphs() -> Vec<(String, Graph)> {
    corpus()
        .into_iter()
        .map(|spec| {
            let g = spec.generate().expect("corpus spec generates").graph;
            (spec.label(), g)
        })
        .collect()
}

fn c1_weight_identity(graphs: &[(String, Graph)]) -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (label, g) in graphs {
        for s in 1..=4 {
            let p = weight_profile(g, s);
            let direct = moment_u128(g, s);
            let total: num_bigint::BigUint = p.vertex_weight.iter().sum();
            if total.to_u128() != Some(direct) || p.total.to_u128() != Some(direct) {
                mismatches.push(format!("{label} s={s}"));
            }
            checked += 1;
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} graphs x s=1..4 = {checked} identities, mismatches: {:?}",
            graphs.len(),
            mismatches
        ),
    )
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn c2_unbiased() -> Outcome {
    // Exact part: every labeled graph on at most 6 vertices, r = q = 1.
    let mut graphs = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        for g in all_graphs(n) {
            graphs += 1;
            for s in 1..=3 {
                let mut expect = Q::from_integer(0);
                for_each_outcome(
                    &g,
                    |o| estimate_once(o, 1, 1, s).unwrap(),
                    |arities, x| {
                        let p = arities.iter().fold(Q::from_integer(1), |acc, &a| {
                            acc / Q::from_integer(a as i128)
                        });
                        // With r = q = 1 the value is d_v * X_1, an integer.
                        expect += p * Q::from_integer(x.round() as i128);
                    },
                );
                let truth = Q::new(moment_u128(&g, s) as i128, n as i128);
                if expect != truth && bad.len() < 5 {
                    bad.push(format!("n={n} s={s} m={}: {expect} vs {truth}", g.m()));
                }
            }
        }
    }

    // Monte Carlo part.
    let er = GeneratorSpec::new(Family::ErdosRenyi { n: 100, p: 0.1 }, 2)
        .generate()
        .unwrap()
        .graph;
    let named = [
        ("P3", Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()),
        (
            "K3",
            Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap(),
        ),
        (
            "K1,4",
            Graph::from_edges(5, (1..5).map(|l| (0, l))).unwrap(),
        ),
        ("ER(100,0.1)", er),
    ];
    let runs = 100_000;
    let mut worst: f64 = 0.0;
    for (name, g) in &named {
        for s in 1..=3 {
            let truth = exact_moment(g, s).mean();
            let mut o = QueryOracle::new(g, 1000 + s as u64);
            let xs: Vec<f64> = (0..runs)
                .map(|_| estimate_once(&mut o, 5, 3, s).unwrap())
                .collect();
            let (mean, se) = mean_se(&xs);
            let z = (mean - truth).abs() / se;
            worst = worst.max(z);
            if z > 4.0 {
                bad.push(format!(
                    "{name} s={s}: mean {mean:.4} truth {truth:.4} z={z:.2}"
                ));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "exact expectation on {graphs} graphs (n<=6, s=1..3); Monte Carlo {runs} runs r=5 q=3, max |z| = {worst:.2} (limit 4); problems: {bad:?}"
        ),
    )
}

fn c3_structural(graphs: &[(String, Graph)]) -> Outcome {
    let mut violations = Vec::new();
    let mut checks = 0;
    let mut cells = 0;
    for (label, g) in graphs {
        let alpha = core_number(g).max(1) as u64;
        for s in 1..=4 {
            let p = weight_profile(g, s);
            for c in structural_checks(g, &p) {
                checks += 1;
                if !c.ok {
                    violations.push(format!("{label} s={s} {}: {} > {}", c.name, c.lhs, c.rhs));
                }
            }
            let dec = bucket_decomposition(g, s, alpha);
            assert!(dec.hypothesis_holds);
            for cell in &dec.cells {
                if cell.claim_ok.is_some() {
                    cells += 1;
                }
            }
            for cell in dec.violations() {
                violations.push(format!(
                    "{label} s={s} cell ({}, {}): {} edges, M = {}",
                    cell.i, cell.j, cell.edges, p.total
                ));
            }
        }
    }
    let shown: Vec<_> = violations.iter().take(5).collect();
    outcome(
        violations.is_empty(),
        format!(
            "{checks} inequality checks and {cells} bucket cells with j>=2; {} violations {shown:?}",
            violations.len()
        ),
    )
}

fn c4_degeneracy_ratio(graphs: &[(String, Graph)]) -> Outcome {
    let mut max = (0.0f64, String::new());
    let mut over = 0;
    for (label, g) in graphs {
        let alpha = core_number(g).max(1) as u64;
        for s in 1..=4 {
            let p = weight_profile(g, s);
            let r = verify_degeneracy_sum_square_bound(g, &p, alpha).ratio;
            if r > max.0 {
                max = (r, format!("{label} s={s}"));
            }
            if r > C_ARB {
                over += 1;
            }
        }
    }
    outcome(
        over == 0,
        format!(
            "max ratio {:.4} on {} (limit c = {C_ARB}); {over} over the limit",
            max.0, max.1
        ),
    )
}

fn criterion5_graphs() -> Vec<(String, Graph)> {
    [
        GeneratorSpec::new(Family::ErdosRenyi { n: 10_000, p: 1e-3 }, 1),
        GeneratorSpec::new(Family::PreferentialAttachment { n: 10_000, m0: 3 }, 1),
        GeneratorSpec::new(
            Family::StarPlusPath {
                leaves: 5_000,
                path: 5_000,
            },
            0,
        ),
    ]
    .into_iter()
    .map(|s| (s.label(), s.generate().unwrap().graph))
    .collect()
}

fn base_spec(mode: RunMode, s: u32, trials: u64, seed: u64) -> ExperimentSpec {
    ExperimentSpec {
        graph: GraphSource::File {
            path: "unused".into(),
        },
        s,
        eps: frac(1, 4),
        delta: frac(1, 3),
        alpha: AlphaPolicy::None,
        mode,
        trials,
        seed,
        m_hat: None,
        out: None,
        timing: false,
        constants: Constants::default(),
    }
}

fn successes(rows: &[ResultRow]) -> usize {
    rows.iter().filter(|r| r.success()).count()
}

/// Successes required out of 300 for `1 - delta - slack` with `delta = 1/3`.
fn required_300() -> usize {
    (300.0 * (1.0 - 1.0 / 3.0 - SLACK)).ceil() as usize
}

fn c5_certified(graphs: &[(String, Graph)]) -> Outcome {
    let need = required_300();
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, g) in graphs {
        for s in 1..=2 {
            let spec = base_spec(RunMode::Certified, s, 300, 50 + s as u64);
            let rows = run_trials_on(&spec, g, label.clone()).unwrap();
            let ok = successes(&rows);
            pass &= ok >= need;
            parts.push(format!(
                "{} s={s} (r={}, q={}): {ok}/300",
                label.split('(').next().unwrap(),
                rows[0].r,
                rows[0].q
            ));
        }
    }
    outcome(pass, format!("need >= {need}/300; {}", parts.join("; ")))
}

fn c6_planner_dominance() -> Outcome {
    let mut rng = derive_rng(6, 0);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..2_000_000usize);
        let s = rng.gen_range(1..=5u32);
        let eps = Fraction::new(1, rng.gen_range(2..40));
        let cfg = EstimatorConfig::new(s, eps, Fraction::new(1, rng.gen_range(2..10))).unwrap();
        let max_m = (s + 1) as f64 * (n as f64).log2();
        let m_hat = 2f64.powf(rng.gen_range(0.0..max_m));
        let alpha = rng.gen_range(1..=n as u64) as f64;
        let g = plan_general(n, m_hat, &cfg);
        let d = plan_degeneracy(n, m_hat, alpha, &cfg);
        if d.r > g.r || d.q > g.q {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("1000 random (n, M, alpha, s, eps) points, {violations} violations"),
    )
}

fn search_runs(
    graphs: &[(String, Graph)],
    constants: &Constants,
    runs: u64,
) -> (bool, Vec<String>) {
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, g) in graphs {
        for s in 1..=2 {
            let mut spec = base_spec(RunMode::Search, s, runs, 70 + s as u64);
            spec.constants = constants.clone();
            let rows = run_trials_on(&spec, g, label.clone()).unwrap();
            let cfg = spec.config(None).unwrap();
            let m = exact_moment(g, s).sum_f64();
            let comparator = guess_cost(g.n(), m, &cfg) as f64;
            let ratios: Vec<f64> = rows
                .iter()
                .map(|r| r.total_queries() as f64 / comparator)
                .collect();
            let within = ratios.iter().filter(|&&x| x <= 8.0).count();
            let ok = successes(&rows);
            let guesses_ok = rows
                .iter()
                .all(|r| r.guesses.unwrap_or(0) <= max_guesses(g.n(), s));
            let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
            let this = ok >= 66 && within >= 90 && guesses_ok;
            pass &= this;
            parts.push(format!(
                "{} s={s}: accurate {ok}/{runs}, budget {within}/{runs} (max ratio {max_ratio:.2}), exact fallback {}",
                label.split('(').next().unwrap(),
                rows.iter().filter(|r| r.exceeded_budget).count()
            ));
        }
    }
    (pass, parts)
}

fn c7_search(graphs: &[(String, Graph)]) -> Outcome {
    let (default_pass, default_parts) = search_runs(graphs, &Constants::default(), 100);
    // All constants divided by the same factors, so the search runs without
    // the exact fallback at this size.
    let reduced = Constants {
        c_r: Some(120.0 / 3000.0),
        c_q: Some(1000.0 / 3000.0),
        c_t: Some(1.0),
        ..Constants::default()
    };
    let (reduced_pass, reduced_parts) = search_runs(graphs, &reduced, 100);
    outcome(
        default_pass && reduced_pass,
        format!(
            "default constants [{}]: {}; reduced constants [{}]: {}",
            if default_pass { "ok" } else { "fail" },
            default_parts.join("; "),
            if reduced_pass { "ok" } else { "fail" },
            reduced_parts.join("; ")
        ),
    )
}

fn c8_threshold() -> Outcome {
    let spec_g = GeneratorSpec::new(Family::PreferentialAttachment { n: 10_000, m0: 3 }, 1);
    let g = spec_g.generate().unwrap().graph;
    let eps = 0.2;
    let mut spec = base_spec(RunMode::S1, 1, 100_000, 8);
    spec.eps = frac(1, 5);
    spec.delta = frac(99, 100);
    spec.alpha = AlphaPolicy::Given(3);
    spec.constants.c_r = Some(12.0);
    spec.constants.c_q = Some(100.0);
    let rows = run_trials_on(&spec, &g, spec_g.label()).unwrap();
    let xs: Vec<f64> = rows.iter().map(|r| r.estimate).collect();
    let (mean, se) = mean_se(&xs);
    let truth = exact_moment(&g, 1).mean();
    // Expected value of the thresholded estimator, from the graph directly.
    let theta = 2.0 * 3.0 / eps;
    let kept: usize = (0..g.n())
        .filter(|&v| g.degree(v) as f64 <= theta)
        .map(|v| g.neighbors(v).iter().filter(|&&u| g.precedes(v, u)).count())
        .sum();
    let expected = 2.0 * kept as f64 / g.n() as f64;
    let lo = (1.0 - eps) * truth - 4.0 * se;
    let hi = truth + 4.0 * se;
    let core = core_number(&g);
    outcome(
        core <= 3 && lo <= mean && mean <= hi,
        format!(
            "core number {core}; r={} q={}; mean {mean:.5} in [{lo:.5}, {hi:.5}] (truth {truth:.5}, se {se:.5}, thresholded expectation {expected:.5})",
            rows[0].r, rows[0].q
        ),
    )
}

fn c9_edge_samples(graphs: &[(String, Graph)]) -> Outcome {
    let need = required_300();
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, g) in graphs {
        for s in 1..=2 {
            let spec = base_spec(RunMode::Edge, s, 300, 90 + s as u64);
            let rows = run_trials_on(&spec, g, label.clone()).unwrap();
            let ok = successes(&rows);
            pass &= ok >= need;
            parts.push(format!(
                "{} s={s} (q={}{}): {ok}/300",
                label.split('(').next().unwrap(),
                rows[0].q,
                if rows[0].exceeded_budget {
                    ", capped"
                } else {
                    ""
                }
            ));
        }
    }
    outcome(pass, format!("need >= {need}/300; {}", parts.join("; ")))
}

fn c10_lower_bounds() -> Outcome {
    let families = [
        (
            Family::LbFirstTerm {
                n: 1000,
                alpha_t: 10,
                m_t: 81_000.0,
                s: 2,
                which: 1,
            },
            vec![2u64, 5, 10],
        ),
        (
            Family::SSetFamily {
                n: 2000,
                b: 4,
                d: 4,
                d_prime: 200,
                planted_clique: None,
                which: 1,
            },
            vec![50, 200, 500],
        ),
        (
            Family::ValidLb {
                n: 10_000,
                c: 1.0,
                which: 1,
            },
            vec![5, 20, 50],
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (family, budgets)) in families.into_iter().enumerate() {
        let spec = DistinguishSpec {
            family,
            s: 2,
            budgets,
            trials: 10_000,
            seed: 100 + i as u64,
            pool: 4,
        };
        let rep = run_distinguish(&spec).unwrap();
        let gap_ok = rep.moment_ratio >= LB_GAP;
        let mut zs = Vec::new();
        let mut miss_ok = true;
        for row in rep.rows.iter().filter(|r| r.which == 2) {
            let z = (row.all_miss_rate - row.predicted_all_miss) / row.sigma;
            zs.push(format!("B={} z={z:+.2}", row.budget));
            miss_ok &= row.all_miss_within(3.0);
        }
        let best = rep
            .rows
            .iter()
            .map(|r| r.overall_success_rate)
            .fold(0.0, f64::max);
        pass &= gap_ok && miss_ok;
        parts.push(format!(
            "{}: ratio {:.2}, h={:.4}, all-miss {}, best success {best:.3}",
            rep.family,
            rep.moment_ratio,
            rep.rows[1].hit_probability,
            zs.join(" ")
        ));
    }
    outcome(
        pass,
        format!(
            "gap limit {LB_GAP}, 3 sigma over 10^4 trials; {}",
            parts.join("; ")
        ),
    )
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_degmom"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).display().to_string();
    let config = r#"{"graph": {"family": "preferential_attachment", "n": 2000, "m0": 3, "seed": 4},
            "s": 2, "eps": "1/4", "delta": "1/3", "alpha": "auto", "mode": "planned",
            "trials": 40, "seed": 11, "constants": {"c_r": 1, "c_q": 1}}"#;
    std::fs::write(p("exp.json"), config).unwrap();
    let mut compared = 0;
    let mut problems = Vec::new();
    // The graph path appears in the CSV, so both rounds read the same file.
    let graph = p("g.txt");
    if let Err(e) = run_cli(&[
        "gen",
        "--family",
        "erdos_renyi",
        "--params",
        "n=800,p=0.01",
        "--seed",
        "7",
        "--out",
        &graph,
    ]) {
        problems.push(e);
    }
    for tag in ["a", "b"] {
        let steps: Vec<Vec<String>> = vec![
            vec![
                "gen",
                "--family",
                "erdos_renyi",
                "--params",
                "n=800,p=0.01",
                "--seed",
                "7",
                "--out",
                &p(&format!("g_{tag}.txt")),
            ],
            vec![
                "estimate",
                "--graph",
                &graph,
                "--s",
                "2",
                "--mode",
                "search",
                "--trials",
                "12",
                "--seed",
                "9",
                "--c-r",
                "0.04",
                "--c-q",
                "0.333",
                "--c-t",
                "1",
                "--out",
                &p(&format!("search_{tag}.csv")),
            ],
            vec![
                "estimate",
                "--graph",
                &graph,
                "--s",
                "1",
                "--mode",
                "certified",
                "--trials",
                "12",
                "--seed",
                "9",
                "--out",
                &p(&format!("cert_{tag}.csv")),
            ],
            vec![
                "experiment",
                "--config",
                &p("exp.json"),
                "--out",
                &p(&format!("exp_{tag}.csv")),
            ],
            vec![
                "distinguish",
                "--family",
                "valid_lb",
                "--params",
                "n=2000,c=1",
                "--s",
                "2",
                "--budgets",
                "0,4,16",
                "--trials",
                "500",
                "--seed",
                "3",
                "--pool",
                "2",
                "--out",
                &p(&format!("dist_{tag}.csv")),
            ],
        ]
        .into_iter()
        .map(|v| v.into_iter().map(String::from).collect())
        .collect();
        for step in &steps {
            let args: Vec<&str> = step.iter().map(String::as_str).collect();
            if let Err(e) = run_cli(&args) {
                problems.push(e);
            }
        }
    }
    for stem in ["g", "search", "cert", "exp", "dist"] {
        let ext = if stem == "g" { "txt" } else { "csv" };
        let a = std::fs::read(p(&format!("{stem}_a.{ext}")));
        let b = std::fs::read(p(&format!("{stem}_b.{ext}")));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b && !a.is_empty() => compared += 1,
            _ => problems.push(format!("{stem} outputs differ or are missing")),
        }
    }
    outcome(
        problems.is_empty(),
        format!("{compared}/5 CLI outputs byte-identical across two invocations; problems: {problems:?}"),
    )
}

fn main() {
    let strict = std::env::var_os("DEGMOM_ACCEPTANCE_STRICT").is_some();
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let wanted = |k: usize| filter.is_empty() || filter.iter().any(|f| f == &k.to_string());

    let started = Instant::now();
    let corpus = if (1..=4).any(wanted) {
        corpus_graphs()
    } else {
        Vec::new()
    };
    let big = if [5, 7, 9].into_iter().any(wanted) {
        criterion5_graphs()
    } else {
        Vec::new()
    };

    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(usize, &str, Check)> = vec![
        (
            1,
            "weight identity",
            Box::new(|| c1_weight_identity(&corpus)),
        ),
        (2, "unbiasedness", Box::new(c2_unbiased)),
        (
            3,
            "structural inequalities",
            Box::new(|| c3_structural(&corpus)),
        ),
        (
            4,
            "degeneracy variance bound",
            Box::new(|| c4_degeneracy_ratio(&corpus)),
        ),
        (
            5,
            "estimation guarantee with certified sizes",
            Box::new(|| c5_certified(&big)),
        ),
        (6, "planner dominance", Box::new(c6_planner_dominance)),
        (7, "geometric search", Box::new(|| c7_search(&big))),
        (8, "first-moment threshold variant", Box::new(c8_threshold)),
        (9, "edge-sample variant", Box::new(|| c9_edge_samples(&big))),
        (10, "lower-bound families", Box::new(c10_lower_bounds)),
        (11, "CLI determinism", Box::new(c11_determinism)),
    ];

    let mut failed = Vec::new();
    for (k, name, check) in &criteria {
        if !wanted(*k) {
            continue;
        }
        let t = Instant::now();
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {k:>2} {name} ({:.1}s): {}",
            t.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.pass {
            failed.push(*k);
        }
    }
    println!(
        "acceptance: {} failed {:?} in {:.1}s",
        failed.len(),
        failed,
        started.elapsed().as_secs_f64()
    );
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
