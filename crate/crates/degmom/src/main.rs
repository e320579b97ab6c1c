use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use degmom::bounds::bounds_report;
use degmom::distinguish::{run_distinguish, DistinguishSpec};
use degmom::experiment::{
    run_trials, run_trials_on, write_csv, Constants, ExperimentSpec, GraphSource, RunMode, Summary,
};
use degmom::io::{load_edge_list, save_edge_list, write_edge_list};
use degmom::params::{family_from_params, AlphaPolicy, Frac};
use degmom_core::generators::GeneratorSpec;
use degmom_core::{core_number, exact_moment, verify_alpha_moment_bound};

#[derive(Parser)]
#[command(
    name = "degmom",
    version,
    about = "Degree-moment estimation from vertex and neighbor queries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the estimator on an edge-list file and write one CSV row per trial.
    Estimate(EstimateArgs),
    /// Print the exact moment of a graph.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Print the core number of a graph.
    Degeneracy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long)]
        family: String,
        /// Family parameters as `k=v,k=v`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomly relabel the vertices.
        #[arg(long)]
        relabel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every structural inequality; exit code 2 if any fails.
    VerifyBounds {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// `auto` (core number) or a positive integer.
        #[arg(long, default_value = "auto")]
        alpha: String,
        /// Allowed ratio in the degeneracy variance bound.
        #[arg(long, default_value_t = 4.0)]
        c_arb: f64,
    },
    /// Run an experiment described by a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the distinguishing game on a planted-set family.
    Distinguish {
        /// `lb_first_term`, `s_set_family` or `valid_lb`.
        #[arg(long)]
        family: String,
        /// Family parameters as `k=v,k=v`; `which` may be omitted.
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Comma-separated query budgets.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,4,8,16,32,64")]
        budgets: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        pool: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Accuracy, as `a/b` or a decimal.
    #[arg(long, default_value = "1/4")]
    eps: String,
    /// Failure probability, as `a/b` or a decimal.
    #[arg(long, default_value = "1/3")]
    delta: String,
    /// `auto` (core number), `none`, or a positive integer.
    #[arg(long, default_value = "none")]
    alpha: String,
    #[arg(long, value_enum, default_value_t = RunMode::Search)]
    mode: RunMode,
    /// Guess of `M` for the planned modes; defaults to the exact value.
    #[arg(long)]
    m_hat: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the wall-time column (makes output machine dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    c_r: Option<f64>,
    #[arg(long)]
    c_q: Option<f64>,
    #[arg(long)]
    c_t: Option<f64>,
    #[arg(long)]
    c_arb: Option<f64>,
    #[arg(long)]
    workload_cap: Option<f64>,
    #[arg(long)]
    c_vertex: Option<u64>,
    #[arg(long)]
    c_edge: Option<u64>,
}

fn parse_frac(text: &str) -> Result<Frac> {
    Ok(Frac(degmom::params::parse_fraction(text)?))
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn report_rows(rows: &[degmom::experiment::ResultRow], out: Option<&Path>) -> Result<()> {
    write_csv(rows, open_out(out)?)?;
    eprintln!("{}", Summary::of(rows));
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Estimate(a) => {
            let spec = ExperimentSpec {
                graph: GraphSource::File {
                    path: a.graph.clone(),
                },
                s: a.s,
                eps: parse_frac(&a.eps)?,
                delta: parse_frac(&a.delta)?,
                alpha: AlphaPolicy::parse(&a.alpha)?,
                mode: a.mode,
                trials: a.trials,
                seed: a.seed,
                m_hat: a.m_hat,
                out: a.out.clone(),
                timing: a.timing,
                constants: Constants {
                    c_r: a.c_r,
                    c_q: a.c_q,
                    c_t: a.c_t,
                    c_arb: a.c_arb,
                    workload_cap: a.workload_cap,
                    c_vertex: a.c_vertex,
                    c_edge: a.c_edge,
                },
            };
            let (g, report) = load_edge_list(&a.graph)?;
            if report.duplicates_dropped > 0 {
                eprintln!(
                    "note: dropped {} duplicate edges",
                    report.duplicates_dropped
                );
            }
            let rows = run_trials_on(&spec, &g, a.graph.display().to_string())?;
            report_rows(&rows, a.out.as_deref())?;
        }
        Command::Exact { graph, s } => {
            let (g, _) = load_edge_list(&graph)?;
            let e = exact_moment(&g, s);
            let json = serde_json::json!({
                "n": g.n(),
                "m": g.m(),
                "s": s,
                "moment": e.sum.to_string(),
                "normalized": e.mean(),
            });
            println!("{json}");
        }
        Command::Degeneracy { graph, s } => {
            let (g, _) = load_edge_list(&graph)?;
            let json = serde_json::json!({
                "n": g.n(),
                "m": g.m(),
                "core_number": core_number(&g),
                "core_number_le_moment_root": verify_alpha_moment_bound(&g, s),
            });
            println!("{json}");
        }
        Command::Gen {
            family,
            params,
            seed,
            relabel,
            out,
        } => {
            let mut spec = GeneratorSpec::new(family_from_params(&family, &params)?, seed);
            spec.relabel = relabel;
            let generated = spec
                .generate()
                .with_context(|| format!("generating {}", spec.label()))?;
            match out {
                Some(p) => save_edge_list(&generated.graph, &p)?,
                None => write_edge_list(&generated.graph, io::stdout().lock())?,
            }
            eprintln!(
                "{}: n={} m={}",
                spec.label(),
                generated.graph.n(),
                generated.graph.m()
            );
        }
        Command::VerifyBounds {
            graph,
            s,
            alpha,
            c_arb,
        } => {
            let (g, _) = load_edge_list(&graph)?;
            let alpha = match AlphaPolicy::parse(&alpha)? {
                AlphaPolicy::Given(k) => Some(k),
                _ => None,
            };
            let rep = bounds_report(&g, s, alpha, c_arb);
            println!("{}", serde_json::to_string_pretty(&rep)?);
            if !rep.all_ok {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Experiment { config, out } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut spec: ExperimentSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", config.display()))?;
            if out.is_some() {
                spec.out = out;
            }
            let rows = run_trials(&spec)?;
            report_rows(&rows, spec.out.as_deref())?;
        }
        Command::Distinguish {
            family,
            mut params,
            s,
            budgets,
            trials,
            seed,
            pool,
            out,
        } => {
            if !params.split(',').any(|p| p.trim().starts_with("which=")) {
                params.push_str(",which=1");
            }
            let spec = DistinguishSpec {
                family: family_from_params(&family, &params)?,
                s,
                budgets,
                trials,
                seed,
                pool,
            };
            let rep = run_distinguish(&spec)?;
            let mut w = csv::Writer::from_writer(open_out(out.as_deref())?);
            for row in &rep.rows {
                w.serialize(row)?;
            }
            w.flush()?;
            eprintln!(
                "{}: moments {} vs {} (ratio {:.3}), threshold {:.4}",
                rep.family, rep.moment_first, rep.moment_second, rep.moment_ratio, rep.threshold
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
