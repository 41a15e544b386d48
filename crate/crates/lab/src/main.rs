//! Batch CLI for the graphon clique laboratory.
//!
//! Exit codes: 0 success, 1 validation error, 2 budget exhaustion in a
//! non-Monte-Carlo command, 3 verify-suite failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use graphon_core::densities::{
    bounded_clique_limit, clique_predictor, expected_biclique_count, expected_clique_count,
    second_moment_report, CliqueLimit,
};
use graphon_core::optimization::{kappa, xi, zoom};
use graphon_core::sampler::{sample_bipartite, sample_graph, sample_weighted};
use graphon_core::{Error, StepBigraphon64, StepGraphon64};
use graphon_lab::{
    records_to_csv, report_to_json, run_biclique_scaling, run_clique_scaling, run_concentration,
    run_oscillation, verify::run_verify, ExperimentSpec,
};

#[derive(Parser)]
#[command(
    name = "graphon-lab",
    about = "Clique-number laboratory for step graphons: exact rate functionals, \
             samplers, solvers, and Monte Carlo experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Clique-rate constant kappa(W) with minimizer and optimal mass vector
    Kappa {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second-moment functional xi(W)
    Xi {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subset with 1/xi(restriction) within eps of kappa(W)
    Zoom {
        #[arg(long)]
        model: PathBuf,
        /// Sandwich tolerance: kappa - eps <= 1/xi(W|_t) <= kappa
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample G(n,W), H(n,W) or B(n,U) and print edge lists
    Sample {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated sample sizes
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the weighted complete graph H(n,W) instead of G(n,W)
        #[arg(long, default_value_t = false)]
        weighted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo omega(G(n,W)) against the first-moment predictor
    CliqueMc(McArgs),
    /// Monte Carlo omega_2(B(n,U)) against the biclique predictor
    BicliqueMc(McArgs),
    /// Empirical omega distribution at a single n
    Concentration(McArgs),
    /// Distance-threshold graphon omega at small and large scales
    Oscillation {
        /// Comma-separated decreasing band breakpoints, e.g. 1.0,0.1
        #[arg(long)]
        breakpoints: String,
        /// Comma-separated small-scale sample sizes
        #[arg(long)]
        small: String,
        /// Comma-separated large-scale sample sizes
        #[arg(long)]
        large: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = graphon_core::solvers::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expected (bi)clique counts and predictors at a given n
    Densities {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: usize,
        /// Largest clique size / biclique half-size to tabulate
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-module property suite; one verdict line per property
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct McArgs {
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated ascending sample sizes
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Branch-node budget per solver call
    #[arg(long, default_value_t = graphon_core::solvers::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Worker threads; 0 uses all cores
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl McArgs {
    fn spec(&self) -> Result<ExperimentSpec, Error> {
        Ok(ExperimentSpec {
            n_grid: parse_usize_list(&self.n)?,
            trials: self.trials,
            master_seed: self.seed,
            budget: self.budget,
            jobs: self.jobs,
        })
    }
}

enum Model {
    Graphon(StepGraphon64),
    Bigraphon(StepBigraphon64),
}

fn load_model(path: &PathBuf) -> Result<Model, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Range(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("betaL").is_some() {
        Ok(Model::Bigraphon(StepBigraphon64::from_json(&text)?))
    } else {
        Ok(Model::Graphon(StepGraphon64::from_json(&text)?))
    }
}

fn require_graphon(m: Model) -> Result<StepGraphon64, Error> {
    match m {
        Model::Graphon(w) => Ok(w),
        Model::Bigraphon(_) => Err(Error::Range(
            "this command needs a graphon model {\"beta\",\"P\"}, got a bigraphon".into(),
        )),
    }
}

fn require_bigraphon(m: Model) -> Result<StepBigraphon64, Error> {
    match m {
        Model::Bigraphon(u) => Ok(u),
        Model::Graphon(_) => Err(Error::Range(
            "this command needs a bigraphon model {\"betaL\",\"betaR\",\"D\"}, got a graphon"
                .into(),
        )),
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::Range(format!("bad integer list entry {p:?}")))
        })
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Range(format!("bad real list entry {p:?}")))
        })
        .collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Range(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Kappa { model, out } => {
            let w = require_graphon(load_model(&model)?)?;
            let r = kappa(&w);
            let doc = json!({
                "kappa": if r.value.is_finite() { json!(r.value) } else { json!("inf") },
                "minimizer": r.minimizer,
                "optimal_mass": r.optimal_mass,
                "approximate": r.approximate,
            });
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
        }
        Cmd::Xi { model, out } => {
            let w = require_graphon(load_model(&model)?)?;
            let x = xi(&w)?;
            let doc = json!({
                "xi": if x.is_finite() { json!(x) } else { json!("inf") },
            });
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
        }
        Cmd::Zoom { model, eps, out } => {
            let w = require_graphon(load_model(&model)?)?;
            let t = zoom(&w, eps)?;
            let inv = 1.0 / xi(&w.restrict(&t)?)?;
            let doc = json!({
                "t": t.fractions(),
                "inverse_xi_of_restriction": inv,
                "kappa": kappa(&w).value,
                "eps": eps,
            });
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
        }
        Cmd::Sample {
            model,
            n,
            seed,
            weighted,
            out,
        } => {
            let ns = parse_usize_list(&n)?;
            let mut text = String::new();
            match load_model(&model)? {
                Model::Graphon(w) => {
                    for &n in &ns {
                        if weighted {
                            text.push_str(&sample_weighted(&w, n, seed).to_edge_list());
                        } else {
                            text.push_str(&sample_graph(&w, n, seed).to_edge_list());
                        }
                    }
                }
                Model::Bigraphon(u) => {
                    if weighted {
                        return Err(Error::Range(
                            "weighted export is only defined for graphon models".into(),
                        ));
                    }
                    for &n in &ns {
                        let b = sample_bipartite(&u, n, seed);
                        text.push_str(&format!(
                            "nL={} nR={} seed={seed}\n",
                            b.n_left, b.n_right
                        ));
                        for i in 0..b.n_left {
                            for j in 0..b.n_right {
                                if b.has_edge(i, j) {
                                    text.push_str(&format!("{i} {}\n", b.n_left + j));
                                }
                            }
                        }
                    }
                }
            }
            emit(&out, &text)
        }
        Cmd::CliqueMc(args) => {
            let w = require_graphon(load_model(&args.model)?)?;
            let report = run_clique_scaling(&w, &args.spec()?)?;
            let text = match args.format {
                Format::Csv => records_to_csv(&report.records),
                Format::Json => format!("{}\n", report_to_json(&report)),
            };
            emit(&args.out, &text)
        }
        Cmd::BicliqueMc(args) => {
            let u = require_bigraphon(load_model(&args.model)?)?;
            let report = run_biclique_scaling(&u, &args.spec()?)?;
            let text = match args.format {
                Format::Csv => records_to_csv(&report.records),
                Format::Json => format!("{}\n", report_to_json(&report)),
            };
            emit(&args.out, &text)
        }
        Cmd::Concentration(args) => {
            let w = require_graphon(load_model(&args.model)?)?;
            let spec = args.spec()?;
            if spec.n_grid.len() != 1 {
                return Err(Error::Range(
                    "concentration runs at a single n; pass one value to --n".into(),
                ));
            }
            let report = run_concentration(&w, &spec)?;
            let text = match args.format {
                Format::Csv => records_to_csv(&report.records),
                Format::Json => format!("{}\n", report_to_json(&report)),
            };
            emit(&args.out, &text)
        }
        Cmd::Oscillation {
            breakpoints,
            small,
            large,
            trials,
            seed,
            budget,
            jobs,
            out,
        } => {
            let bps = parse_f64_list(&breakpoints)?;
            let small = parse_usize_list(&small)?;
            let large = parse_usize_list(&large)?;
            let spec = ExperimentSpec {
                n_grid: vec![1],
                trials,
                master_seed: seed,
                budget,
                jobs,
            };
            let report = run_oscillation(&bps, &small, &large, &spec)?;
            emit(&out, &format!("{}\n", report_to_json(&report)))
        }
        Cmd::Densities {
            model,
            n,
            max_k,
            format,
            out,
        } => {
            let text = match load_model(&model)? {
                Model::Graphon(w) => {
                    let rows: Vec<(usize, f64)> = (1..=max_k.min(n))
                        .map(|k| Ok((k, expected_clique_count(&w, n, k)?)))
                        .collect::<Result<_, Error>>()?;
                    let predictor = clique_predictor(&w, n)?;
                    let limit = bounded_clique_limit(&w)?;
                    match format {
                        Format::Csv => {
                            let mut s = String::from("k,expected_cliques\n");
                            for (k, e) in &rows {
                                s.push_str(&format!("{k},{e:.17e}\n"));
                            }
                            s
                        }
                        Format::Json => {
                            let doc = json!({
                                "n": n,
                                "expected_cliques": rows.iter()
                                    .map(|(k, e)| json!({"k": k, "expected": e}))
                                    .collect::<Vec<_>>(),
                                "predictor": predictor,
                                "bounded_clique_limit": match limit {
                                    CliqueLimit::Finite(l) => json!(l),
                                    CliqueLimit::Unbounded => json!("inf"),
                                },
                            });
                            format!("{}\n", serde_json::to_string_pretty(&doc)?)
                        }
                    }
                }
                Model::Bigraphon(u) => {
                    let rows: Vec<(usize, f64)> = (1..=max_k.min(n))
                        .map(|l| Ok((l, expected_biclique_count(&u, n, l)?)))
                        .collect::<Result<_, Error>>()?;
                    let predictor = graphon_core::densities::biclique_predictor(&u, n);
                    match format {
                        Format::Csv => {
                            let mut s = String::from("ell,expected_bicliques\n");
                            for (l, e) in &rows {
                                s.push_str(&format!("{l},{e:.17e}\n"));
                            }
                            s
                        }
                        Format::Json => {
                            let moments: Vec<serde_json::Value> = (1..=max_k.min(n).min(3))
                                .map(|l| {
                                    let r = second_moment_report(&u, n, l)?;
                                    Ok(serde_json::from_str(&r.to_json())?)
                                })
                                .collect::<Result<_, Error>>()?;
                            let doc = json!({
                                "n": n,
                                "expected_bicliques": rows.iter()
                                    .map(|(l, e)| json!({"ell": l, "expected": e}))
                                    .collect::<Vec<_>>(),
                                "predictor": predictor,
                                "second_moments": moments,
                            });
                            format!("{}\n", serde_json::to_string_pretty(&doc)?)
                        }
                    }
                }
            };
            emit(&out, &text)
        }
        Cmd::Verify { seed } => {
            let report = run_verify(seed);
            for c in &report.checks {
                println!(
                    "{} {} — {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            if report.all_pass {
                println!("verify: all {} properties pass", report.checks.len());
                Ok(())
            } else {
                Err(Error::Range("verify suite failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let is_verify = matches!(cli.cmd, Cmd::Verify { .. });
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if is_verify {
                eprintln!("error: {e}");
                ExitCode::from(3)
            } else if matches!(e, Error::BudgetExceeded { .. }) {
                eprintln!("error: {e}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        }
    }
}
