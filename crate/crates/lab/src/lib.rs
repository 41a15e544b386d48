//! Monte Carlo experiment harness: reproducible clique/biclique scaling,
//! concentration and oscillation runs, plus the verification suite that
//! backs the `verify` subcommand.
//!
//! Reproducibility contract: per-trial seeds are a pure function of
//! (master seed, n, trial index), trials run on a worker pool and are
//! sorted by (n, trial) before reporting, and the CSV encoder prints a
//! fixed `millis` value, so identical specs give byte-identical CSV at any
//! parallelism level. Measured wall times are carried in the JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use graphon_core::densities::{biclique_predictor, clique_predictor};
use graphon_core::optimization::kappa;
use graphon_core::rng::derive_seed;
use graphon_core::sampler::{sample_bipartite, sample_function_graphon, sample_graph, Labels};
use graphon_core::solvers::{max_biclique_budget, max_clique_budget};
use graphon_core::{FunctionGraphon64, Result, StepBigraphon64, StepGraphon64};

pub mod verify;

/// What a Monte Carlo run should do.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    /// Branch-node budget per solver call.
    pub budget: u64,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(graphon_core::Error::Range("trials must be >= 1".into()));
        }
        if self.n_grid.is_empty() || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(graphon_core::Error::Range(
                "n grid must be nonempty and strictly ascending".into(),
            ));
        }
        Ok(())
    }
}

/// One solved sample.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub omega: usize,
    pub predictor: usize,
    pub within_one: bool,
    pub complete: bool,
    pub millis: u64,
}

/// Per-n aggregate of a scaling run.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingSummary {
    pub n: usize,
    pub predictor: usize,
    pub mean_omega: f64,
    pub mean_omega_over_log_n: f64,
    /// kappa(W) for clique runs, 2/log(1/ess-sup) for biclique runs;
    /// absent when infinite.
    pub reference_rate: Option<f64>,
    pub frac_within_one: f64,
    pub frac_complete: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<ScalingSummary>,
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if jobs > 0 {
        b = b.num_threads(jobs);
    }
    b.build().expect("thread pool")
}

fn summarize(records: &[TrialRecord], n: usize, predictor: usize, rate: Option<f64>) -> ScalingSummary {
    let of_n: Vec<&TrialRecord> = records.iter().filter(|r| r.n == n).collect();
    let count = of_n.len() as f64;
    let mean = of_n.iter().map(|r| r.omega as f64).sum::<f64>() / count;
    ScalingSummary {
        n,
        predictor,
        mean_omega: mean,
        mean_omega_over_log_n: mean / (n as f64).ln(),
        reference_rate: rate,
        frac_within_one: of_n.iter().filter(|r| r.within_one).count() as f64 / count,
        frac_complete: of_n.iter().filter(|r| r.complete).count() as f64 / count,
    }
}

/// omega(G(n,W)) against the first-moment predictor over the n grid.
pub fn run_clique_scaling(w: &StepGraphon64, spec: &ExperimentSpec) -> Result<ScalingReport> {
    spec.validate()?;
    let kap = kappa(w).value;
    let rate = kap.is_finite().then_some(kap);
    let mut predictors = BTreeMap::new();
    for &n in &spec.n_grid {
        predictors.insert(n, clique_predictor(w, n)?);
    }
    let jobs: Vec<(usize, usize)> = spec
        .n_grid
        .iter()
        .flat_map(|&n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let records: Vec<TrialRecord> = pool(spec.jobs).install(|| {
        jobs.par_iter()
            .map(|&(n, trial)| {
                let seed = derive_seed(spec.master_seed, n, trial);
                let start = Instant::now();
                let g = sample_graph(w, n, seed);
                let r = max_clique_budget(&g, spec.budget);
                let predictor = predictors[&n];
                TrialRecord {
                    n,
                    trial,
                    seed,
                    omega: r.witness.size,
                    predictor,
                    within_one: r.witness.size.abs_diff(predictor) <= 1,
                    complete: r.complete,
                    millis: start.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });
    let mut records = records;
    records.sort_by_key(|r| (r.n, r.trial));
    let summaries = spec
        .n_grid
        .iter()
        .map(|&n| summarize(&records, n, predictors[&n], rate))
        .collect();
    Ok(ScalingReport { records, summaries })
}

/// omega_2(B(n,U)) against the biclique predictor over the n grid.
pub fn run_biclique_scaling(u: &StepBigraphon64, spec: &ExperimentSpec) -> Result<ScalingReport> {
    spec.validate()?;
    let p = u.max_density();
    let rate = (p > 0.0 && p < 1.0).then(|| 2.0 / (1.0 / p).ln());
    let mut predictors = BTreeMap::new();
    for &n in &spec.n_grid {
        predictors.insert(n, biclique_predictor(u, n));
    }
    let jobs: Vec<(usize, usize)> = spec
        .n_grid
        .iter()
        .flat_map(|&n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let records: Vec<TrialRecord> = pool(spec.jobs).install(|| {
        jobs.par_iter()
            .map(|&(n, trial)| {
                let seed = derive_seed(spec.master_seed, n, trial);
                let start = Instant::now();
                let b = sample_bipartite(u, n, seed);
                let r = max_biclique_budget(&b, spec.budget);
                let predictor = predictors[&n];
                TrialRecord {
                    n,
                    trial,
                    seed,
                    omega: r.size,
                    predictor,
                    within_one: r.size.abs_diff(predictor) <= 1,
                    complete: r.complete,
                    millis: start.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });
    let mut records = records;
    records.sort_by_key(|r| (r.n, r.trial));
    let summaries = spec
        .n_grid
        .iter()
        .map(|&n| summarize(&records, n, predictors[&n], rate))
        .collect();
    Ok(ScalingReport { records, summaries })
}

/// Distribution of omega at a single n.
#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub trials: usize,
    pub histogram: Vec<(usize, usize)>,
    /// Largest mass carried by two consecutive omega values.
    pub top_two_consecutive_mass: f64,
    pub mean: f64,
    pub coefficient_of_variation: f64,
    pub records: Vec<TrialRecord>,
}

/// Empirical omega distribution at the first (single) n of the grid.
pub fn run_concentration(w: &StepGraphon64, spec: &ExperimentSpec) -> Result<ConcentrationReport> {
    spec.validate()?;
    let n = spec.n_grid[0];
    let sub = ExperimentSpec {
        n_grid: vec![n],
        ..spec.clone()
    };
    let report = run_clique_scaling(w, &sub)?;
    let records = report.records;
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &records {
        *hist.entry(r.omega).or_insert(0) += 1;
    }
    let total = records.len() as f64;
    let top2 = hist
        .keys()
        .map(|&v| {
            let a = hist.get(&v).copied().unwrap_or(0);
            let b = hist.get(&(v + 1)).copied().unwrap_or(0);
            (a + b) as f64 / total
        })
        .fold(0.0f64, f64::max);
    let mean = records.iter().map(|r| r.omega as f64).sum::<f64>() / total;
    let var = records
        .iter()
        .map(|r| (r.omega as f64 - mean).powi(2))
        .sum::<f64>()
        / total;
    Ok(ConcentrationReport {
        n,
        trials: spec.trials,
        histogram: hist.into_iter().collect(),
        top_two_consecutive_mass: top2,
        mean,
        coefficient_of_variation: if mean > 0.0 { var.sqrt() / mean } else { 0.0 },
        records,
    })
}

/// Oscillation run on a distance-threshold graphon.
#[derive(Debug, Clone, Serialize)]
pub struct OscillationRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub omega: usize,
    /// Most latent points inside any window of width a_last: they form a
    /// clique, so omega >= this count.
    pub window_count: usize,
    /// Minimum latent pairwise gap (Fact on distinctness scales).
    pub min_gap: f64,
    pub complete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OscillationReport {
    pub breakpoints: Vec<f64>,
    pub small: Vec<OscillationRecord>,
    pub large: Vec<OscillationRecord>,
}

fn oscillation_trials(
    w: &FunctionGraphon64,
    a_last: f64,
    ns: &[usize],
    spec: &ExperimentSpec,
) -> Vec<OscillationRecord> {
    let jobs: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let mut records: Vec<OscillationRecord> = pool(spec.jobs).install(|| {
        jobs.par_iter()
            .map(|&(n, trial)| {
                let seed = derive_seed(spec.master_seed, n, trial);
                let g = sample_function_graphon(w, n, seed);
                let r = max_clique_budget(&g, spec.budget);
                let Labels::Coords(xs) = &g.labels else {
                    unreachable!("function graphon labels are coordinates")
                };
                let mut xs = xs.clone();
                xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut window = 0usize;
                let mut lo = 0usize;
                for hi in 0..xs.len() {
                    while xs[hi] - xs[lo] > a_last {
                        lo += 1;
                    }
                    window = window.max(hi - lo + 1);
                }
                let min_gap = xs
                    .windows(2)
                    .map(|p| p[1] - p[0])
                    .fold(f64::INFINITY, f64::min);
                OscillationRecord {
                    n,
                    trial,
                    seed,
                    omega: r.witness.size,
                    window_count: window,
                    min_gap,
                    complete: r.complete,
                }
            })
            .collect()
    });
    records.sort_by_key(|r| (r.n, r.trial));
    records
}

/// Sample the distance-threshold graphon at a small-scale and a
/// large-scale list of sizes.
pub fn run_oscillation(
    breakpoints: &[f64],
    small_ns: &[usize],
    large_ns: &[usize],
    spec: &ExperimentSpec,
) -> Result<OscillationReport> {
    if spec.trials == 0 {
        return Err(graphon_core::Error::Range("trials must be >= 1".into()));
    }
    let w = FunctionGraphon64::distance(breakpoints.to_vec())?;
    let a_last = *breakpoints.last().unwrap();
    Ok(OscillationReport {
        breakpoints: breakpoints.to_vec(),
        small: oscillation_trials(&w, a_last, small_ns, spec),
        large: oscillation_trials(&w, a_last, large_ns, spec),
    })
}

/// Frozen CSV schema for Monte Carlo runs. The `millis` column is pinned
/// to 0 so identical specs produce byte-identical files regardless of
/// parallelism or machine load; measured times live in the JSON reports.
pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("n,trial,seed,omega,predictor,within_one,complete,millis\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},0",
            r.n,
            r.trial,
            r.seed,
            r.omega,
            r.predictor,
            u8::from(r.within_one),
            u8::from(r.complete),
        );
    }
    out
}

pub fn report_to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ns: Vec<usize>, trials: usize) -> ExperimentSpec {
        ExperimentSpec {
            n_grid: ns,
            trials,
            master_seed: 12345,
            budget: 100_000_000,
            jobs: 0,
        }
    }

    #[test]
    fn complete_graph_scaling() {
        let w = StepGraphon64::constant(1.0).unwrap();
        let r = run_clique_scaling(&w, &spec(vec![5, 9], 3)).unwrap();
        for rec in &r.records {
            assert_eq!(rec.omega, rec.n);
        }
        assert!(r.summaries[0].reference_rate.is_none()); // kappa infinite
    }

    #[test]
    fn bounded_model_scaling() {
        let w = StepGraphon64::new(vec![0.5, 0.5], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = run_clique_scaling(&w, &spec(vec![10, 20], 5)).unwrap();
        for rec in &r.records {
            assert_eq!(rec.omega, 2, "n={} trial={}", rec.n, rec.trial);
        }
    }

    #[test]
    fn csv_is_parallelism_independent() {
        let w = StepGraphon64::constant(0.5).unwrap();
        let mut s1 = spec(vec![30, 40], 8);
        s1.jobs = 1;
        let mut s8 = s1.clone();
        s8.jobs = 8;
        let a = records_to_csv(&run_clique_scaling(&w, &s1).unwrap().records);
        let b = records_to_csv(&run_clique_scaling(&w, &s8).unwrap().records);
        assert_eq!(a, b);
        assert!(a.starts_with("n,trial,seed,omega,predictor,within_one,complete,millis\n"));
    }

    #[test]
    fn biclique_extremes() {
        let u = StepBigraphon64::constant(1.0).unwrap();
        let r = run_biclique_scaling(&u, &spec(vec![4, 6], 2)).unwrap();
        for rec in &r.records {
            assert_eq!(rec.omega, rec.n);
        }
    }

    #[test]
    fn concentration_point_mass() {
        let w = StepGraphon64::constant(1.0).unwrap();
        let r = run_concentration(&w, &spec(vec![7], 20)).unwrap();
        assert_eq!(r.histogram, vec![(7, 20)]);
        assert_eq!(r.top_two_consecutive_mass, 1.0);
        assert_eq!(r.coefficient_of_variation, 0.0);
    }

    #[test]
    fn oscillation_window_bound() {
        let r = run_oscillation(&[1.0, 0.1], &[20], &[60], &spec(vec![1], 3)).unwrap();
        for rec in r.small.iter().chain(&r.large) {
            assert!(rec.omega >= rec.window_count);
            assert!(rec.min_gap > 0.0);
        }
    }
}
