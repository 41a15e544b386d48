//! Seeded samplers for G(n,W), H(n,W) and B(n,U).
//!
//! Latent labels use one counter-hash per vertex and every unordered pair
//! gets its own counter-hash uniform, so sampling is order-independent,
//! embarrassingly parallel and reproducible across platforms. Because the
//! same pair uniform drives the edge coin for every graphon at a fixed
//! seed, samples are pathwise monotone: pointwise-smaller densities give a
//! subgraph of the same-seed sample.

use std::fmt::Write as _;

use crate::bitset::BitMatrix;
use crate::graphon::{FunctionGraphon, StepBigraphon, StepGraphon};
use crate::rng::{pair_uniform, vertex_uniform};
use crate::scalar::Real;

/// Latent positions attached to a sample.
#[derive(Debug, PartialEq)]
pub enum Labels<F> {
    /// Block indices (step graphons).
    Blocks(Vec<usize>),
    /// Coordinates in (0,1) (function graphons).
    Coords(Vec<F>),
}

impl<F: Clone> Clone for Labels<F> {
    fn clone(&self) -> Self {
        match self {
            Labels::Blocks(v) => Labels::Blocks(v.clone()),
            Labels::Coords(v) => Labels::Coords(v.clone()),
        }
    }
}

impl<F> Labels<F> {
    pub fn len(&self) -> usize {
        match self {
            Labels::Blocks(v) => v.len(),
            Labels::Coords(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A realization of G(n,W): simple graph plus the latent labels.
#[derive(Debug, Clone)]
pub struct SampledGraph<F> {
    pub n: usize,
    pub adj: BitMatrix,
    pub labels: Labels<F>,
    pub seed: u64,
}

impl<F: Clone> SampledGraph<F> {
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.adj.row_count(u)).sum::<usize>() / 2
    }

    /// Graph complement (no self-loops), keeping labels and seed.
    pub fn complement(&self) -> Self {
        let mut adj = BitMatrix::new(self.n, self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.adj.get(u, v) {
                    adj.set(u, v, true);
                }
            }
        }
        SampledGraph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
            seed: self.seed,
        }
    }

    /// Edge-list text: header "n=<n> seed=<seed>", then "u v" per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={} seed={}\n", self.n, self.seed);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj.get(u, v) {
                    let _ = writeln!(out, "{u} {v}");
                }
            }
        }
        out
    }
}

/// A realization of H(n,W): complete graph with edge weights W(x_i,x_j)
/// and unit self-weights.
#[derive(Debug, Clone)]
pub struct WeightedCompleteGraph<F> {
    pub n: usize,
    pub w: Vec<Vec<F>>,
    pub labels: Labels<F>,
    pub seed: u64,
}

impl<F: Real> WeightedCompleteGraph<F> {
    pub fn weight(&self, u: usize, v: usize) -> F {
        self.w[u][v]
    }

    /// Edge-list text with a third weight column (17 significant digits).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={} seed={}\n", self.n, self.seed);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let _ = writeln!(out, "{u} {v} {:.16e}", self.w[u][v].to_f64().unwrap());
            }
        }
        out
    }
}

/// A realization of B(n,U).
#[derive(Debug, Clone)]
pub struct BipartiteSample {
    pub n_left: usize,
    pub n_right: usize,
    /// n_left x n_right biadjacency.
    pub adj: BitMatrix,
    pub left_labels: Vec<usize>,
    pub right_labels: Vec<usize>,
    pub seed: u64,
}

impl BipartiteSample {
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n_left).map(|u| self.adj.row_count(u)).sum()
    }
}

/// Block index drawn from the cumulative beta distribution at uniform `u`.
fn block_from_uniform<F: Real>(beta: &[F], u: f64) -> usize {
    let u = F::real(u);
    let mut cum = F::zero();
    for (i, &b) in beta.iter().enumerate() {
        cum = cum + b;
        if u < cum {
            return i;
        }
    }
    beta.len() - 1
}

fn draw_blocks<F: Real>(beta: &[F], n: usize, seed: u64) -> Vec<usize> {
    (0..n)
        .map(|i| block_from_uniform(beta, vertex_uniform(seed, i)))
        .collect()
}

/// Sample G(n,W) for a step graphon.
pub fn sample_graph<F: Real>(w: &StepGraphon<F>, n: usize, seed: u64) -> SampledGraph<F> {
    let blocks = draw_blocks(w.beta(), n, seed);
    let mut adj = BitMatrix::new(n, n);
    for u in 0..n {
        for v in (u + 1)..n {
            let p = w.density(blocks[u], blocks[v]).to_f64().unwrap();
            if pair_uniform(seed, u, v) < p {
                adj.set(u, v, true);
                adj.set(v, u, true);
            }
        }
    }
    SampledGraph {
        n,
        adj,
        labels: Labels::Blocks(blocks),
        seed,
    }
}

/// Sample G(n,W) for a function graphon (latent coordinates in (0,1)).
pub fn sample_function_graphon<F: Real>(
    w: &FunctionGraphon<F>,
    n: usize,
    seed: u64,
) -> SampledGraph<F> {
    // Nudge off 0 so coordinates stay in the open interval.
    let coords: Vec<F> = (0..n)
        .map(|i| F::real(vertex_uniform(seed, i).max(f64::MIN_POSITIVE)))
        .collect();
    let mut adj = BitMatrix::new(n, n);
    for u in 0..n {
        for v in (u + 1)..n {
            let p = w.evaluate(coords[u], coords[v]).to_f64().unwrap();
            if pair_uniform(seed, u, v) < p {
                adj.set(u, v, true);
                adj.set(v, u, true);
            }
        }
    }
    SampledGraph {
        n,
        adj,
        labels: Labels::Coords(coords),
        seed,
    }
}

/// Sample H(n,W): weights W(x_i,x_j), self-weights 1.
pub fn sample_weighted<F: Real>(
    w: &StepGraphon<F>,
    n: usize,
    seed: u64,
) -> WeightedCompleteGraph<F> {
    let blocks = draw_blocks(w.beta(), n, seed);
    let mut weights = vec![vec![F::one(); n]; n];
    for u in 0..n {
        for v in (u + 1)..n {
            let p = w.density(blocks[u], blocks[v]);
            weights[u][v] = p;
            weights[v][u] = p;
        }
    }
    WeightedCompleteGraph {
        n,
        w: weights,
        labels: Labels::Blocks(blocks),
        seed,
    }
}

/// Independent Bernoulli realization of a weighted graph: the second stage
/// of the G = Bernoulli(H) coupling. Uses the same per-pair uniforms as
/// `sample_graph` at the given seed, so realizing H(n,W) sampled with seed
/// s at realization seed s reproduces sample_graph(W,n,s) exactly.
pub fn bernoulli_realize<F: Real>(h: &WeightedCompleteGraph<F>, seed: u64) -> SampledGraph<F> {
    let n = h.n;
    let mut adj = BitMatrix::new(n, n);
    for u in 0..n {
        for v in (u + 1)..n {
            if pair_uniform(seed, u, v) < h.w[u][v].to_f64().unwrap() {
                adj.set(u, v, true);
                adj.set(v, u, true);
            }
        }
    }
    SampledGraph {
        n,
        adj,
        labels: h.labels.clone(),
        seed,
    }
}

/// Sample B(n,U): n left and n right vertices with independent latent
/// labels per side.
pub fn sample_bipartite<F: Real>(u: &StepBigraphon<F>, n: usize, seed: u64) -> BipartiteSample {
    // Distinct vertex counters for the two sides.
    let left = draw_blocks(u.beta_l(), n, seed);
    let right: Vec<usize> = (0..n)
        .map(|i| block_from_uniform(u.beta_r(), vertex_uniform(seed, n + i)))
        .collect();
    let mut adj = BitMatrix::new(n, n);
    for a in 0..n {
        for b in 0..n {
            let p = u.density(left[a], right[b]).to_f64().unwrap();
            // Left vertex a and right vertex b are distinct entities; give
            // the pair a collision-free counter by offsetting the right side.
            if pair_uniform(seed, a, n + b) < p {
                adj.set(a, b, true);
            }
        }
    }
    BipartiteSample {
        n_left: n,
        n_right: n,
        adj,
        left_labels: left,
        right_labels: right,
        seed,
    }
}
