//! Exact maximum clique and clique counting.
//!
//! The main solver is branch-and-bound with a greedy-coloring upper bound
//! and degeneracy vertex ordering, on 64-bit word sets. A node budget
//! (default 1e8 branch nodes) degrades the answer to a flagged incumbent
//! instead of running forever on adversarial instances.

use crate::bitset::{and_into, count_ones, iter_ones, word_clear, word_get, word_set};
use crate::error::{Error, Result};
use crate::sampler::{SampledGraph, WeightedCompleteGraph};
use crate::scalar::Real;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// A clique: its size and a witnessing vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWitness {
    pub size: usize,
    pub vertices: Vec<usize>,
}

/// Solver outcome; `complete` is false when the node budget ran out and
/// the witness is only an incumbent (a valid clique, maybe not maximum).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCliqueResult {
    pub witness: CliqueWitness,
    pub complete: bool,
    pub nodes: u64,
}

/// Adjacency rows as word sets, in original vertex numbering.
fn adjacency_rows<F>(g: &SampledGraph<F>) -> Vec<Vec<u64>> {
    (0..g.n).map(|u| g.adj.row(u).to_vec()).collect()
}

/// Degeneracy order: repeatedly remove a minimum-degree vertex. Returns
/// the removal order (small-degree vertices first).
fn degeneracy_order(adj: &[Vec<u64>], n: usize) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..n).map(|u| count_ones(&adj[u])).collect();
    let mut alive = crate::bitset::full_set(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = iter_ones(&alive)
            .min_by_key(|&u| deg[u])
            .expect("nonempty alive set");
        order.push(v);
        word_clear(&mut alive, v);
        for w in iter_ones(&adj[v]) {
            if word_get(&alive, w) {
                deg[w] -= 1;
            }
        }
    }
    order
}

/// Per-depth reusable buffers so the hot search loop never allocates.
#[derive(Default)]
struct Scratch {
    /// Color classes as bitsets (independent sets within the candidates).
    classes: Vec<Vec<u64>>,
    /// Candidates in ascending color order, as (vertex, 1-based color).
    order: Vec<(u32, u32)>,
    uncolored: Vec<u64>,
    high: Vec<u32>,
    p_copy: Vec<u64>,
    next: Vec<u64>,
}

struct Searcher {
    /// Adjacency in search numbering (reverse degeneracy order).
    adj: Vec<Vec<u64>>,
    words: usize,
    best: usize,
    best_set: Vec<usize>,
    nodes: u64,
    budget: u64,
    complete: bool,
    scratch: Vec<Scratch>,
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x & y != 0)
}

/// Re-numbering step: a vertex forced into color >= th (so it would have
/// to be branched) may swap with a conflict vertex w whose class admits it
/// elsewhere, landing the new vertex below the branching threshold.
fn try_renumber(classes: &mut [Vec<u64>], adj: &[Vec<u64>], v: usize, th: usize) -> bool {
    for c1 in 0..th.saturating_sub(1) {
        let mut w = None;
        let mut cnt = 0u32;
        for (i, (&a, &b)) in classes[c1].iter().zip(&adj[v]).enumerate() {
            let x = a & b;
            if x != 0 {
                cnt += x.count_ones();
                if cnt > 1 {
                    break;
                }
                w = Some(i * 64 + x.trailing_zeros() as usize);
            }
        }
        if cnt != 1 {
            continue;
        }
        let w = w.expect("single conflict vertex");
        for c2 in c1 + 1..th {
            if !intersects(&classes[c2], &adj[w]) {
                word_clear(&mut classes[c1], w);
                word_set(&mut classes[c2], w);
                word_set(&mut classes[c1], v);
                return true;
            }
        }
    }
    false
}

impl Searcher {
    /// Extract the next maximal-in-order independent class from
    /// `sc.uncolored` into class `k` (identical classes to first-fit
    /// sequential coloring, at O(words) amortized per vertex).
    fn extract_class(&self, sc: &mut Scratch, k: usize) {
        if sc.classes.len() <= k {
            sc.classes.push(vec![0u64; self.words]);
        } else {
            sc.classes[k].iter_mut().for_each(|w| *w = 0);
        }
        let mut pool = std::mem::take(&mut sc.next);
        pool.clear();
        pool.extend_from_slice(&sc.uncolored);
        loop {
            let Some(v) = iter_ones(&pool).next() else {
                break;
            };
            word_clear(&mut sc.uncolored, v);
            word_set(&mut sc.classes[k], v);
            word_clear(&mut pool, v);
            for (c, &a) in pool.iter_mut().zip(&self.adj[v]) {
                *c &= !a;
            }
        }
        sc.next = pool;
    }

    /// Greedy coloring of `p` into `sc.order` (ascending 1-based colors,
    /// an upper bound on the clique inside each prefix). Only vertices
    /// with color > best - r.len() get branched; vertices that would
    /// exceed that threshold get a re-numbering attempt first.
    fn color_sort(&self, p: &[u64], rlen: usize, sc: &mut Scratch) {
        let th = self.best.saturating_sub(rlen);
        sc.uncolored.clear();
        sc.uncolored.extend_from_slice(p);
        let mut ncolors = 0usize;
        while ncolors < th && count_ones(&sc.uncolored) > 0 {
            self.extract_class(sc, ncolors);
            ncolors += 1;
        }
        if th >= 2 {
            sc.high.clear();
            sc.high.extend(iter_ones(&sc.uncolored).map(|v| v as u32));
            for i in 0..sc.high.len() {
                let v = sc.high[i] as usize;
                if try_renumber(&mut sc.classes[..ncolors], &self.adj, v, th) {
                    word_clear(&mut sc.uncolored, v);
                }
            }
        }
        while count_ones(&sc.uncolored) > 0 {
            self.extract_class(sc, ncolors);
            ncolors += 1;
        }
        sc.order.clear();
        for k in 0..ncolors {
            for v in iter_ones(&sc.classes[k]) {
                sc.order.push((v as u32, (k + 1) as u32));
            }
        }
    }

    fn expand(&mut self, depth: usize, r: &mut Vec<usize>, p: &[u64]) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.complete = false;
            return;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(Scratch::default());
        }
        let mut sc = std::mem::take(&mut self.scratch[depth]);
        self.color_sort(p, r.len(), &mut sc);
        sc.p_copy.clear();
        sc.p_copy.extend_from_slice(p);
        sc.next.resize(self.words, 0);
        for i in (0..sc.order.len()).rev() {
            let (v, color) = sc.order[i];
            let (v, color) = (v as usize, color as usize);
            if r.len() + color <= self.best {
                break;
            }
            r.push(v);
            let cnt = and_into(&sc.p_copy, &self.adj[v], &mut sc.next);
            if cnt == 0 {
                if r.len() > self.best {
                    self.best = r.len();
                    self.best_set = r.clone();
                }
            } else {
                self.expand(depth + 1, r, &sc.next);
                if !self.complete {
                    r.pop();
                    self.scratch[depth] = sc;
                    return;
                }
            }
            r.pop();
            word_clear(&mut sc.p_copy, v);
        }
        self.scratch[depth] = sc;
    }

    /// Greedy descents from the densest starting vertices: a cheap
    /// incumbent that lets the first bounds bite immediately.
    fn greedy_incumbent(&mut self, n: usize) {
        let full = crate::bitset::full_set(n);
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&u| std::cmp::Reverse(count_ones(&self.adj[u])));
        let mut p = vec![0u64; self.words];
        let mut tmp = vec![0u64; self.words];
        for &start in starts.iter().take(8) {
            let mut r = vec![start];
            and_into(&full, &self.adj[start], &mut p);
            loop {
                let mut pick: Option<(usize, usize)> = None;
                for v in iter_ones(&p) {
                    let c = p
                        .iter()
                        .zip(&self.adj[v])
                        .map(|(&a, &b)| (a & b).count_ones() as usize)
                        .sum::<usize>();
                    if pick.map_or(true, |(_, pc)| c > pc) {
                        pick = Some((v, c));
                    }
                }
                let Some((v, _)) = pick else { break };
                r.push(v);
                and_into(&p.clone(), &self.adj[v], &mut tmp);
                p.copy_from_slice(&tmp);
            }
            if r.len() > self.best {
                self.best = r.len();
                self.best_set = r;
            }
        }
    }
}

/// Exact maximum clique with the default node budget.
pub fn max_clique<F>(g: &SampledGraph<F>) -> MaxCliqueResult {
    max_clique_budget(g, DEFAULT_NODE_BUDGET)
}

/// Exact maximum clique; aborts with a flagged incumbent past `budget`
/// branch nodes.
pub fn max_clique_budget<F>(g: &SampledGraph<F>, budget: u64) -> MaxCliqueResult {
    let n = g.n;
    if n == 0 {
        return MaxCliqueResult {
            witness: CliqueWitness {
                size: 0,
                vertices: vec![],
            },
            complete: true,
            nodes: 0,
        };
    }
    let rows = adjacency_rows(g);
    let order = degeneracy_order(&rows, n);
    // search numbering: reverse degeneracy order (high-core vertices first)
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().rev().enumerate() {
        rank[v] = i;
    }
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    for u in 0..n {
        for v in iter_ones(&rows[u]) {
            word_set(&mut adj[rank[u]], rank[v]);
        }
    }
    let mut s = Searcher {
        adj,
        words,
        best: 0,
        best_set: vec![],
        nodes: 0,
        budget,
        complete: true,
        scratch: vec![],
    };
    s.greedy_incumbent(n);
    let full = crate::bitset::full_set(n);
    let mut r = Vec::new();
    s.expand(0, &mut r, &full);
    let back: Vec<usize> = order.iter().rev().copied().collect();
    let mut vertices: Vec<usize> = s.best_set.iter().map(|&i| back[i]).collect();
    vertices.sort_unstable();
    MaxCliqueResult {
        witness: CliqueWitness {
            size: s.best,
            vertices,
        },
        complete: s.complete,
        nodes: s.nodes,
    }
}

/// Brute-force oracle: exact omega by full subset enumeration, n <= 20.
pub fn max_clique_bruteforce<F>(g: &SampledGraph<F>) -> Result<usize> {
    let n = g.n;
    if n > 20 {
        return Err(Error::Range(format!("bruteforce limited to n <= 20, got {n}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| {
            g.adj
                .row_ones(u)
                .fold(0u32, |m, v| m | (1 << v))
        })
        .collect();
    let mut best = 1usize;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut ok = true;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if mask & !(1u32 << v) & !adj[v] != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// Number of k-vertex subsets inducing cliques, exact, by ordered
/// extension over the degeneracy order.
pub fn count_cliques<F>(g: &SampledGraph<F>, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Range("clique size k must be >= 1".into()));
    }
    let n = g.n;
    if k == 1 {
        return Ok(n as u64);
    }
    if n == 0 {
        return Ok(0);
    }
    let rows = adjacency_rows(g);
    let order = degeneracy_order(&rows, n);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let words = n.div_ceil(64);
    // edges oriented toward later vertices in the order
    let mut fwd = vec![vec![0u64; words]; n];
    for u in 0..n {
        for v in iter_ones(&rows[u]) {
            if rank[v] > rank[u] {
                word_set(&mut fwd[rank[u]], rank[v]);
            }
        }
    }
    fn rec(fwd: &[Vec<u64>], p: &[u64], need: usize) -> u64 {
        if need == 0 {
            return 1;
        }
        let mut total = 0;
        let mut next = vec![0u64; p.len()];
        for v in iter_ones(p) {
            if and_into(p, &fwd[v], &mut next) + 1 >= need {
                total += rec(fwd, &next, need - 1);
            }
        }
        total
    }
    let mut total = 0;
    for v in 0..n {
        total += rec(&fwd, &fwd[v], k - 1);
    }
    Ok(total)
}

/// alpha(G) = omega of the complement.
pub fn independence_number<F: Clone>(g: &SampledGraph<F>) -> MaxCliqueResult {
    max_clique(&g.complement())
}

/// Product of edge weights inside C; empty and singleton sets give 1.
pub fn clique_weight_product<F: Real>(h: &WeightedCompleteGraph<F>, c: &[usize]) -> F {
    let mut prod = F::one();
    for (idx, &u) in c.iter().enumerate() {
        for &v in &c[idx + 1..] {
            prod = prod * h.weight(u, v);
        }
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitMatrix;
    use crate::rng::Stream;
    use crate::sampler::Labels;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SampledGraph<f64> {
        let mut adj = BitMatrix::new(n, n);
        for &(u, v) in edges {
            adj.set(u, v, true);
            adj.set(v, u, true);
        }
        SampledGraph {
            n,
            adj,
            labels: Labels::Blocks(vec![0; n]),
            seed: 0,
        }
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> SampledGraph<f64> {
        let w = crate::graphon::StepGraphon::constant(p).unwrap();
        crate::sampler::sample_graph(&w, n, seed)
    }

    fn complete(n: usize) -> SampledGraph<f64> {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        graph(n, &edges)
    }

    fn cycle(n: usize) -> SampledGraph<f64> {
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        graph(n, &edges)
    }

    fn petersen() -> SampledGraph<f64> {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
        }
        graph(10, &edges)
    }

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&complete(4)).witness.size, 4);
        assert_eq!(max_clique(&cycle(5)).witness.size, 2);
        assert_eq!(max_clique(&petersen()).witness.size, 2);
        assert_eq!(max_clique(&graph(3, &[])).witness.size, 1);
        assert_eq!(max_clique(&graph(0, &[])).witness.size, 0);
    }

    #[test]
    fn witness_is_a_clique() {
        for seed in 0..10 {
            let g = random_graph(40, 0.5, seed);
            let r = max_clique(&g);
            assert!(r.complete);
            let w = &r.witness.vertices;
            assert_eq!(w.len(), r.witness.size);
            for (i, &u) in w.iter().enumerate() {
                for &v in &w[i + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(max_clique_bruteforce(&graph(3, &[])).unwrap(), 1);
        let k5_minus = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(max_clique_bruteforce(&k5_minus).unwrap(), 4);
        assert!(max_clique_bruteforce(&random_graph(21, 0.5, 0)).is_err());
        assert_eq!(max_clique_bruteforce(&petersen()).unwrap(), 2);
    }

    #[test]
    fn solver_matches_bruteforce() {
        for seed in 0..100u64 {
            let n = 5 + (seed % 8) as usize; // 5..=12
            let g = random_graph(n, 0.3 + 0.05 * (seed % 9) as f64, seed);
            assert_eq!(
                max_clique(&g).witness.size,
                max_clique_bruteforce(&g).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn budget_abort_flags_incomplete() {
        let g = random_graph(60, 0.9, 7);
        let r = max_clique_budget(&g, 3);
        assert!(!r.complete);
        let full = max_clique(&g);
        assert!(full.complete && full.witness.size >= r.witness.size);
    }

    #[test]
    fn count_cliques_examples() {
        assert_eq!(count_cliques(&complete(4), 3).unwrap(), 4);
        assert_eq!(count_cliques(&cycle(5), 2).unwrap(), 5);
        assert_eq!(count_cliques(&petersen(), 2).unwrap(), 15);
        assert_eq!(count_cliques(&petersen(), 3).unwrap(), 0);
        assert_eq!(count_cliques(&complete(6), 1).unwrap(), 6);
        assert!(count_cliques(&complete(4), 0).is_err());
    }

    #[test]
    fn count_at_omega() {
        for seed in 0..10u64 {
            let g = random_graph(25, 0.5, seed);
            let w = max_clique(&g).witness.size;
            assert!(count_cliques(&g, w).unwrap() >= 1);
            assert_eq!(count_cliques(&g, w + 1).unwrap(), 0);
        }
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&complete(5)).witness.size, 1);
        assert_eq!(independence_number(&graph(5, &[])).witness.size, 5);
        assert_eq!(independence_number(&cycle(5)).witness.size, 2);
    }

    #[test]
    fn edge_monotonicity_spot_check() {
        let mut s = Stream::new(404);
        for seed in 0..5u64 {
            let g = random_graph(15, 0.4, seed);
            let base = max_clique(&g).witness.size;
            let (u, v) = (s.next_below(15), s.next_below(15));
            if u == v {
                continue;
            }
            let mut g2 = g.clone();
            g2.adj.set(u, v, true);
            g2.adj.set(v, u, true);
            assert!(max_clique(&g2).witness.size >= base);
            let mut g3 = g.clone();
            g3.adj.set(u, v, false);
            g3.adj.set(v, u, false);
            assert!(max_clique(&g3).witness.size <= base);
        }
    }

    #[test]
    fn weight_products() {
        let w = crate::graphon::StepGraphon::constant(0.5).unwrap();
        let h = crate::sampler::sample_weighted(&w, 6, 3);
        assert_eq!(clique_weight_product(&h, &[]), 1.0);
        assert_eq!(clique_weight_product(&h, &[2]), 1.0);
        let c = [0, 1, 2, 3];
        assert!((clique_weight_product(&h, &c) - 0.5f64.powi(6)).abs() < 1e-15);
    }
}
