//! Exact maximum balanced biclique for bipartite samples.
//!
//! omega_2 equals the maximum over nonempty left subsets X of
//! min(|X|, |common neighborhood of X|): if the common neighborhood is
//! smaller, some subset of X realizes the min exactly. The solver runs
//! branch-and-bound over left subsets with common-neighborhood pruning,
//! seeded by a greedy heuristic; a brute-force oracle covers nL <= 15.

use crate::bitset::{and_into, count_ones};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::sampler::BipartiteSample;

/// Solver outcome; `complete` is false when the node budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicliqueResult {
    pub size: usize,
    pub complete: bool,
    pub nodes: u64,
}

struct Searcher<'a> {
    rows: Vec<&'a [u64]>,
    words: usize,
    best: usize,
    nodes: u64,
    budget: u64,
    complete: bool,
}

impl Searcher<'_> {
    /// Branch on the left subset; `common` is the right-side common
    /// neighborhood of the `chosen` vertices, `ccount` its size.
    fn bb(&mut self, cands: &[usize], chosen: usize, common: &[u64], ccount: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.complete = false;
            return;
        }
        if cands.is_empty() || (chosen + cands.len()).min(ccount) <= self.best {
            return;
        }
        let u = cands[0];
        // include u
        let mut nc = vec![0u64; self.words];
        let ncount = and_into(common, self.rows[u], &mut nc);
        let value = (chosen + 1).min(ncount);
        if value > self.best {
            self.best = value;
        }
        if ncount > self.best {
            let mut scored: Vec<(usize, usize)> = cands[1..]
                .iter()
                .filter_map(|&v| {
                    let c = nc
                        .iter()
                        .zip(self.rows[v])
                        .map(|(&a, &b)| (a & b).count_ones() as usize)
                        .sum::<usize>();
                    (c > self.best).then_some((v, c))
                })
                .collect();
            scored.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let filtered: Vec<usize> = scored.into_iter().map(|(v, _)| v).collect();
            self.bb(&filtered, chosen + 1, &nc, ncount);
            if !self.complete {
                return;
            }
        }
        // exclude u
        self.bb(&cands[1..], chosen, common, ccount);
    }
}

/// Greedy incumbent: grow from each left vertex (and a few shuffled
/// restarts), always adding the candidate keeping the largest common
/// neighborhood.
fn greedy_seed(rows: &[&[u64]], n_left: usize, words: usize) -> usize {
    let mut best = 0usize;
    let mut stream = Stream::new(0x6C1A_5EED);
    let mut starts: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<usize> = (0..n_left).collect();
    by_degree.sort_by_key(|&u| std::cmp::Reverse(count_ones(rows[u])));
    starts.push(by_degree.clone());
    for _ in 0..32 {
        let mut order = by_degree.clone();
        for i in (1..order.len()).rev() {
            order.swap(i, stream.next_below(i + 1));
        }
        starts.push(order);
    }
    let mut common = vec![0u64; words];
    let mut tmp = vec![0u64; words];
    for order in &starts {
        for (k, &start) in order.iter().enumerate().take(8.min(order.len())) {
            common.copy_from_slice(rows[start]);
            let mut ccount = count_ones(&common);
            let mut size = 1usize;
            let mut used = vec![false; n_left];
            used[start] = true;
            best = best.max(size.min(ccount));
            loop {
                let mut pick: Option<(usize, usize)> = None;
                for &v in order.iter().skip(k + 1) {
                    if used[v] {
                        continue;
                    }
                    let c = common
                        .iter()
                        .zip(rows[v])
                        .map(|(&a, &b)| (a & b).count_ones() as usize)
                        .sum::<usize>();
                    if c > size && pick.map_or(true, |(_, pc)| c > pc) {
                        pick = Some((v, c));
                    }
                }
                let Some((v, _)) = pick else { break };
                used[v] = true;
                and_into(&common.clone(), rows[v], &mut tmp);
                common.copy_from_slice(&tmp);
                ccount = count_ones(&common);
                size += 1;
                best = best.max(size.min(ccount));
                if ccount <= size {
                    break;
                }
            }
        }
    }
    best
}

pub const DEFAULT_BICLIQUE_BUDGET: u64 = 100_000_000;

/// Exact maximum balanced biclique with the default node budget.
pub fn max_biclique(b: &BipartiteSample) -> BicliqueResult {
    max_biclique_budget(b, DEFAULT_BICLIQUE_BUDGET)
}

/// Exact maximum balanced biclique; aborts with a flagged incumbent past
/// `budget` branch nodes. Edgeless graphs give 0.
pub fn max_biclique_budget(b: &BipartiteSample, budget: u64) -> BicliqueResult {
    if b.n_left == 0 || b.n_right == 0 || b.edge_count() == 0 {
        return BicliqueResult {
            size: 0,
            complete: true,
            nodes: 0,
        };
    }
    let rows: Vec<&[u64]> = (0..b.n_left).map(|u| b.adj.row(u)).collect();
    let words = b.adj.words_per_row();
    let seed_best = greedy_seed(&rows, b.n_left, words);
    let mut s = Searcher {
        rows,
        words,
        best: seed_best,
        nodes: 0,
        budget,
        complete: true,
    };
    let mut cands: Vec<usize> = (0..b.n_left).collect();
    cands.sort_by_key(|&u| std::cmp::Reverse(count_ones(s.rows[u])));
    let full = crate::bitset::full_set(b.n_right);
    let ccount = b.n_right;
    s.bb(&cands, 0, &full, ccount);
    BicliqueResult {
        size: s.best,
        complete: s.complete,
        nodes: s.nodes,
    }
}

/// Brute-force oracle over all left subsets; nL <= 15.
pub fn max_biclique_bruteforce(b: &BipartiteSample) -> Result<usize> {
    if b.n_left > 15 {
        return Err(Error::Range(format!(
            "bruteforce limited to nL <= 15, got {}",
            b.n_left
        )));
    }
    let words = b.adj.words_per_row();
    let mut best = 0usize;
    let mut common = vec![0u64; words];
    let mut tmp = vec![0u64; words];
    for mask in 1u32..(1 << b.n_left) {
        common.iter_mut().for_each(|w| *w = !0);
        let mut m = mask;
        let mut size = 0usize;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            and_into(&common.clone(), b.adj.row(u), &mut tmp);
            common.copy_from_slice(&tmp);
            size += 1;
        }
        best = best.max(size.min(count_ones(&common)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitMatrix;
    use crate::graphon::StepBigraphon;
    use crate::sampler::sample_bipartite;

    fn bip(nl: usize, nr: usize, edges: &[(usize, usize)]) -> BipartiteSample {
        let mut adj = BitMatrix::new(nl, nr);
        for &(u, v) in edges {
            adj.set(u, v, true);
        }
        BipartiteSample {
            n_left: nl,
            n_right: nr,
            adj,
            left_labels: vec![0; nl],
            right_labels: vec![0; nr],
            seed: 0,
        }
    }

    #[test]
    fn small_examples() {
        let k33: Vec<_> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        assert_eq!(max_biclique(&bip(3, 3, &k33)).size, 3);
        assert_eq!(max_biclique(&bip(3, 3, &[])).size, 0);
        // C6 split 3+3: left u adjacent to right u and u+1 mod 3; no K_{2,2}
        let c6 = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)];
        assert_eq!(max_biclique(&bip(3, 3, &c6)).size, 1);
        assert_eq!(max_biclique_bruteforce(&bip(3, 3, &c6)).unwrap(), 1);
    }

    #[test]
    fn matches_bruteforce_on_random() {
        for seed in 0..100u64 {
            let d = 0.3 + 0.05 * (seed % 9) as f64;
            let u = StepBigraphon::<f64>::constant(d).unwrap();
            let n = 5 + (seed % 6) as usize; // 5..=10
            let b = sample_bipartite(&u, n, seed);
            assert_eq!(
                max_biclique(&b).size,
                max_biclique_bruteforce(&b).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn budget_abort_flags_incomplete() {
        let u = StepBigraphon::<f64>::constant(0.7).unwrap();
        let b = sample_bipartite(&u, 40, 3);
        let r = max_biclique_budget(&b, 2);
        assert!(!r.complete);
        let full = max_biclique(&b);
        assert!(full.complete && full.size >= r.size);
    }

    #[test]
    fn bruteforce_rejects_large() {
        let u = StepBigraphon::<f64>::constant(0.5).unwrap();
        let b = sample_bipartite(&u, 16, 1);
        assert!(max_biclique_bruteforce(&b).is_err());
    }
}
