//! Homomorphism and bipartite densities, glued bigraphs, exact expected
//! (bi)clique counts, second moments, and the bounded-clique limit.
//!
//! Expected counts are computed in log-space over block-profile
//! compositions, so they stay usable at n in the thousands where direct
//! block-assignment enumeration would overflow both time and floats.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphon::{StepBigraphon, StepGraphon};
use crate::scalar::Real;

const ENUM_BUDGET: f64 = 1e8;

/// ln(n!) by direct summation (desk-scale n).
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// ln C(n, k); negative infinity when k > n.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// log-sum-exp with a fixed left-to-right order (bit-stable).
fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|&t| (t - m).exp()).sum::<f64>().ln()
}

/// Enumerate compositions of `total` into `parts` nonnegative summands.
fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, idx: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if idx + 1 == buf.len() {
            buf[idx] = left;
            f(buf);
            return;
        }
        for c in 0..=left {
            buf[idx] = c;
            rec(buf, idx + 1, left - c, f);
        }
    }
    let mut buf = vec![0usize; parts];
    rec(&mut buf, 0, total, f);
}

/// A labelled simple graph given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Range(format!("bad edge ({u},{v}) for n = {n}")));
            }
        }
        Ok(SimpleGraph { n, edges })
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k)
            .flat_map(|u| ((u + 1)..k).map(move |v| (u, v)))
            .collect();
        SimpleGraph { n: k, edges }
    }
}

/// t(H, W): exact sum over block assignments.
pub fn hom_density<F: Real>(h: &SimpleGraph, w: &StepGraphon<F>) -> Result<F> {
    let k = w.block_count();
    if h.n > 10 || (k as f64).powi(h.n as i32) > ENUM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{k}^{} block assignments",
            h.n
        )));
    }
    if h.n == 0 {
        return Ok(F::one());
    }
    let mut total = F::zero();
    let mut phi = vec![0usize; h.n];
    loop {
        let mut term = F::one();
        for &b in &phi {
            term = term * w.beta()[b];
        }
        for &(u, v) in &h.edges {
            term = term * w.density(phi[u], phi[v]);
        }
        total = total + term;
        // odometer
        let mut d = 0;
        loop {
            phi[d] += 1;
            if phi[d] < k {
                break;
            }
            phi[d] = 0;
            d += 1;
            if d == h.n {
                return Ok(total);
            }
        }
    }
}

/// A bigraph: two ordered colour classes of sizes p and q and edges
/// between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    pub p: usize,
    pub q: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Bigraph {
    pub fn new(p: usize, q: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= p || v >= q {
                return Err(Error::Range(format!(
                    "bad bigraph edge ({u},{v}) for sides {p}x{q}"
                )));
            }
        }
        Ok(Bigraph { p, q, edges })
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p).flat_map(|u| (0..q).map(move |v| (u, v))).collect();
        Bigraph { p, q, edges }
    }

    /// The conjugate: swap the two colour classes.
    pub fn conjugate(&self) -> Self {
        Bigraph {
            p: self.q,
            q: self.p,
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// Disjoint union, sides concatenated.
    pub fn disjoint_union(&self, other: &Bigraph) -> Self {
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|&(u, v)| (u + self.p, v + self.q)),
        );
        Bigraph {
            p: self.p + other.p,
            q: self.q + other.q,
            edges,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// t_B(H, U): exact sum over two-sided block assignments. Right vertices
/// are conditionally independent given the left assignment, so the inner
/// sum factorizes over right vertices.
pub fn bip_density<F: Real>(h: &Bigraph, u: &StepBigraphon<F>) -> Result<F> {
    let kl = u.left_blocks();
    let kr = u.right_blocks();
    if (kl as f64).powi(h.p as i32) * (kr as f64).powi(h.q as i32) > ENUM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{kl}^{} x {kr}^{} block assignments",
            h.p, h.q
        )));
    }
    if h.p == 0 || h.q == 0 {
        return Ok(F::one());
    }
    // left-neighbour lists per right vertex
    let mut nbrs: Vec<Vec<usize>> = vec![vec![]; h.q];
    for &(a, b) in &h.edges {
        nbrs[b].push(a);
    }
    let mut total = F::zero();
    let mut phi = vec![0usize; h.p];
    loop {
        let mut term = F::one();
        for &b in &phi {
            term = term * u.beta_l()[b];
        }
        for right_nbrs in &nbrs {
            let mut inner = F::zero();
            for c in 0..kr {
                let mut prod = u.beta_r()[c];
                for &a in right_nbrs {
                    prod = prod * u.density(phi[a], c);
                }
                inner = inner + prod;
            }
            term = term * inner;
        }
        total = total + term;
        let mut d = 0;
        loop {
            phi[d] += 1;
            if phi[d] < kl {
                break;
            }
            phi[d] = 0;
            d += 1;
            if d == h.p {
                return Ok(total);
            }
        }
    }
}

/// t_B(K_{n,m}, U) - mean(U)^{nm}; nonnegative by the complete-bipartite
/// Sidorenko property.
pub fn sidorenko_gap<F: Real>(u: &StepBigraphon<F>, n: usize, m: usize) -> Result<F> {
    let t = bip_density(&Bigraph::complete_bipartite(n, m), u)?;
    Ok(t - u.mean().powi((n * m) as i32))
}

/// K_{[ell,p,q]}: two copies of K_{ell,ell} glued along p left and q right
/// vertices; edge count 2 ell^2 - p q.
pub fn glued_bigraph(ell: usize, p: usize, q: usize) -> Result<Bigraph> {
    if p > ell || q > ell {
        return Err(Error::Range(format!(
            "overlaps p = {p}, q = {q} must be at most ell = {ell}"
        )));
    }
    let left = 2 * ell - p;
    let right = 2 * ell - q;
    let mut edges = Vec::new();
    // copy 1 occupies left 0..ell, right 0..ell
    for a in 0..ell {
        for b in 0..ell {
            edges.push((a, b));
        }
    }
    // copy 2: shared left vertices 0..p plus fresh ell..left, likewise right
    let left2: Vec<usize> = (0..p).chain(ell..left).collect();
    let right2: Vec<usize> = (0..q).chain(ell..right).collect();
    for &a in &left2 {
        for &b in &right2 {
            if !(a < ell && b < ell) {
                edges.push((a, b));
            }
        }
    }
    Bigraph::new(left, right, edges)
}

/// ln t_B(K_{l1,l2}, U) by two-sided block-profile compositions, in
/// log-space (handles large bicliques for few-block U).
fn ln_biclique_density<F: Real>(u: &StepBigraphon<F>, l1: usize, l2: usize) -> f64 {
    let kl = u.left_blocks();
    let kr = u.right_blocks();
    let lnb_l: Vec<f64> = u.beta_l().iter().map(|b| b.to_f64().unwrap().ln()).collect();
    let lnb_r: Vec<f64> = u.beta_r().iter().map(|b| b.to_f64().unwrap().ln()).collect();
    let lnd: Vec<Vec<f64>> = (0..kl)
        .map(|i| {
            (0..kr)
                .map(|j| u.density(i, j).to_f64().unwrap().ln())
                .collect()
        })
        .collect();
    let mut terms = Vec::new();
    for_each_composition(l1, kl, &mut |c| {
        let mut left_part = ln_factorial(l1);
        for (i, &ci) in c.iter().enumerate() {
            left_part += ci as f64 * lnb_l[i] - ln_factorial(ci);
        }
        let c = c.to_vec();
        for_each_composition(l2, kr, &mut |d| {
            let mut t = left_part + ln_factorial(l2);
            for (j, &dj) in d.iter().enumerate() {
                t += dj as f64 * lnb_r[j] - ln_factorial(dj);
            }
            for (i, &ci) in c.iter().enumerate() {
                for (j, &dj) in d.iter().enumerate() {
                    if ci * dj > 0 {
                        t += (ci * dj) as f64 * lnd[i][j];
                    }
                }
            }
            terms.push(t);
        });
    });
    log_sum_exp(&terms)
}

/// ln E[#balanced ell-bicliques in B(n,U)] = 2 ln C(n,ell) + ln t_B.
pub fn ln_expected_biclique_count<F: Real>(u: &StepBigraphon<F>, n: usize, ell: usize) -> f64 {
    if ell == 0 {
        return 0.0;
    }
    2.0 * ln_binomial(n, ell) + ln_biclique_density(u, ell, ell)
}

/// E[X_ell] = C(n,ell)^2 t_B(K_{ell,ell}, U).
pub fn expected_biclique_count<F: Real>(u: &StepBigraphon<F>, n: usize, ell: usize) -> Result<F> {
    Ok(F::real(ln_expected_biclique_count(u, n, ell).exp()))
}

/// E[Y_{p,q}]: expected ordered pairs of ell-bicliques overlapping in p
/// left and q right vertices.
pub fn expected_overlap_count<F: Real>(
    u: &StepBigraphon<F>,
    n: usize,
    ell: usize,
    p: usize,
    q: usize,
) -> Result<F> {
    if p > ell || q > ell || 2 * ell - p > n || 2 * ell - q > n {
        return Err(Error::Range(format!(
            "overlaps p = {p}, q = {q} out of range for ell = {ell}, n = {n}"
        )));
    }
    let multinomial = |over: usize| -> f64 {
        // n choose (ell-over, ell-over, over)
        ln_factorial(n)
            - 2.0 * ln_factorial(ell - over)
            - ln_factorial(over)
            - ln_factorial(n - (2 * ell - over))
    };
    let tb = if u.is_constant() {
        // closed form d^{2 ell^2 - p q}
        (2 * ell * ell - p * q) as f64 * u.density(0, 0).to_f64().unwrap().ln()
    } else {
        let g = glued_bigraph(ell, p, q)?;
        bip_density(&g, u)?.to_f64().unwrap().ln()
    };
    Ok(F::real((multinomial(p) + multinomial(q) + tb).exp()))
}

/// One cell of the (p,q) overlap table.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapCell {
    pub p: usize,
    pub q: usize,
    pub value: f64,
}

/// First and second moments of the balanced ell-biclique count.
#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub ell: usize,
    pub ex: f64,
    pub ex2: f64,
    /// ex2 / ex^2; absent when ex = 0.
    pub ratio: Option<f64>,
    pub table: Vec<OverlapCell>,
}

impl MomentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Assemble E[X], the full (p,q) overlap table, E[X^2] as its sum, and
/// the second-moment ratio.
pub fn second_moment_report<F: Real>(
    u: &StepBigraphon<F>,
    n: usize,
    ell: usize,
) -> Result<MomentReport> {
    let ex = expected_biclique_count::<F>(u, n, ell)?.to_f64().unwrap();
    let mut table = Vec::new();
    let mut ex2 = 0.0;
    for p in 0..=ell {
        for q in 0..=ell {
            if 2 * ell - p > n || 2 * ell - q > n {
                continue;
            }
            let v = expected_overlap_count::<F>(u, n, ell, p, q)?
                .to_f64()
                .unwrap();
            ex2 += v;
            table.push(OverlapCell { p, q, value: v });
        }
    }
    let ratio = if ex > 0.0 { Some(ex2 / (ex * ex)) } else { None };
    Ok(MomentReport {
        n,
        ell,
        ex,
        ex2,
        ratio,
        table,
    })
}

/// ln of the expected number of cliques with block profile m (m_i vertices
/// landing in block i) in G(n,W), labels integrated out:
/// C(n,k) k!/prod m_i! prod beta^m prod P^pairs with k = sum m.
fn ln_profile_count<F: Real>(w: &StepGraphon<F>, n: usize, m: &[usize]) -> f64 {
    let k: usize = m.iter().sum();
    if k > n {
        return f64::NEG_INFINITY;
    }
    let mut t = ln_binomial(n, k) + ln_factorial(k);
    for (i, &mi) in m.iter().enumerate() {
        t -= ln_factorial(mi);
        if mi > 0 {
            t += mi as f64 * w.beta()[i].to_f64().unwrap().ln();
        }
        if mi >= 2 {
            let pii = w.density(i, i).to_f64().unwrap();
            if pii == 0.0 {
                return f64::NEG_INFINITY;
            }
            t += (mi * (mi - 1) / 2) as f64 * pii.ln();
        }
        for (j, &mj) in m.iter().enumerate().skip(i + 1) {
            if mi * mj > 0 {
                let pij = w.density(i, j).to_f64().unwrap();
                if pij == 0.0 {
                    return f64::NEG_INFINITY;
                }
                t += (mi * mj) as f64 * pij.ln();
            }
        }
    }
    t
}

/// Expected number of cliques with m1 vertices in block 1 and m2 in block
/// 2 of a 2-block step graphon.
pub fn expected_profile_count<F: Real>(
    w: &StepGraphon<F>,
    n: usize,
    m1: usize,
    m2: usize,
) -> Result<F> {
    if w.block_count() != 2 {
        return Err(Error::DimensionMismatch(
            "profile counts are defined for 2-block graphons".into(),
        ));
    }
    if m1 + m2 > n {
        return Err(Error::Range(format!(
            "profile size {} exceeds n = {n}",
            m1 + m2
        )));
    }
    Ok(F::real(ln_profile_count(w, n, &[m1, m2]).exp()))
}

/// ln E[#k-cliques in G(n,W)] = ln( C(n,k) t(K_k, W) ), summed over block
/// profiles in log-space.
pub fn ln_expected_clique_count<F: Real>(w: &StepGraphon<F>, n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Ok(f64::NEG_INFINITY);
    }
    if k == 0 {
        return Ok(0.0);
    }
    let kb = w.block_count();
    let mut combos: f64 = 1.0;
    for i in 0..(kb - 1) {
        combos = combos * (k + kb - 1 - i) as f64 / (i + 1) as f64;
    }
    if combos > 1e6 {
        return Err(Error::BudgetExceeded(format!(
            "{combos:.0} block profiles for k = {k}"
        )));
    }
    let mut terms = Vec::new();
    for_each_composition(k, kb, &mut |m| {
        terms.push(ln_profile_count(w, n, m));
    });
    Ok(log_sum_exp(&terms))
}

/// E[#k-cliques in G(n,W)] = C(n,k) t(K_k, W), exact.
pub fn expected_clique_count<F: Real>(w: &StepGraphon<F>, n: usize, k: usize) -> Result<F> {
    Ok(F::real(ln_expected_clique_count(w, n, k)?.exp()))
}

/// sup{k : t(K_k, W) > 0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueLimit {
    Finite(usize),
    Unbounded,
}

/// The bounded-clique limit L. Any block with P_ii > 0 gives unbounded
/// cliques (repeat the block); otherwise L is the maximum block clique in
/// the positive-density support graph.
pub fn bounded_clique_limit<F: Real>(w: &StepGraphon<F>) -> Result<CliqueLimit> {
    let k = w.block_count();
    if (0..k).any(|i| w.density(i, i) > F::zero()) {
        return Ok(CliqueLimit::Unbounded);
    }
    if k > 20 {
        return Err(Error::TooManyBlocks { got: k, limit: 20 });
    }
    let adj: Vec<u32> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && w.density(i, j) > F::zero())
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let mut best = 1usize;
    for mask in 1u32..(1 << k) {
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
    Ok(CliqueLimit::Finite(best))
}

/// Largest k with E[#k-cliques in G(n,W)] >= 1; always >= 1 (singletons).
pub fn clique_predictor<F: Real>(w: &StepGraphon<F>, n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    let mut best = 1;
    for k in 2..=n {
        let lnc = ln_expected_clique_count(w, n, k)?;
        if lnc >= 0.0 {
            best = k;
        } else {
            break;
        }
    }
    Ok(best)
}

/// Largest ell with E[#balanced ell-bicliques in B(n,U)] >= 1; 0 when even
/// a single edge is not expected.
pub fn biclique_predictor<F: Real>(u: &StepBigraphon<F>, n: usize) -> usize {
    let mut best = 0;
    for ell in 1..=n {
        if ln_expected_biclique_count(u, n, ell) >= 0.0 {
            best = ell;
        } else {
            break;
        }
    }
    best
}
