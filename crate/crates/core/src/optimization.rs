//! The Gamma functional, the clique-rate constant kappa, the second-moment
//! functional xi, the zoom construction and the rebalancing procedure.
//!
//! Everything works in mass coordinates: a histogram constant on blocks is
//! represented by its per-block masses a_i, so ||f||_1 = sum a_i and
//! Gamma(a) = sum a_i - (1/2) a^T L a with L the log-rate matrix. These
//! quantities do not depend on the block measures; only box constraints
//! (subsets of blocks) reintroduce beta.

use crate::error::{Error, Result};
use crate::graphon::{StepGraphon, SubsetFraction};
use crate::rng::Stream;
use crate::scalar::Real;

/// Per-block masses of a nonnegative histogram.
pub type MassVector<F> = Vec<F>;

/// Gamma(a, W) = sum a_i - (1/2) a^T L a. Returns -infinity when the mass
/// vector puts positive weight on a zero-density pair.
pub fn gamma<F: Real>(a: &[F], w: &StepGraphon<F>) -> Result<F> {
    if a.len() != w.block_count() {
        return Err(Error::DimensionMismatch(
            "mass vector length must equal block count".into(),
        ));
    }
    let l = w.log_rate_matrix();
    let quad = l.quadratic_form(a);
    if quad.is_infinite() {
        return Ok(F::neg_infinity());
    }
    Ok(a.iter().copied().sum::<F>() - quad / F::real(2.0))
}

/// Gamma(a, W) >= -tol.
pub fn is_admissible<F: Real>(a: &[F], w: &StepGraphon<F>, tol: F) -> Result<bool> {
    Ok(gamma(a, w)? >= -tol)
}

/// Result of the kappa optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaResult<F> {
    /// kappa(W) in (0, +inf]; +inf iff some P_ii = 1, and 0 in the
    /// degenerate all-zero-density case.
    pub value: F,
    /// Simplex minimizer of a^T L a (present when kappa is finite).
    pub minimizer: Option<MassVector<F>>,
    /// kappa * minimizer: the mass vector with Gamma = 0 and l1 norm kappa.
    pub optimal_mass: Option<MassVector<F>>,
    /// True when the Frank-Wolfe fallback was used (k > 12).
    pub approximate: bool,
}

const KKT_SUPPORT_LIMIT: usize = 12;

/// Solve M x = rhs by Gaussian elimination with partial pivoting.
/// Returns None when the matrix is (numerically) singular.
fn solve_linear<F: Real>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>) -> Option<Vec<F>> {
    let n = m.len();
    let scale = m
        .iter()
        .flatten()
        .fold(F::zero(), |acc, &v| acc.max(v.abs()))
        + F::one();
    let tiny = scale * F::real(1e-13);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .abs()
                    .partial_cmp(&m[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if m[pivot_row][col].abs() <= tiny {
            return None;
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in (col + 1)..n {
            let f = m[row][col] / m[col][col];
            for c in col..n {
                let v = m[col][c];
                m[row][c] = m[row][c] - f * v;
            }
            let r = rhs[col];
            rhs[row] = rhs[row] - f * r;
        }
    }
    let mut x = vec![F::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for c in (row + 1)..n {
            acc = acc - m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Exact simplex minimum of a^T L a by KKT support enumeration: on each
/// support the stationary system is L_S x = 1 and the minimizer candidate
/// is x / sum(x) with value 1 / sum(x). Ties go to the lowest support
/// mask, so the result is independent of any internal parallelism.
fn min_quadratic_exact<F: Real>(l: &crate::graphon::LogRateMatrix<F>) -> (F, Option<Vec<F>>) {
    let k = l.dim();
    let mut best_q = F::infinity();
    let mut best_a: Option<Vec<F>> = None;
    for mask in 1u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        if !l.finite_on(&support) {
            continue;
        }
        let s = support.len();
        let sys: Vec<Vec<F>> = support
            .iter()
            .map(|&i| support.iter().map(|&j| l.entry(i, j)).collect())
            .collect();
        let Some(x) = solve_linear(sys, vec![F::one(); s]) else {
            continue;
        };
        let total: F = x.iter().copied().sum();
        if !(total > F::zero()) {
            continue;
        }
        if x.iter().any(|&xi| xi / total < F::real(-1e-12)) {
            continue;
        }
        let q = F::one() / total;
        if q < best_q {
            best_q = q;
            let mut a = vec![F::zero(); k];
            for (idx, &i) in support.iter().enumerate() {
                a[i] = (x[idx] / total).max(F::zero());
            }
            best_a = Some(a);
        }
    }
    (best_q, best_a)
}

/// Frank-Wolfe on the simplex with exact line search; infinite L entries
/// replaced by a huge finite surrogate. Duality-gap tolerance 1e-10.
fn min_quadratic_frank_wolfe<F: Real>(
    l: &crate::graphon::LogRateMatrix<F>,
) -> (F, Option<Vec<F>>) {
    let k = l.dim();
    let big = F::real(1e300);
    let lf: Vec<Vec<F>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let v = l.entry(i, j);
                    if v.is_infinite() {
                        big
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let quad = |a: &[F]| -> F {
        let mut acc = F::zero();
        for i in 0..k {
            for j in 0..k {
                acc = acc + a[i] * a[j] * lf[i][j];
            }
        }
        acc
    };
    // start at the uniform point
    let mut a = vec![F::one() / F::from_usize_(k); k];
    for _ in 0..200_000 {
        let grad: Vec<F> = (0..k)
            .map(|i| {
                let mut g = F::zero();
                for j in 0..k {
                    g = g + lf[i][j] * a[j];
                }
                g * F::real(2.0)
            })
            .collect();
        let s = (0..k)
            .min_by(|&i, &j| grad[i].partial_cmp(&grad[j]).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        let gap: F = (0..k).map(|i| grad[i] * a[i]).sum::<F>() - grad[s];
        if gap <= F::real(1e-10) {
            break;
        }
        // d = e_s - a; exact line search for the quadratic along d
        let d: Vec<F> = (0..k)
            .map(|i| if i == s { F::one() - a[i] } else { -a[i] })
            .collect();
        let mut ald = F::zero();
        let mut dld = F::zero();
        for i in 0..k {
            for j in 0..k {
                ald = ald + a[i] * d[j] * lf[i][j];
                dld = dld + d[i] * d[j] * lf[i][j];
            }
        }
        let step = if dld > F::zero() {
            (-ald / dld).max(F::zero()).min(F::one())
        } else {
            F::one()
        };
        if step == F::zero() {
            break;
        }
        for i in 0..k {
            a[i] = a[i] + step * d[i];
        }
    }
    (quad(&a), Some(a))
}

/// kappa(W) = 2 / min_{simplex} a^T L a with the simplex minimizer and the
/// Gamma = 0 scaling attached.
pub fn kappa<F: Real>(w: &StepGraphon<F>) -> KappaResult<F> {
    let l = w.log_rate_matrix();
    let k = l.dim();
    // min q = 0 exactly when some diagonal entry vanishes (P_ii = 1)
    if (0..k).any(|i| l.entry(i, i) == F::zero()) {
        let i = (0..k).find(|&i| l.entry(i, i) == F::zero()).unwrap();
        let mut a = vec![F::zero(); k];
        a[i] = F::one();
        return KappaResult {
            value: F::infinity(),
            minimizer: Some(a),
            optimal_mass: None,
            approximate: false,
        };
    }
    let (q, a) = if k <= KKT_SUPPORT_LIMIT {
        min_quadratic_exact(&l)
    } else {
        min_quadratic_frank_wolfe(&l)
    };
    if q.is_infinite() {
        // every block pair has zero density: only the zero histogram is
        // admissible
        return KappaResult {
            value: F::zero(),
            minimizer: None,
            optimal_mass: None,
            approximate: false,
        };
    }
    let value = F::real(2.0) / q;
    let minimizer = a.expect("finite q has a minimizer");
    let optimal: Vec<F> = minimizer.iter().map(|&x| x * value).collect();
    KappaResult {
        value,
        minimizer: Some(minimizer),
        optimal_mass: Some(optimal),
        approximate: k > KKT_SUPPORT_LIMIT,
    }
}

/// Brute-force oracle: min of a^T L a over the simplex grid with step
/// 1/resolution, returned as 2/min. k <= 4 only.
pub fn kappa_grid_oracle<F: Real>(w: &StepGraphon<F>, resolution: usize) -> Result<F> {
    let k = w.block_count();
    if k > 4 {
        return Err(Error::TooManyBlocks { got: k, limit: 4 });
    }
    let l = w.log_rate_matrix();
    let res_f = F::from_usize_(resolution);
    let mut best = F::infinity();
    let mut counts = vec![0usize; k];
    fn rec<F: Real>(
        l: &crate::graphon::LogRateMatrix<F>,
        counts: &mut Vec<usize>,
        idx: usize,
        left: usize,
        res_f: F,
        best: &mut F,
    ) {
        if idx + 1 == counts.len() {
            counts[idx] = left;
            let a: Vec<F> = counts.iter().map(|&c| F::from_usize_(c) / res_f).collect();
            let q = l.quadratic_form(&a);
            if q < *best {
                *best = q;
            }
            return;
        }
        for c in 0..=left {
            counts[idx] = c;
            rec(l, counts, idx + 1, left - c, res_f, best);
        }
    }
    rec(&l, &mut counts, 0, resolution, res_f, &mut best);
    Ok(F::real(2.0) / best)
}

/// The set formula for kappa: scale the simplex minimizer into the box
/// prod [0, beta_i] and evaluate 2 (sum t)^2 / (t^T L t), which the
/// scale-invariance of the ratio makes equal to kappa(W).
pub fn kappa_via_sets<F: Real>(w: &StepGraphon<F>) -> F {
    let r = kappa(w);
    if !r.value.is_finite() {
        return r.value;
    }
    let Some(a) = r.minimizer else { return r.value };
    let l = w.log_rate_matrix();
    let c = a
        .iter()
        .zip(w.beta())
        .filter(|(&ai, _)| ai > F::zero())
        .map(|(&ai, &bi)| bi / ai)
        .fold(F::infinity(), |acc, v| acc.min(v));
    let t: Vec<F> = a.iter().map(|&ai| ai * c).collect();
    let total: F = t.iter().copied().sum();
    let quad = l.quadratic_form(&t);
    F::real(2.0) * total * total / quad
}

/// P_r: the best r-point pair-weight geometric mean, by exhaustive
/// enumeration of block compositions of r.
pub fn p_r<F: Real>(w: &StepGraphon<F>, r: usize) -> Result<F> {
    if r < 2 {
        return Err(Error::Range("p_r needs r >= 2".into()));
    }
    let k = w.block_count();
    // C(r+k-1, k-1) compositions
    let mut combos: f64 = 1.0;
    for i in 0..(k - 1) {
        combos = combos * (r + k - 1 - i) as f64 / (i + 1) as f64;
    }
    if combos > 1e6 {
        return Err(Error::BudgetExceeded(format!(
            "{combos:.0} compositions of r = {r} over {k} blocks"
        )));
    }
    let logp: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| w.density(i, j).to_f64().unwrap().ln())
                .collect()
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    let mut counts = vec![0usize; k];
    fn score(counts: &[usize], logp: &[Vec<f64>]) -> f64 {
        let mut s = 0.0;
        for (i, &ci) in counts.iter().enumerate() {
            if ci >= 2 {
                let pairs = (ci * (ci - 1) / 2) as f64;
                if logp[i][i] == f64::NEG_INFINITY {
                    return f64::NEG_INFINITY;
                }
                s += pairs * logp[i][i];
            }
            for (j, &cj) in counts.iter().enumerate().skip(i + 1) {
                if ci > 0 && cj > 0 {
                    if logp[i][j] == f64::NEG_INFINITY {
                        return f64::NEG_INFINITY;
                    }
                    s += (ci * cj) as f64 * logp[i][j];
                }
            }
        }
        s
    }
    fn rec(
        counts: &mut Vec<usize>,
        idx: usize,
        left: usize,
        logp: &[Vec<f64>],
        best: &mut f64,
    ) {
        if idx + 1 == counts.len() {
            counts[idx] = left;
            let s = score(counts, logp);
            if s > *best {
                *best = s;
            }
            return;
        }
        for c in 0..=left {
            counts[idx] = c;
            rec(counts, idx + 1, left - c, logp, best);
        }
    }
    rec(&mut counts, 0, r, &logp, &mut best);
    let exponent = 2.0 / ((r * r - r) as f64) * best;
    Ok(F::real(exponent.exp()))
}

/// The Gamma = 0 scaling of the simplex minimizer: mass kappa(W).
pub fn optimal_mass_vector<F: Real>(w: &StepGraphon<F>) -> Result<MassVector<F>> {
    let r = kappa(w);
    r.optimal_mass.ok_or(Error::KappaInfinite)
}

/// Minimum Gamma over the box prod [0, a*_i]: all 2^k corners plus
/// `n_samples` uniform interior points.
pub fn box_admissibility_scan<F: Real>(
    a_star: &[F],
    w: &StepGraphon<F>,
    n_samples: usize,
    seed: u64,
) -> Result<F> {
    let k = a_star.len();
    if k != w.block_count() {
        return Err(Error::DimensionMismatch(
            "mass vector length must equal block count".into(),
        ));
    }
    if k > 24 {
        return Err(Error::TooManyBlocks { got: k, limit: 24 });
    }
    let mut min_gamma = F::infinity();
    for mask in 0u32..(1 << k) {
        let g: Vec<F> = (0..k)
            .map(|i| if mask >> i & 1 == 1 { a_star[i] } else { F::zero() })
            .collect();
        min_gamma = min_gamma.min(gamma(&g, w)?);
    }
    let mut stream = Stream::new(seed);
    for _ in 0..n_samples {
        let g: Vec<F> = a_star
            .iter()
            .map(|&hi| F::real(stream.next_f64()) * hi)
            .collect();
        min_gamma = min_gamma.min(gamma(&g, w)?);
    }
    Ok(min_gamma)
}

/// Outcome of the rebalancing procedure.
#[derive(Debug, Clone, PartialEq)]
pub enum RebalanceOutcome<F> {
    /// Gamma(g') was already nonnegative.
    Admissible,
    /// g* = (1-eps1) g' + (1+eps2) g'' with Gamma(g*) >= 0 and strictly
    /// larger total mass than g = g' + g''.
    Improved {
        eps1: F,
        eps2: F,
        g_star: MassVector<F>,
    },
}

/// Rebalance an admissible decomposition g = g' + g'' whose first part is
/// inadmissible, trading mass from g' to g'' without losing admissibility
/// and strictly growing the total mass.
pub fn rebalance<F: Real>(
    g_prime: &[F],
    g_doubleprime: &[F],
    w: &StepGraphon<F>,
) -> Result<RebalanceOutcome<F>> {
    let k = w.block_count();
    if g_prime.len() != k || g_doubleprime.len() != k {
        return Err(Error::DimensionMismatch(
            "mass vector length must equal block count".into(),
        ));
    }
    let b: F = g_doubleprime.iter().copied().sum();
    if !(b > F::zero()) {
        return Err(Error::ZeroSecondPart);
    }
    let g: Vec<F> = g_prime
        .iter()
        .zip(g_doubleprime)
        .map(|(&x, &y)| x + y)
        .collect();
    let gamma_g = gamma(&g, w)?;
    if gamma_g < F::real(-1e-9) {
        return Err(Error::NotAdmissible(gamma_g.to_f64().unwrap_or(f64::NAN)));
    }
    if gamma(g_prime, w)? >= F::zero() {
        return Ok(RebalanceOutcome::Admissible);
    }
    let a: F = g_prime.iter().copied().sum();
    let ratio = a / b; // eps2 = ratio * eps1 keeps the total mass fixed
    let combine = |eps1: F, eps2: F| -> Vec<F> {
        g_prime
            .iter()
            .zip(g_doubleprime)
            .map(|(&x, &y)| (F::one() - eps1) * x + (F::one() + eps2) * y)
            .collect()
    };
    // shrink eps1 until the mass-preserving move strictly improves Gamma
    let mut eps1 = F::real(0.5);
    let mut found = None;
    for _ in 0..60 {
        let cand = combine(eps1, ratio * eps1);
        if gamma(&cand, w)? > gamma_g {
            found = Some(eps1);
            break;
        }
        eps1 = eps1 / F::real(2.0);
    }
    let Some(eps1) = found else {
        // the claim guarantees small eps1 works; reaching this means the
        // decomposition was degenerate
        return Err(Error::NotAdmissible(gamma_g.to_f64().unwrap_or(f64::NAN)));
    };
    // grow eps2 beyond the mass-preserving point while Gamma stays >= 0
    let eps2_base = ratio * eps1;
    let mut lo = eps2_base;
    let mut step = eps2_base.max(F::real(1e-3));
    for _ in 0..80 {
        let cand = combine(eps1, lo + step);
        if gamma(&cand, w)? >= F::zero() {
            lo = lo + step;
            step = step * F::real(2.0);
        } else {
            step = step / F::real(2.0);
        }
        if step < F::real(1e-12) {
            break;
        }
    }
    if lo <= eps2_base {
        // Gamma(g*(eps1, eps2_base)) > Gamma(g) >= 0, so an epsilon of
        // growth must exist; take a tiny guaranteed step
        let mut tiny = F::real(1e-9);
        while gamma(&combine(eps1, eps2_base + tiny), w)? < F::zero() {
            tiny = tiny / F::real(2.0);
            if tiny < F::real(1e-300) {
                return Err(Error::NotAdmissible(0.0));
            }
        }
        lo = eps2_base + tiny;
    }
    let g_star = combine(eps1, lo);
    Ok(RebalanceOutcome::Improved {
        eps1,
        eps2: lo,
        g_star,
    })
}

const XI_BLOCK_LIMIT: usize = 24;

/// xi(W) = max over box vertices t_i in {0, beta_i} of
/// (t^T L t) / (2 sum t). Any zero density makes xi infinite.
pub fn xi<F: Real>(w: &StepGraphon<F>) -> Result<F> {
    let k = w.block_count();
    if k > XI_BLOCK_LIMIT {
        return Err(Error::TooManyBlocks {
            got: k,
            limit: XI_BLOCK_LIMIT,
        });
    }
    if w.min_density() == F::zero() {
        return Ok(F::infinity());
    }
    let l = w.log_rate_matrix();
    let beta = w.beta();
    let mut best = F::zero();
    for mask in 1u32..(1 << k) {
        let t: Vec<F> = (0..k)
            .map(|i| if mask >> i & 1 == 1 { beta[i] } else { F::zero() })
            .collect();
        let total: F = t.iter().copied().sum();
        let val = l.quadratic_form(&t) / (F::real(2.0) * total);
        if val > best {
            best = val;
        }
    }
    Ok(best)
}

/// Grid oracle for xi: t_i on a grid of `steps` points per coordinate.
/// k <= 3 only (test guard for the vertex-enumeration argument).
pub fn xi_box_grid_oracle<F: Real>(w: &StepGraphon<F>, steps: usize) -> Result<F> {
    let k = w.block_count();
    if k > 3 {
        return Err(Error::TooManyBlocks { got: k, limit: 3 });
    }
    if w.min_density() == F::zero() {
        return Ok(F::infinity());
    }
    let l = w.log_rate_matrix();
    let beta = w.beta();
    let mut best = F::zero();
    let mut idx = vec![0usize; k];
    loop {
        let t: Vec<F> = (0..k)
            .map(|i| beta[i] * F::from_usize_(idx[i]) / F::from_usize_(steps))
            .collect();
        let total: F = t.iter().copied().sum();
        if total > F::zero() {
            let val = l.quadratic_form(&t) / (F::real(2.0) * total);
            if val > best {
                best = val;
            }
        }
        // odometer increment
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] <= steps {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == k {
                return Ok(best);
            }
        }
    }
}

/// xi of the graphon representation of a weighted complete graph.
#[derive(Debug, Clone, PartialEq)]
pub struct XiGraphResult<F> {
    pub value: F,
    /// Maximizing vertex subset found.
    pub subset: Vec<usize>,
    /// False when the heuristic (n > exact_limit) was used; the value is
    /// then a lower bound.
    pub exact: bool,
}

/// max over nonempty vertex subsets C of
/// (sum_{i<j in C} log(1/w(i,j))) / (n |C|).
pub fn xi_graph<F: Real>(
    h: &crate::sampler::WeightedCompleteGraph<F>,
    exact_limit: usize,
) -> Result<XiGraphResult<F>> {
    let n = h.n;
    if n == 0 {
        return Err(Error::Range("xi of an empty graph".into()));
    }
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let wij = h.weight(i, j).to_f64().unwrap();
            if wij <= 0.0 {
                return Ok(XiGraphResult {
                    value: F::infinity(),
                    subset: vec![i, j],
                    exact: true,
                });
            }
            l[i][j] = -wij.ln();
        }
    }
    let nf = n as f64;
    if n <= exact_limit.min(24) {
        // DP: cost(mask) = cost(mask minus top bit) + row sum of the top bit
        let mut cost = vec![0.0f64; 1 << n];
        let mut best = (0.0f64, 0usize);
        for mask in 1usize..(1 << n) {
            let v = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << v);
            let mut add = 0.0;
            let mut m = rest;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                add += l[v][u];
            }
            cost[mask] = cost[rest] + add;
            let size = mask.count_ones() as f64;
            let val = cost[mask] / (nf * size);
            if val > best.0 {
                best = (val, mask);
            }
        }
        let subset: Vec<usize> = (0..n).filter(|&i| best.1 >> i & 1 == 1).collect();
        let subset = if subset.is_empty() { vec![0] } else { subset };
        return Ok(XiGraphResult {
            value: F::real(best.0),
            subset,
            exact: true,
        });
    }
    // greedy plus add/remove/swap local search, 32 random restarts
    let objective = |c: &[bool]| -> f64 {
        let members: Vec<usize> = (0..n).filter(|&i| c[i]).collect();
        if members.is_empty() {
            return 0.0;
        }
        let mut s = 0.0;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                s += l[i][j];
            }
        }
        s / (nf * members.len() as f64)
    };
    let mut best_val = 0.0f64;
    let mut best_set = vec![false; n];
    best_set[0] = true;
    let mut stream = Stream::new(h.seed ^ 0x5EED_0F_11);
    for restart in 0..32 {
        let mut c = vec![false; n];
        c[stream.next_below(n)] = true;
        if restart > 0 {
            for ci in c.iter_mut() {
                *ci = stream.next_f64() < 0.3;
            }
            if !c.iter().any(|&x| x) {
                c[stream.next_below(n)] = true;
            }
        }
        let mut cur = objective(&c);
        loop {
            let mut improved = false;
            // add / remove
            for i in 0..n {
                c[i] = !c[i];
                if c.iter().any(|&x| x) {
                    let v = objective(&c);
                    if v > cur + 1e-15 {
                        cur = v;
                        improved = true;
                        continue;
                    }
                }
                c[i] = !c[i];
            }
            // swap
            if !improved {
                'swap: for i in 0..n {
                    if !c[i] {
                        continue;
                    }
                    for j in 0..n {
                        if c[j] {
                            continue;
                        }
                        c[i] = false;
                        c[j] = true;
                        let v = objective(&c);
                        if v > cur + 1e-15 {
                            cur = v;
                            improved = true;
                            break 'swap;
                        }
                        c[i] = true;
                        c[j] = false;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if cur > best_val {
            best_val = cur;
            best_set = c;
        }
    }
    let subset: Vec<usize> = (0..n).filter(|&i| best_set[i]).collect();
    Ok(XiGraphResult {
        value: F::real(best_val),
        subset,
        exact: false,
    })
}

/// The zoom construction: a subset t on which the restriction U satisfies
/// 1/xi(U) >= kappa(W) - eps (and always <= kappa(W)). For step graphons
/// the scaled simplex minimizer gives 1/xi(U) = kappa(W) exactly.
pub fn zoom<F: Real>(w: &StepGraphon<F>, eps: F) -> Result<SubsetFraction<F>> {
    let r = kappa(w);
    if !r.value.is_finite() {
        return Err(Error::BadZoomParameters);
    }
    if !(eps > F::zero() && eps < r.value) {
        return Err(Error::BadZoomParameters);
    }
    let a = r.minimizer.ok_or(Error::BadZoomParameters)?;
    let c = a
        .iter()
        .zip(w.beta())
        .filter(|(&ai, _)| ai > F::zero())
        .map(|(&ai, &bi)| bi / ai)
        .fold(F::infinity(), |acc, v| acc.min(v));
    let mut t: Vec<F> = a.iter().map(|&ai| ai * c).collect();
    let mut best_gap = f64::INFINITY;
    for _ in 0..40 {
        let frac = SubsetFraction::new(t.clone(), w.beta())?;
        let u = w.restrict(&frac)?;
        let inv_xi = F::one() / xi(&u)?;
        let gap = (r.value - inv_xi).to_f64().unwrap_or(f64::INFINITY);
        if inv_xi >= r.value - eps {
            return Ok(frac);
        }
        best_gap = best_gap.min(gap);
        for ti in t.iter_mut() {
            *ti = *ti / F::real(2.0);
        }
    }
    Err(Error::ZoomContractUnreachable(best_gap))
}
