//! Step graphons, step bigraphons and function graphons.
//!
//! A step graphon is the computable model of a dense stochastic block
//! model: `k` blocks with measures `beta` (positive, summing to 1) and a
//! symmetric density matrix `P` with entries in [0,1]. The canonical
//! representation lays the blocks out as consecutive intervals of (0,1)
//! in index order; boundary points belong to the lower-index block.
//!
//! All types are immutable after construction and all operations are pure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

const MEASURE_SUM_TOL: f64 = 1e-12;

/// Block step graphon: measures `beta` and symmetric density matrix `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepGraphon<F> {
    beta: Vec<F>,
    p: Vec<Vec<F>>,
}

/// Wire format: `{"beta":[...], "P":[[...]]}` with plain decimal densities.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepGraphonDoc {
    pub beta: Vec<f64>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
}

impl<F: Real> StepGraphon<F> {
    pub fn new(beta: Vec<F>, p: Vec<Vec<F>>) -> Result<Self> {
        let k = beta.len();
        if k == 0 {
            return Err(Error::DimensionMismatch("empty block list".into()));
        }
        if p.len() != k || p.iter().any(|row| row.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "P must be {k}x{k} to match beta"
            )));
        }
        for (i, &b) in beta.iter().enumerate() {
            if !(b > F::zero()) {
                return Err(Error::NonPositiveMeasure {
                    index: i,
                    value: b.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let sum: F = beta.iter().copied().sum();
        if (sum - F::one()).abs().to_f64().unwrap_or(f64::NAN) > MEASURE_SUM_TOL {
            return Err(Error::MeasureSum(sum.to_f64().unwrap_or(f64::NAN)));
        }
        for i in 0..k {
            for j in 0..k {
                let v = p[i][j];
                if !(v >= F::zero() && v <= F::one()) {
                    return Err(Error::DensityOutOfRange {
                        i,
                        j,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
                if p[i][j] != p[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(StepGraphon { beta, p })
    }

    /// One-block graphon with constant density `p`.
    pub fn constant(p: F) -> Result<Self> {
        Self::new(vec![F::one()], vec![vec![p]])
    }

    pub fn block_count(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[F] {
        &self.beta
    }

    pub fn density(&self, i: usize, j: usize) -> F {
        self.p[i][j]
    }

    pub fn densities(&self) -> &[Vec<F>] {
        &self.p
    }

    pub fn min_density(&self) -> F {
        self.p
            .iter()
            .flatten()
            .copied()
            .fold(F::one(), |a, b| a.min(b))
    }

    pub fn max_density(&self) -> F {
        self.p
            .iter()
            .flatten()
            .copied()
            .fold(F::zero(), |a, b| a.max(b))
    }

    /// Edge density t(K2, W) = sum beta_i beta_j P_ij.
    pub fn edge_density(&self) -> F {
        let k = self.block_count();
        let mut acc = F::zero();
        for i in 0..k {
            for j in 0..k {
                acc = acc + self.beta[i] * self.beta[j] * self.p[i][j];
            }
        }
        acc
    }

    /// Block index of a point of (0,1) under the canonical interval layout.
    /// Boundary points go to the lower-index block.
    pub fn block_of(&self, x: F) -> Result<usize> {
        if !(x > F::zero() && x < F::one()) {
            return Err(Error::CoordinateOutOfRange(x.to_f64().unwrap_or(f64::NAN)));
        }
        let mut cum = F::zero();
        for (i, &b) in self.beta.iter().enumerate() {
            cum = cum + b;
            if x <= cum {
                return Ok(i);
            }
        }
        // x slipped past the accumulated measure by rounding; last block.
        Ok(self.block_count() - 1)
    }

    /// Pointwise value W(x, y).
    pub fn evaluate(&self, x: F, y: F) -> Result<F> {
        Ok(self.p[self.block_of(x)?][self.block_of(y)?])
    }

    /// Entrywise 1 - P with the same block structure.
    pub fn complement(&self) -> Self {
        let p = self
            .p
            .iter()
            .map(|row| row.iter().map(|&v| F::one() - v).collect())
            .collect();
        StepGraphon {
            beta: self.beta.clone(),
            p,
        }
    }

    /// Pointwise min(W, 1 - 1/j) for j >= 2.
    pub fn clip_max(&self, j: u32) -> Result<Self> {
        if j < 2 {
            return Err(Error::BadClip(j));
        }
        let cap = F::one() - F::one() / F::real(f64::from(j));
        let p = self
            .p
            .iter()
            .map(|row| row.iter().map(|&v| v.min(cap)).collect())
            .collect();
        Ok(StepGraphon {
            beta: self.beta.clone(),
            p,
        })
    }

    /// Subgraphon obtained by restricting to a subset and renormalising the
    /// measure: blocks with t_i > 0 survive with beta'_i = t_i / sum(t).
    pub fn restrict(&self, t: &SubsetFraction<F>) -> Result<Self> {
        if t.dim() != self.block_count() {
            return Err(Error::DimensionMismatch(
                "subset fraction does not match block count".into(),
            ));
        }
        let total = t.total();
        let survivors: Vec<usize> = (0..self.block_count())
            .filter(|&i| t.fractions()[i] > F::zero())
            .collect();
        let beta = survivors
            .iter()
            .map(|&i| t.fractions()[i] / total)
            .collect();
        let p = survivors
            .iter()
            .map(|&i| survivors.iter().map(|&j| self.p[i][j]).collect())
            .collect();
        StepGraphon::new_unchecked_measures(beta, p)
    }

    // Restriction renormalises the measures itself; the sum is 1 up to
    // rounding, so skip the strict sum check but keep the rest.
    fn new_unchecked_measures(beta: Vec<F>, p: Vec<Vec<F>>) -> Result<Self> {
        let mut g = StepGraphon { beta, p };
        let sum: F = g.beta.iter().copied().sum();
        for b in &mut g.beta {
            *b = *b / sum;
        }
        Ok(g)
    }

    /// Entrywise L_ij = log(1 / P_ij); zero density maps to +infinity.
    pub fn log_rate_matrix(&self) -> LogRateMatrix<F> {
        let l = self
            .p
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if v == F::zero() {
                            F::infinity()
                        } else {
                            -v.ln()
                        }
                    })
                    .collect()
            })
            .collect();
        LogRateMatrix { l }
    }

    pub fn to_doc(&self) -> StepGraphonDoc {
        StepGraphonDoc {
            beta: self.beta.iter().map(|b| b.to_f64().unwrap()).collect(),
            p: self
                .p
                .iter()
                .map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &StepGraphonDoc) -> Result<Self> {
        StepGraphon::new(
            doc.beta.iter().map(|&b| F::real(b)).collect(),
            doc.p
                .iter()
                .map(|row| row.iter().map(|&v| F::real(v)).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: StepGraphonDoc = serde_json::from_str(json)?;
        Self::from_doc(&doc)
    }
}

/// Symmetric matrix of log(1/P) values in [0, +inf].
#[derive(Debug, Clone, PartialEq)]
pub struct LogRateMatrix<F> {
    l: Vec<Vec<F>>,
}

impl<F: Real> LogRateMatrix<F> {
    pub fn dim(&self) -> usize {
        self.l.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.l[i][j]
    }

    pub fn entries(&self) -> &[Vec<F>] {
        &self.l
    }

    /// a^T L a with the conventions 0 * inf = 0 (zero-mass blocks do not
    /// see infinite rates) and any positive-mass pair on an infinite entry
    /// giving +infinity.
    pub fn quadratic_form(&self, a: &[F]) -> F {
        let k = self.dim();
        debug_assert_eq!(a.len(), k);
        let mut acc = F::zero();
        for i in 0..k {
            if a[i] == F::zero() {
                continue;
            }
            for j in 0..k {
                if a[j] == F::zero() {
                    continue;
                }
                let l = self.l[i][j];
                if l.is_infinite() {
                    return F::infinity();
                }
                acc = acc + a[i] * a[j] * l;
            }
        }
        acc
    }

    /// True if every entry of the principal submatrix on `support` is finite.
    pub fn finite_on(&self, support: &[usize]) -> bool {
        support
            .iter()
            .all(|&i| support.iter().all(|&j| self.l[i][j].is_finite()))
    }
}

/// A measurable subset of a step graphon up to measure: it meets block `i`
/// in measure `t_i` with 0 <= t_i <= beta_i and positive total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetFraction<F> {
    t: Vec<F>,
}

impl<F: Real> SubsetFraction<F> {
    pub fn new(t: Vec<F>, beta: &[F]) -> Result<Self> {
        if t.len() != beta.len() {
            return Err(Error::DimensionMismatch(
                "subset fraction length must equal block count".into(),
            ));
        }
        // Tiny overshoot from scaling arithmetic is clamped to the bound.
        let slack = F::real(1e-12);
        let mut clamped = t;
        for (i, ti) in clamped.iter_mut().enumerate() {
            if *ti < F::zero() || *ti > beta[i] + slack {
                return Err(Error::SubsetOutOfBounds {
                    index: i,
                    value: ti.to_f64().unwrap_or(f64::NAN),
                    bound: beta[i].to_f64().unwrap_or(f64::NAN),
                });
            }
            *ti = (*ti).min(beta[i]);
        }
        if !(clamped.iter().copied().sum::<F>() > F::zero()) {
            return Err(Error::EmptySubset);
        }
        Ok(SubsetFraction { t: clamped })
    }

    /// The full space: t = beta.
    pub fn full(beta: &[F]) -> Self {
        SubsetFraction { t: beta.to_vec() }
    }

    pub fn fractions(&self) -> &[F] {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn total(&self) -> F {
        self.t.iter().copied().sum()
    }
}

/// Step bigraphon: left/right block measures and a density matrix `D`
/// (no symmetry requirement).
#[derive(Debug, Clone, PartialEq)]
pub struct StepBigraphon<F> {
    beta_l: Vec<F>,
    beta_r: Vec<F>,
    d: Vec<Vec<F>>,
}

/// Wire format: `{"betaL":[...], "betaR":[...], "D":[[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepBigraphonDoc {
    #[serde(rename = "betaL")]
    pub beta_l: Vec<f64>,
    #[serde(rename = "betaR")]
    pub beta_r: Vec<f64>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<f64>>,
}

impl<F: Real> StepBigraphon<F> {
    pub fn new(beta_l: Vec<F>, beta_r: Vec<F>, d: Vec<Vec<F>>) -> Result<Self> {
        let (kl, kr) = (beta_l.len(), beta_r.len());
        if kl == 0 || kr == 0 {
            return Err(Error::DimensionMismatch("empty block list".into()));
        }
        if d.len() != kl || d.iter().any(|row| row.len() != kr) {
            return Err(Error::DimensionMismatch(format!(
                "D must be {kl}x{kr} to match the block measures"
            )));
        }
        for (side, beta) in [("left", &beta_l), ("right", &beta_r)] {
            for (i, &b) in beta.iter().enumerate() {
                if !(b > F::zero()) {
                    return Err(Error::NonPositiveMeasure {
                        index: i,
                        value: b.to_f64().unwrap_or(f64::NAN),
                    });
                }
                let _ = side;
            }
            let sum: F = beta.iter().copied().sum();
            if (sum - F::one()).abs().to_f64().unwrap_or(f64::NAN) > MEASURE_SUM_TOL {
                return Err(Error::MeasureSum(sum.to_f64().unwrap_or(f64::NAN)));
            }
        }
        for (i, row) in d.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(v >= F::zero() && v <= F::one()) {
                    return Err(Error::DensityOutOfRange {
                        i,
                        j,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(StepBigraphon { beta_l, beta_r, d })
    }

    pub fn constant(d: F) -> Result<Self> {
        Self::new(vec![F::one()], vec![F::one()], vec![vec![d]])
    }

    pub fn left_blocks(&self) -> usize {
        self.beta_l.len()
    }

    pub fn right_blocks(&self) -> usize {
        self.beta_r.len()
    }

    pub fn beta_l(&self) -> &[F] {
        &self.beta_l
    }

    pub fn beta_r(&self) -> &[F] {
        &self.beta_r
    }

    pub fn density(&self, i: usize, j: usize) -> F {
        self.d[i][j]
    }

    /// Mean density: the double integral of U.
    pub fn mean(&self) -> F {
        let mut acc = F::zero();
        for (i, row) in self.d.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                acc = acc + self.beta_l[i] * self.beta_r[j] * v;
            }
        }
        acc
    }

    /// Essential supremum of U (max density entry).
    pub fn max_density(&self) -> F {
        self.d
            .iter()
            .flatten()
            .copied()
            .fold(F::zero(), |a, b| a.max(b))
    }

    pub fn is_constant(&self) -> bool {
        let first = self.d[0][0];
        self.d.iter().flatten().all(|&v| v == first)
    }

    pub fn to_doc(&self) -> StepBigraphonDoc {
        StepBigraphonDoc {
            beta_l: self.beta_l.iter().map(|b| b.to_f64().unwrap()).collect(),
            beta_r: self.beta_r.iter().map(|b| b.to_f64().unwrap()).collect(),
            d: self
                .d
                .iter()
                .map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &StepBigraphonDoc) -> Result<Self> {
        StepBigraphon::new(
            doc.beta_l.iter().map(|&b| F::real(b)).collect(),
            doc.beta_r.iter().map(|&b| F::real(b)).collect(),
            doc.d
                .iter()
                .map(|row| row.iter().map(|&v| F::real(v)).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let doc: StepBigraphonDoc = serde_json::from_str(json)?;
        Self::from_doc(&doc)
    }
}

/// Function graphons on (0,1)^2 given by a closed-form family.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionGraphon<F> {
    /// W == p.
    Constant(F),
    /// Alternating 0/1 bands of |x - y|: with breakpoints a_1 = 1 > a_2 >
    /// ... > a_m, band i is a_i >= |x-y| > a_{i+1}; odd bands are 0, even
    /// bands are 1. Below the last breakpoint and on the diagonal the value
    /// is 1.
    DistanceThreshold { breakpoints: Vec<F> },
    /// m x m symmetric value grid on equal cells of (0,1)^2.
    GridStep { values: Vec<Vec<F>> },
}

impl<F: Real> FunctionGraphon<F> {
    pub fn distance(breakpoints: Vec<F>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints[0] != F::one() {
            return Err(Error::BadBreakpoints);
        }
        for w in breakpoints.windows(2) {
            if !(w[1] < w[0] && w[1] > F::zero()) {
                return Err(Error::BadBreakpoints);
            }
        }
        Ok(FunctionGraphon::DistanceThreshold { breakpoints })
    }

    pub fn grid(values: Vec<Vec<F>>) -> Result<Self> {
        let m = values.len();
        if m == 0 || values.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch("grid must be square".into()));
        }
        for i in 0..m {
            for j in 0..m {
                let v = values[i][j];
                if !(v >= F::zero() && v <= F::one()) {
                    return Err(Error::DensityOutOfRange {
                        i,
                        j,
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
                if values[i][j] != values[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(FunctionGraphon::GridStep { values })
    }

    pub fn evaluate(&self, x: F, y: F) -> F {
        match self {
            FunctionGraphon::Constant(p) => *p,
            FunctionGraphon::DistanceThreshold { breakpoints } => {
                if x == y {
                    return F::one();
                }
                let d = (x - y).abs();
                let m = breakpoints.len();
                // Largest band index whose breakpoint still covers d.
                let mut band = 1;
                for (idx, &a) in breakpoints.iter().enumerate().skip(1) {
                    if a >= d {
                        band = idx + 1;
                    } else {
                        break;
                    }
                }
                if band == m {
                    // Below every breakpoint: the construction is only used
                    // above this scale, value 1 keeps the dense core explicit.
                    F::one()
                } else if band % 2 == 1 {
                    F::zero()
                } else {
                    F::one()
                }
            }
            FunctionGraphon::GridStep { values } => {
                let m = values.len();
                let cell = |c: F| -> usize {
                    let idx = (c * F::from_usize_(m)).ceil() - F::one();
                    (idx.to_f64().unwrap_or(0.0).max(0.0) as usize).min(m - 1)
                };
                values[cell(x)][cell(y)]
            }
        }
    }

    /// Grid-cell averaging onto m equal blocks, `subsamples` x `subsamples`
    /// midpoint quadrature per cell, symmetrised.
    pub fn discretize(&self, m: usize, subsamples: usize) -> Result<StepGraphon<F>> {
        if m == 0 || subsamples == 0 {
            return Err(Error::Range("grid size and subsamples must be >= 1".into()));
        }
        let mf = F::from_usize_(m);
        let sf = F::from_usize_(subsamples);
        let mut p = vec![vec![F::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = F::zero();
                for u in 0..subsamples {
                    let x = (F::from_usize_(i) + (F::from_usize_(u) + F::real(0.5)) / sf) / mf;
                    for v in 0..subsamples {
                        let y =
                            (F::from_usize_(j) + (F::from_usize_(v) + F::real(0.5)) / sf) / mf;
                        acc = acc + self.evaluate(x, y);
                    }
                }
                p[i][j] = acc / (sf * sf);
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let avg = (p[i][j] + p[j][i]) / F::real(2.0);
                p[i][j] = avg;
                p[j][i] = avg;
            }
        }
        StepGraphon::new(vec![F::one() / mf; m], p)
    }
}

/// Convenience: the default quadrature resolution for `discretize`.
pub const DEFAULT_QUADRATURE_SUBSAMPLES: usize = 16;

#[cfg(test)]
mod tests {
    use super::*;

    type G = StepGraphon<f64>;

    /// The two-block counterexample graphon with beta = (1/2, 1/2).
    pub fn counterexample() -> G {
        let e3 = (-3.0f64).exp();
        let eq = (-0.25f64).exp();
        G::new(vec![0.5, 0.5], vec![vec![e3, eq], vec![eq, eq]]).unwrap()
    }

    #[test]
    fn make_step_graphon_examples() {
        assert!(G::new(vec![1.0], vec![vec![0.5]]).is_ok());
        counterexample();
        let err = G::new(vec![0.6, 0.5], vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(matches!(err, Err(Error::MeasureSum(_))));
        let asym = G::new(vec![0.5, 0.5], vec![vec![0.5, 0.4], vec![0.3, 0.5]]);
        assert!(matches!(asym, Err(Error::NotSymmetric(_, _))));
        let oob = G::new(vec![1.0], vec![vec![1.5]]);
        assert!(matches!(oob, Err(Error::DensityOutOfRange { .. })));
        let zero_beta = G::new(vec![1.0, 0.0], vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(matches!(zero_beta, Err(Error::NonPositiveMeasure { .. })));
    }

    #[test]
    fn evaluate_examples() {
        let c = G::constant(0.5).unwrap();
        assert_eq!(c.evaluate(0.3, 0.9).unwrap(), 0.5);
        let w = counterexample();
        assert_eq!(w.evaluate(0.25, 0.25).unwrap(), (-3.0f64).exp());
        assert_eq!(w.evaluate(0.25, 0.75).unwrap(), (-0.25f64).exp());
        // boundary point resolves to the lower-index block
        assert_eq!(w.evaluate(0.5, 0.5).unwrap(), (-3.0f64).exp());
        assert!(w.evaluate(0.0, 0.5).is_err());
        assert!(w.evaluate(0.5, 1.0).is_err());
    }

    #[test]
    fn complement_examples() {
        let c = G::constant(0.3).unwrap();
        assert_eq!(c.complement().density(0, 0), 0.7);
        let w = counterexample();
        // involution up to one rounding of 1 - (1 - x)
        let ww = w.complement().complement();
        assert_eq!(ww.beta(), w.beta());
        for i in 0..2 {
            for j in 0..2 {
                assert!((ww.density(i, j) - w.density(i, j)).abs() <= f64::EPSILON);
            }
        }
        let p11 = w.complement().density(0, 0);
        assert!((p11 - (1.0 - (-3.0f64).exp())).abs() < 1e-15);
        assert!((p11 - 0.950213).abs() < 1e-6);
    }

    #[test]
    fn clip_max_examples() {
        let one = G::constant(1.0).unwrap();
        assert_eq!(one.clip_max(2).unwrap().density(0, 0), 0.5);
        let low = G::constant(0.3).unwrap();
        assert_eq!(low.clip_max(2).unwrap().density(0, 0), 0.3);
        let w = G::new(vec![0.5, 0.5], vec![vec![0.99, 0.2], vec![0.2, 0.5]]).unwrap();
        assert!((w.clip_max(10).unwrap().density(0, 0) - 0.9).abs() < 1e-15);
        assert!(one.clip_max(1).is_err());
    }

    #[test]
    fn restrict_examples() {
        let w = counterexample();
        let full = SubsetFraction::new(w.beta().to_vec(), w.beta()).unwrap();
        assert_eq!(w.restrict(&full).unwrap(), w);

        let block2 = SubsetFraction::new(vec![0.0, 0.5], w.beta()).unwrap();
        let u = w.restrict(&block2).unwrap();
        assert_eq!(u.block_count(), 1);
        assert!((u.density(0, 0) - (-0.25f64).exp()).abs() < 1e-15);

        let shrink = SubsetFraction::new(vec![0.25, 0.25], w.beta()).unwrap();
        let v = w.restrict(&shrink).unwrap();
        assert_eq!(v.beta(), &[0.5, 0.5]);
        assert_eq!(v.densities(), w.densities());

        assert!(SubsetFraction::new(vec![0.0, 0.0], w.beta()).is_err());
    }

    #[test]
    fn log_rate_matrix_examples() {
        let c = G::constant((-1.0f64).exp()).unwrap();
        assert!((c.log_rate_matrix().entry(0, 0) - 1.0).abs() < 1e-15);
        let w = counterexample();
        let l = w.log_rate_matrix();
        assert!((l.entry(0, 0) - 3.0).abs() < 1e-12);
        assert!((l.entry(0, 1) - 0.25).abs() < 1e-12);
        assert!((l.entry(1, 1) - 0.25).abs() < 1e-12);
        let z = G::constant(0.0).unwrap();
        assert!(z.log_rate_matrix().entry(0, 0).is_infinite());
    }

    #[test]
    fn distance_graphon_examples() {
        let w = FunctionGraphon::distance(vec![1.0, 0.1]).unwrap();
        assert_eq!(w.evaluate(0.2, 0.7), 0.0); // band 1
        let w3 = FunctionGraphon::distance(vec![1.0, 0.1, 0.01]).unwrap();
        assert_eq!(w3.evaluate(0.40, 0.45), 1.0); // band 2
        assert_eq!(w3.evaluate(0.3, 0.3), 1.0); // diagonal convention
        assert_eq!(w3.evaluate(0.3, 0.305), 1.0); // below all breakpoints
        assert!(FunctionGraphon::distance(vec![1.0, 0.1, 0.2]).is_err());
        assert!(FunctionGraphon::<f64>::distance(vec![0.9, 0.1]).is_err());
    }

    #[test]
    fn discretize_examples() {
        let c = FunctionGraphon::Constant(0.5);
        let g = c.discretize(3, 4).unwrap();
        assert!(g.densities().iter().flatten().all(|&v| v == 0.5));

        let grid = FunctionGraphon::<f64>::grid(vec![vec![0.1, 0.6], vec![0.6, 0.9]]).unwrap();
        let g2 = grid.discretize(2, 8).unwrap();
        assert!((g2.density(0, 0) - 0.1).abs() < 1e-12);
        assert!((g2.density(0, 1) - 0.6).abs() < 1e-12);
        assert!((g2.density(1, 1) - 0.9).abs() < 1e-12);

        // Off-diagonal cell of the |x-y| > 1/2 threshold: within the cell
        // (0,1/2)x(1/2,1) the zero band {y - x > 1/2} covers exactly half
        // the area, so the cell mean is 1/2. Midpoint quadrature converges
        // at rate 1/(2s) against the diagonal cut, hence the fine grid.
        let th = FunctionGraphon::<f64>::distance(vec![1.0, 0.5]).unwrap();
        let g3 = th.discretize(2, 512).unwrap();
        assert!((g3.density(0, 1) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn json_roundtrip_and_rejects_strings() {
        let w = counterexample();
        let json = w.to_json();
        let back = G::from_json(&json).unwrap();
        assert_eq!(w, back);
        assert!(G::from_json(r#"{"beta":[1.0],"P":[["e^-3"]]}"#).is_err());

        let u = StepBigraphon::<f64>::new(
            vec![0.5, 0.5],
            vec![1.0],
            vec![vec![0.2], vec![0.8]],
        )
        .unwrap();
        let back = StepBigraphon::<f64>::from_json(&u.to_json()).unwrap();
        assert_eq!(u, back);
    }

    #[test]
    fn bigraphon_stats() {
        let u = StepBigraphon::<f64>::new(
            vec![0.25, 0.75],
            vec![0.5, 0.5],
            vec![vec![0.1, 0.2], vec![0.3, 0.4]],
        )
        .unwrap();
        let mean = 0.25 * 0.5 * 0.1 + 0.25 * 0.5 * 0.2 + 0.75 * 0.5 * 0.3 + 0.75 * 0.5 * 0.4;
        assert!((u.mean() - mean).abs() < 1e-15);
        assert_eq!(u.max_density(), 0.4);
        assert!(!u.is_constant());
    }
}
