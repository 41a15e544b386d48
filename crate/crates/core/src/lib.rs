//! Graphon clique-number laboratory: step graphons, the clique-rate
//! constant kappa and second-moment functional xi, seeded samplers for
//! G(n,W) / H(n,W) / B(n,U), exact clique and biclique solvers, and exact
//! expected-count predictors.
//!
//! The numeric kernels are generic over the scalar type via [`Real`];
//! `f64` aliases for the main types live at the crate root.

pub mod bitset;
pub mod densities;
pub mod error;
pub mod graphon;
pub mod optimization;
pub mod rng;
pub mod sampler;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use scalar::Real;

/// Default-precision aliases.
pub type StepGraphon64 = graphon::StepGraphon<f64>;
pub type StepBigraphon64 = graphon::StepBigraphon<f64>;
pub type FunctionGraphon64 = graphon::FunctionGraphon<f64>;
pub type SubsetFraction64 = graphon::SubsetFraction<f64>;
pub type LogRateMatrix64 = graphon::LogRateMatrix<f64>;
pub type SampledGraph64 = sampler::SampledGraph<f64>;
pub type WeightedCompleteGraph64 = sampler::WeightedCompleteGraph<f64>;
pub type KappaResult64 = optimization::KappaResult<f64>;

/// Single-precision aliases.
pub type StepGraphon32 = graphon::StepGraphon<f32>;
pub type StepBigraphon32 = graphon::StepBigraphon<f32>;
pub type FunctionGraphon32 = graphon::FunctionGraphon<f32>;
