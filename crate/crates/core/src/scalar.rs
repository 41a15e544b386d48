//! Scalar abstraction for the numeric kernels.
//!
//! Everything that manipulates densities, log-rates and masses is generic
//! over [`Real`], so the same code runs in `f32` or `f64`. Concrete aliases
//! live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable throughout the crate.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for lifting an `f64` constant into the scalar type.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    fn from_usize_(n: usize) -> Self {
        Self::from_usize(n).expect("usize not representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}
