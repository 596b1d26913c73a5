//! Scalar abstraction for the floating-point parts of the crate.
//!
//! Spectral radii, closed forms and bounds are written once over [`Scalar`]
//! and instantiated at `f64` (the default everywhere) or `f32`. Quantities
//! that are integers by construction (certificate column sums, edge
//! thresholds) stay in exact integer or rational arithmetic instead.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// floating point: f32 or f64
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion from a count.
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize is representable as a float")
    }

    fn from_i64_lossy(v: i64) -> Self {
        Self::from_i64(v).expect("i64 is representable as a float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::from_f64_lossy(0.5)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
