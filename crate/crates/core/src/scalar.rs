//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Real scalar type the spectral machinery is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + FftNum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// Converts an integer (mode number, node count, ...).
    #[inline]
    fn of_int(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("integer representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + FftNum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
}
