//! Scalar abstraction for the numeric core.
//!
//! All estimation routines are generic over [`Real`], which is satisfied by
//! `f32` and `f64`. Concrete `f64` aliases for the main model types live at
//! the crate root.

use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the numeric core.
///
/// Extends [`nalgebra::RealField`] with machine constants and cheap
/// conversions from literal `f64` values.
pub trait Real: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {
    /// Machine epsilon of the concrete type.
    const EPS: Self;

    /// Converts an `f64` constant into the scalar type.
    fn of(v: f64) -> Self;

    /// Widens the scalar to `f64` (exact for `f32` and `f64`).
    fn as_f64(self) -> f64;
}

impl Real for f64 {
    const EPS: Self = f64::EPSILON;

    #[inline]
    fn of(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    const EPS: Self = f32::EPSILON;

    #[inline]
    fn of(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        f64::from(self)
    }
}
