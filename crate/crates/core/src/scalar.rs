//! The floating-point abstraction shared by every geometric type in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for coordinates, distances, and filtration parameters.
///
/// Implemented for `f32` and `f64` through the blanket impl below; everything
/// in the crate defaults to `f64`, with `*F32` aliases exported at the root
/// for the single-precision route.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Widens to `f64` for rendering and for bitwise dedup keys.
    /// Exact for every finite `f32` and `f64`; infinities pass through.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}
