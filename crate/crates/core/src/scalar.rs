//! Floating-point scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar usable as a series coefficient: `f32` or `f64`.
///
/// Beyond [`Float`], the only extra capability needed is the logarithm of the
/// Gamma function, which `num-traits` does not provide.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// `ln |Γ(self)|`.
    fn ln_gamma(self) -> Self;

    /// Lossy conversion from `f64`; exact for `f64` itself.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Scalar")
    }

    /// Lossless widening to `f64`.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar always widens to f64")
    }
}

impl Scalar for f64 {
    #[inline]
    fn ln_gamma(self) -> Self {
        libm::lgamma(self)
    }
}

impl Scalar for f32 {
    #[inline]
    fn ln_gamma(self) -> Self {
        libm::lgammaf(self)
    }
}
