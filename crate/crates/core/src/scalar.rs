//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Wraps `self` into the half-open interval `(-period/2, period/2]`.
    fn wrap_centered(self, period: Self) -> Self {
        let half = period / (Self::one() + Self::one());
        let mut r = self - period * (self / period).round();
        if r <= -half {
            r += period;
        } else if r > half {
            r -= period;
        }
        r
    }

    /// Wraps `self` into `[0, period)`.
    fn wrap_positive(self, period: Self) -> Self {
        let r = self - period * (self / period).floor();
        if r >= period || r < Self::zero() {
            Self::zero()
        } else {
            r
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
