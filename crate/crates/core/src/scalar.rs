//! Scalar abstraction shared by every geometry kernel.
//!
//! All kernels are generic over [`Real`]. `f64` is the default everywhere;
//! [`DoubleDouble`] is used by the iteration, where the simplices grow
//! geometrically while the circumcenters move by ever smaller amounts and
//! binary64 runs out of digits long before the subsequences settle.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Double-double scalar (about 106 significant bits, same exponent range as `f64`).
pub type DoubleDouble = xprec::Df64;

/// Floating-point scalar usable by the geometry kernels.
pub trait Real: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Short label used in reports.
    const NAME: &'static str;

    /// Lossless embedding of an `f64`.
    fn of(x: f64) -> Self;

    /// Nearest `f64`.
    fn as_f64(self) -> f64;

    /// Unit roundoff of the format, as an `f64`.
    fn unit_roundoff() -> f64;
}

impl Real for f64 {
    const NAME: &'static str = "binary64";

    #[inline]
    fn of(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
}

impl Real for DoubleDouble {
    const NAME: &'static str = "double-double";

    #[inline]
    fn of(x: f64) -> Self {
        xprec::Df64::new(x)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.hi() + self.lo()
    }

    fn unit_roundoff() -> f64 {
        // 2^-106
        f64::EPSILON * f64::EPSILON / 8.0
    }
}

/// Sum of an iterator of scalars.
pub(crate) fn sum<T: Real>(it: impl IntoIterator<Item = T>) -> T {
    it.into_iter().fold(T::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_carries_extra_digits() {
        let third = DoubleDouble::of(1.0) / DoubleDouble::of(3.0);
        let back = third * DoubleDouble::of(3.0) - DoubleDouble::of(1.0);
        assert!(back.abs().as_f64() < 1e-30);
        let f = 1.0f64 / 3.0;
        assert!((f * 3.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn roundoff_ordering() {
        assert!(DoubleDouble::unit_roundoff() < 1e-31);
        assert_eq!(<f64 as Real>::unit_roundoff(), 2f64.powi(-53));
    }
}
