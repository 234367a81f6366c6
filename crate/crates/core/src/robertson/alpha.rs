use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// Which branch of the pointwise Schwarzian bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `|α| <= π/6`.
    Small,
    /// `|α| > π/6`.
    Large,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Small => "Small",
            Regime::Large => "Large",
        }
    }
}

/// The spiral angle `α ∈ (-π/2, π/2)` with its trigonometric values cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralAlpha<T> {
    alpha: T,
    sin_a: T,
    cos_a: T,
    sin_abs: T,
    regime: Regime,
}

impl<T: Real> SpiralAlpha<T> {
    pub fn new(alpha: T) -> Result<Self> {
        let half_pi = T::FRAC_PI_2();
        if !(alpha.abs() < half_pi) {
            return Err(Error::AlphaOutOfRange(alpha.as_f64()));
        }
        let (sin_a, cos_a) = alpha.sin_cos();
        let regime = if alpha.abs() <= T::PI() / T::lit(6.0) {
            Regime::Small
        } else {
            Regime::Large
        };
        Ok(Self {
            alpha,
            sin_a,
            cos_a,
            sin_abs: sin_a.abs(),
            regime,
        })
    }

    /// `α = 0`, the convex case.
    pub fn convex() -> Self {
        Self::new(T::zero()).expect("zero is a valid angle")
    }

    #[inline]
    pub fn value(&self) -> T {
        self.alpha
    }

    #[inline]
    pub fn sin(&self) -> T {
        self.sin_a
    }

    #[inline]
    pub fn cos(&self) -> T {
        self.cos_a
    }

    /// `sin |α|`.
    #[inline]
    pub fn sin_abs(&self) -> T {
        self.sin_abs
    }

    #[inline]
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `e^{iα}`.
    pub fn rotation(&self) -> Complex<T> {
        cis(self.alpha)
    }

    /// `2 e^{-iα} cos α`, the factor in front of the pre-Schwarzian.
    pub fn pre_factor(&self) -> Complex<T> {
        cis(-self.alpha) * (T::lit(2.0) * self.cos_a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn regimes() {
        assert_eq!(SpiralAlpha::new(0.0).unwrap().regime(), Regime::Small);
        assert_eq!(SpiralAlpha::new(PI / 6.0).unwrap().regime(), Regime::Small);
        assert_eq!(SpiralAlpha::new(-PI / 6.0).unwrap().regime(), Regime::Small);
        assert_eq!(
            SpiralAlpha::new(PI / 6.0 + 1e-12).unwrap().regime(),
            Regime::Large
        );
        assert_eq!(SpiralAlpha::new(-1.2).unwrap().regime(), Regime::Large);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SpiralAlpha::new(PI / 2.0).is_err());
        assert!(SpiralAlpha::new(-2.0).is_err());
        assert!(SpiralAlpha::new(f64::NAN).is_err());
    }

    #[test]
    fn pre_factor_is_one_plus_rotation() {
        let a = SpiralAlpha::new(0.7).unwrap();
        let expected = Complex::new(1.0, 0.0) + cis(-1.4);
        assert!((a.pre_factor() - expected).norm() < 1e-15);
    }
}
