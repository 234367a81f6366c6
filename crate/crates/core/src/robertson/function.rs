use num_complex::Complex;
use num_traits::One;

use crate::disk::{DiskFunction, FunctionKind, Jet, SchwarzFunction};
use crate::error::Result;
use crate::scalar::Real;
use crate::series::TaylorSeries;

use super::alpha::SpiralAlpha;
use super::derivatives::{pre_schwarzian_via_omega, schwarzian_via_omega, Distortion};

/// How a [`RobertsonFunction`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance<T> {
    FromOmega,
    /// Real two-point Blaschke construction `f_{z0,p}`.
    ExtremalFz0p {
        z0: T,
        p: T,
        b: T,
    },
    /// `ω(z) = z`.
    ExtremalF0,
    /// Blaschke construction with the phase of `ω'(z0)` aligned so that the
    /// pointwise bound is attained at `z0` for every admissible `α`.
    PhaseAligned {
        z0: T,
    },
}

/// A member of the Robertson class, held both as its generating pair
/// `(α, ω)` and as a normalized Taylor series.
#[derive(Debug, Clone, PartialEq)]
pub struct RobertsonFunction<T> {
    alpha: SpiralAlpha<T>,
    omega: SchwarzFunction<T>,
    f_series: TaylorSeries<T>,
    provenance: Provenance<T>,
}

impl<T: Real> RobertsonFunction<T> {
    pub fn alpha(&self) -> &SpiralAlpha<T> {
        &self.alpha
    }

    pub fn omega(&self) -> &SchwarzFunction<T> {
        &self.omega
    }

    /// Normalized Taylor series `z + a_2 z² + …`.
    pub fn series(&self) -> &TaylorSeries<T> {
        &self.f_series
    }

    pub fn provenance(&self) -> Provenance<T> {
        self.provenance
    }

    pub(crate) fn with_provenance(mut self, provenance: Provenance<T>) -> Self {
        self.provenance = provenance;
        self
    }
}

/// Closed-form evaluation through `ω`; the series is not consulted.
impl<T: Real> Distortion for RobertsonFunction<T> {
    type Scalar = T;

    fn pre_schwarzian(&self, z: Complex<T>) -> Result<Complex<T>> {
        pre_schwarzian_via_omega(&self.alpha, &self.omega, z)
    }

    fn schwarzian(&self, z: Complex<T>) -> Result<Complex<T>> {
        schwarzian_via_omega(&self.alpha, &self.omega, z)
    }
}

/// Builds `f` with `f(0) = 0`, `f'(0) = 1` and
/// `e^{iα}(1 + z f''/f') = (e^{iα} + e^{-iα} ω) / (1 - ω)`,
/// as `f' = exp ∫ P`, `f = ∫ f'` with `P = 2e^{-iα}cos α · q / (1 - ω)`.
pub fn robertson_from_omega<T: Real>(
    alpha: SpiralAlpha<T>,
    omega: SchwarzFunction<T>,
    order: usize,
) -> Result<RobertsonFunction<T>> {
    let q = omega.quotient_series(order);
    let one_minus_omega = &TaylorSeries::one(order) - &q.shift_up();
    let pre = q.quotient(&one_minus_omega)?.scale(alpha.pre_factor());
    let log_derivative = pre.integral().truncate(order);
    let f_series = log_derivative.exp().integral().truncate(order);
    Ok(RobertsonFunction {
        alpha,
        omega,
        f_series,
        provenance: Provenance::FromOmega,
    })
}

/// Closed form of the Robertson function generated by `ω(z) = z`:
/// `f'(z) = (1 - z)^{-c}` with `c = 2e^{-iα}cos α = 1 + e^{-2iα}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Map<T> {
    alpha: SpiralAlpha<T>,
    c: Complex<T>,
}

impl<T: Real> F0Map<T> {
    pub fn new(alpha: SpiralAlpha<T>) -> Self {
        Self {
            alpha,
            c: alpha.pre_factor(),
        }
    }

    pub fn alpha(&self) -> &SpiralAlpha<T> {
        &self.alpha
    }
}

impl<T: Real> DiskFunction for F0Map<T> {
    type Scalar = T;

    fn kind(&self) -> FunctionKind {
        FunctionKind::ClosedForm
    }

    fn jet_unchecked(&self, z: Complex<T>) -> Jet<T> {
        let one = Complex::<T>::one();
        let u = one - z;
        let log_u = u.ln();
        let d1 = (-self.c * log_u).exp();
        let d2 = d1 * self.c / u;
        let d3 = d2 * (self.c + one) / u;
        // 1 - c = -e^{-2iα} never vanishes
        let k = one - self.c;
        let value = (one - (k * log_u).exp()) / k;
        Jet::new(value, d1, d2, d3)
    }
}
