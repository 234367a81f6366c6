//! Pre-Schwarzian and Schwarzian derivatives, from a jet or in closed form
//! from the Schwarz function that generates a Robertson function.

use num_complex::Complex;
use num_traits::{Float, One};

use crate::disk::{check_in_disk, DiskFunction, SchwarzFunction};
use crate::error::{Error, Result};
use crate::grid::GridConfig;
use crate::scalar::Real;

use super::alpha::SpiralAlpha;

/// Smallest `|f'(z)|` accepted before dividing by it.
pub const VANISHING_DERIVATIVE: f64 = 1e-14;

/// A locally univalent map whose pre-Schwarzian and Schwarzian can be
/// evaluated pointwise.
pub trait Distortion {
    type Scalar: Real;

    fn pre_schwarzian(&self, z: Complex<Self::Scalar>) -> Result<Complex<Self::Scalar>>;

    fn schwarzian(&self, z: Complex<Self::Scalar>) -> Result<Complex<Self::Scalar>>;

    /// Radius beyond which evaluations are not trustworthy, if any.
    fn truncation_radius(&self) -> Option<Self::Scalar> {
        None
    }
}

impl<F: DiskFunction> Distortion for F {
    type Scalar = F::Scalar;

    fn pre_schwarzian(&self, z: Complex<F::Scalar>) -> Result<Complex<F::Scalar>> {
        pre_schwarzian(self, z)
    }

    fn schwarzian(&self, z: Complex<F::Scalar>) -> Result<Complex<F::Scalar>> {
        schwarzian(self, z)
    }

    fn truncation_radius(&self) -> Option<F::Scalar> {
        DiskFunction::truncation_radius(self)
    }
}

fn nonvanishing<T: Real>(d1: Complex<T>, z: Complex<T>) -> Result<()> {
    let m = d1.norm();
    if m < T::lit(VANISHING_DERIVATIVE) {
        return Err(Error::VanishingDerivative {
            re: z.re.as_f64(),
            im: z.im.as_f64(),
            modulus: m.as_f64(),
        });
    }
    Ok(())
}

/// `f''(z) / f'(z)`.
pub fn pre_schwarzian<F: DiskFunction>(f: &F, z: Complex<F::Scalar>) -> Result<Complex<F::Scalar>> {
    let jet = f.jet(z)?;
    nonvanishing(jet.d1, z)?;
    Ok(jet.d2 / jet.d1)
}

/// `f'''/f' - (3/2)(f''/f')²`.
pub fn schwarzian<F: DiskFunction>(f: &F, z: Complex<F::Scalar>) -> Result<Complex<F::Scalar>> {
    let jet = f.jet(z)?;
    nonvanishing(jet.d1, z)?;
    let p = jet.d2 / jet.d1;
    Ok(jet.d3 / jet.d1 - p * p * F::Scalar::lit(1.5))
}

/// Pre-Schwarzian `2 e^{-iα} cos α · q(z) / (1 - ω(z))` of the Robertson
/// function generated by `ω = z q`.
pub fn pre_schwarzian_via_omega<T: Real>(
    alpha: &SpiralAlpha<T>,
    omega: &SchwarzFunction<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    check_in_disk(z)?;
    let q = omega.quotient(z);
    Ok(alpha.pre_factor() * q / (Complex::<T>::one() - z * q))
}

/// Schwarzian of the Robertson function generated by `ω = z q`.
///
/// With `ω' - ω/z = z q'`, the Schwarzian
/// `2e^{-iα}cos α (zω' - ω + i e^{-iα} sin α ω²) / (z² (1 - ω)²)`
/// becomes `2e^{-iα}cos α (q' + i e^{-iα} sin α q²) / (1 - ω)²`, which has no
/// singularity at the origin.
pub fn schwarzian_via_omega<T: Real>(
    alpha: &SpiralAlpha<T>,
    omega: &SchwarzFunction<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    check_in_disk(z)?;
    let q = omega.quotient_jet(z);
    let i_rot = Complex::new(alpha.sin(), alpha.cos()); // i e^{-iα}
    let den = Complex::<T>::one() - z * q.value;
    let num = q.d1 + i_rot * q.value * q.value * alpha.sin();
    Ok(alpha.pre_factor() * num / (den * den))
}

/// `min Re{e^{iα}(1 + z P_f(z))}` over the grid; the function belongs to the
/// class when this stays above `-1e-9`.
pub fn membership_min<D: Distortion>(
    alpha: &SpiralAlpha<D::Scalar>,
    f: &D,
    grid: &GridConfig<D::Scalar>,
) -> Result<D::Scalar> {
    grid.validate()?;
    let r_max = f
        .truncation_radius()
        .map_or(grid.r_max, |cap| cap.min(grid.r_max));
    let grid = grid.with_r_max(r_max);
    let rot = alpha.rotation();
    let mut min = D::Scalar::infinity();
    for z in grid.points() {
        let p = f.pre_schwarzian(z)?;
        min = min.min((rot * (Complex::<D::Scalar>::one() + z * p)).re);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::Identity;
    use crate::series::TaylorSeries;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn a(x: f64) -> SpiralAlpha<f64> {
        SpiralAlpha::new(x).unwrap()
    }

    /// z/(1-z) as a series of the given order.
    fn koebe_half_plane(order: usize) -> TaylorSeries<f64> {
        TaylorSeries::geometric(order).shift_up()
    }

    #[test]
    fn pre_schwarzian_examples() {
        let id = Identity::<f64>::new();
        assert_eq!(pre_schwarzian(&id, c(0.4, 0.1)).unwrap(), c(0.0, 0.0));
        let f = koebe_half_plane(128);
        assert!((pre_schwarzian(&f, c(0.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        assert!((pre_schwarzian(&f, c(0.5, 0.0)).unwrap() - c(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn schwarzian_annihilates_mobius() {
        let f = koebe_half_plane(128);
        for z in [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, 0.1)] {
            assert!(schwarzian(&f, z).unwrap().norm() < 1e-11);
        }
        assert_eq!(
            schwarzian(&Identity::<f64>::new(), c(0.2, 0.2)).unwrap(),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn vanishing_derivative_is_reported() {
        let f = TaylorSeries::<f64>::from_real(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            pre_schwarzian(&f, c(0.0, 0.0)),
            Err(Error::VanishingDerivative { .. })
        ));
        assert!(matches!(
            schwarzian(&f, c(0.0, 0.0)),
            Err(Error::VanishingDerivative { .. })
        ));
    }

    #[test]
    fn schwarzian_via_omega_examples() {
        let id = SchwarzFunction::<f64>::identity();
        let v = schwarzian_via_omega(&a(PI / 4.0), &id, c(0.0, 0.0)).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        // 2 i e^{-iπ/2} sin cos = 2 sin cos = 1
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        for z in [c(0.1, 0.0), c(0.5, -0.4), c(-0.9, 0.0)] {
            assert!(schwarzian_via_omega(&a(0.0), &id, z).unwrap().norm() < 1e-15);
        }
    }

    /// The literal `z²`-divided form, evaluated away from the origin.
    fn schwarzian_literal(alpha: &SpiralAlpha<f64>, w: &SchwarzFunction<f64>, z: C) -> C {
        let j = w.jet(z).unwrap();
        let i_rot = c(0.0, 1.0) * crate::scalar::cis(-alpha.value());
        let num = z * j.d1 - j.value + i_rot * alpha.sin() * j.value * j.value;
        alpha.pre_factor() / (z * z) * num / ((c(1.0, 0.0) - j.value) * (c(1.0, 0.0) - j.value))
    }

    #[test]
    fn structural_form_matches_literal_form() {
        let omegas = [
            SchwarzFunction::rotation(0.3),
            SchwarzFunction::blaschke2(-1.0, 0.4).unwrap(),
            SchwarzFunction::blaschke_fix0(1.0, vec![c(0.2, -0.5), c(0.5, 0.5)]).unwrap(),
        ];
        for w in &omegas {
            for x in [-1.3, -0.2, 0.0, 0.6, 1.1] {
                for z in [c(0.3, 0.1), c(-0.6, 0.2), c(0.05, -0.7)] {
                    let s = schwarzian_via_omega(&a(x), w, z).unwrap();
                    let lit = schwarzian_literal(&a(x), w, z);
                    assert!((s - lit).norm() <= 1e-12 * (1.0 + lit.norm()));
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let grid = GridConfig::default();
        let f = crate::robertson::F0Map::new(a(0.0));
        let m = membership_min(&a(0.0), &f, &grid).unwrap();
        assert!(m > 0.0 && m < 1e-4, "{m}");
        let m = membership_min(&a(0.0), &Identity::<f64>::new(), &grid).unwrap();
        assert_eq!(m, 1.0);
    }
}
