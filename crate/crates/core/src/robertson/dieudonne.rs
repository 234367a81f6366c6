use num_complex::Complex;
use num_traits::Zero;

use crate::disk::{check_in_disk, DiskFunction, SchwarzFunction};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Both sides of `|ω'(z0) - ω(z0)/z0| <= (|z0|² - |ω(z0)|²) / (|z0| (1 - |z0|²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DieudonneReport<T> {
    pub z0: Complex<T>,
    pub lhs: T,
    pub rhs: T,
    /// `rhs - lhs`; zero exactly for degree-2 Blaschke products fixing 0.
    pub slack: T,
}

pub fn dieudonne_report<T: Real>(
    omega: &SchwarzFunction<T>,
    z0: Complex<T>,
) -> Result<DieudonneReport<T>> {
    check_in_disk(z0)?;
    if z0.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let q = omega.quotient_jet(z0);
    let w = omega.jet_unchecked(z0);
    // ω' - ω/z0 = z0 q'
    let lhs = (z0 * q.d1).norm();
    let r = z0.norm();
    let rhs = (r * r - w.value.norm_sqr()) / (r * (T::one() - r * r));
    Ok(DieudonneReport {
        z0,
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn rotation_is_degenerate_equality() {
        for theta in [0.0, 1.0, -2.5] {
            let r = dieudonne_report(&SchwarzFunction::rotation(theta), C::new(0.3, -0.5)).unwrap();
            assert!(r.lhs < 1e-15 && r.rhs.abs() < 1e-15, "{r:?}");
        }
    }

    #[test]
    fn degree_two_is_extremal() {
        let r = dieudonne_report(
            &SchwarzFunction::blaschke2(-1.0, 0.3).unwrap(),
            C::new(0.6, 0.0),
        )
        .unwrap();
        assert!(r.slack.abs() <= 1e-10, "{r:?}");
        assert!(r.lhs > 0.1);
        let w = SchwarzFunction::blaschke_fix0(0.7, vec![C::new(0.2, 0.6)]).unwrap();
        let r = dieudonne_report(&w, C::new(-0.3, 0.5)).unwrap();
        assert!(r.slack.abs() <= 1e-10, "{r:?}");
    }

    #[test]
    fn degree_three_is_strict() {
        // z · blaschke2(-1, 0.3)
        let w = SchwarzFunction::blaschke_fix0(
            std::f64::consts::PI,
            vec![C::new(0.0, 0.0), C::new(0.3, 0.0)],
        )
        .unwrap();
        let r = dieudonne_report(&w, C::new(0.6, 0.0)).unwrap();
        assert!(r.slack > 1e-3, "{r:?}");
    }

    #[test]
    fn rejects_bad_points() {
        let w = SchwarzFunction::<f64>::identity();
        assert_eq!(
            dieudonne_report(&w, C::new(0.0, 0.0)),
            Err(Error::ZeroPoint)
        );
        assert!(matches!(
            dieudonne_report(&w, C::new(1.0, 0.0)),
            Err(Error::OutsideDisk(_))
        ));
    }
}
