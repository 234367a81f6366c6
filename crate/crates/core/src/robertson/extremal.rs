//! Extremal functions for the pointwise and norm bounds.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::disk::SchwarzFunction;
use crate::error::{Error, Result};
use crate::scalar::{re, Real};

use super::alpha::{Regime, SpiralAlpha};
use super::bounds::{delta, s0};
use super::function::{robertson_from_omega, Provenance, RobertsonFunction};

/// `-1` for `0 <= α < π/2`, `+1` for `-π/2 < α < 0`.
pub fn extremal_p<T: Real>(alpha: &SpiralAlpha<T>) -> T {
    if alpha.value() >= T::zero() {
        -T::one()
    } else {
        T::one()
    }
}

/// Checks that `z0 ∈ (-1, 1)` and that either `|α| <= π/6` or `|z0| < δ`.
pub fn check_admissible<T: Real>(alpha: &SpiralAlpha<T>, z0: T) -> Result<()> {
    if !(z0.abs() < T::one()) {
        return Err(Error::OutsideDisk(z0.abs().as_f64()));
    }
    match alpha.regime() {
        Regime::Small => Ok(()),
        Regime::Large => {
            let d = delta(alpha).expect("delta exists in the large regime");
            if z0.abs() < d {
                Ok(())
            } else {
                Err(Error::ConditionViolation {
                    alpha: alpha.value().as_f64(),
                    z0: z0.as_f64(),
                    delta: d.as_f64(),
                })
            }
        }
    }
}

/// Real zero `b` of `φ(z) = p z (z - b)/(1 - b z)` chosen so that
/// `φ(z0) = z0² / (1 + p (1 - z0²) sin α)`.
pub fn extremal_b<T: Real>(alpha: &SpiralAlpha<T>, z0: T) -> Result<T> {
    check_admissible(alpha, z0)?;
    let p = extremal_p(alpha);
    let s = alpha.sin();
    let z2 = z0 * z0;
    // p = -1: (1 - sin α) + z0²(1 + sin α) > 0; p = +1: -(1 - z0²)(1 + sin α) < 0
    let den = -p + z2 - s + z2 * s;
    assert!(den != T::zero(), "extremal_b denominator vanished");
    let b = z0 * (T::one() - p - s + z2 * s) / den;
    if !(b.abs() < T::one()) {
        return Err(Error::BadParameter(format!(
            "extremal zero b = {b} left (-1, 1)"
        )));
    }
    Ok(b)
}

/// The function `f_{z0,p}` generated by `φ(z) = p z (z - b)/(1 - b z)`.
///
/// `|φ(z0)| = s0(|z0|)` always holds. The modulus of its Schwarzian at `z0`
/// equals [`extremal_value`] when `α = 0`; for `α ≠ 0` the phase of
/// `φ'(z0) - φ(z0)/z0` is not aligned with the `sin α · φ²` term and the
/// value falls short. [`phase_aligned_extremal`] attains it for every
/// admissible `α`.
pub fn extremal_fz0p<T: Real>(
    alpha: SpiralAlpha<T>,
    z0: T,
    order: usize,
) -> Result<RobertsonFunction<T>> {
    let b = extremal_b(&alpha, z0)?;
    let p = extremal_p(&alpha);
    let omega = SchwarzFunction::blaschke2(p, b)?;
    Ok(
        robertson_from_omega(alpha, omega, order)?.with_provenance(Provenance::ExtremalFz0p {
            z0,
            p,
            b,
        }),
    )
}

/// `2cos α (1 - (1 - z0²) sin|α|) / ((1 - z0²)² (1 - sin|α|))`, the inner
/// branch of the pointwise bound at `|z| = |z0|`.
pub fn extremal_value<T: Real>(alpha: &SpiralAlpha<T>, z0: T) -> Result<T> {
    check_admissible(alpha, z0)?;
    let one = T::one();
    let s = alpha.sin_abs();
    let w = one - z0 * z0;
    Ok(T::lit(2.0) * alpha.cos() * (one - w * s) / (w * w * (one - s)))
}

/// `f_0`, generated by `ω(z) = z`. Its Schwarzian is
/// `2i e^{-2iα} sin α cos α / (1 - z)²`.
pub fn extremal_f0<T: Real>(alpha: SpiralAlpha<T>, order: usize) -> Result<RobertsonFunction<T>> {
    Ok(
        robertson_from_omega(alpha, SchwarzFunction::identity(), order)?
            .with_provenance(Provenance::ExtremalF0),
    )
}

/// Schwarz function of [`phase_aligned_extremal`]: `ω = z q` with `q` the
/// disk automorphism satisfying `q(z0) = s0/z0` and
/// `arg q'(z0) = arg(i σ e^{-iα})`, `σ = sign α` (`+1` at `α = 0`).
///
/// At `z0` this makes `ω(z0) = s0 > 0`, puts `ω'(z0)` on the boundary of the
/// Dieudonné disk, and aligns its phase with the `sin α · ω²` term, so every
/// inequality in the pointwise estimate is an equality.
pub fn phase_aligned_omega<T: Real>(alpha: &SpiralAlpha<T>, z0: T) -> Result<SchwarzFunction<T>> {
    check_admissible(alpha, z0)?;
    let one = Complex::<T>::one();
    let sigma = if alpha.value() >= T::zero() {
        T::one()
    } else {
        -T::one()
    };
    // e^{iψ} = i σ e^{-iα}
    let turn = Complex::new(alpha.sin(), alpha.cos()) * sigma;
    let w0 = if z0 == T::zero() {
        T::zero()
    } else {
        s0(alpha, z0.abs()) / z0
    };
    let z0c = re(z0);
    let w0c = re(w0);
    // q = (u + w0)/(1 + w0 u), u = e^{iψ}(z - z0)/(1 - z0 z); its zero is
    // u = -w0, i.e. z = (z0 - w0 e^{-iψ})/(1 - z0 w0 e^{-iψ}).
    let t = w0c * turn.conj();
    let a = (z0c - t) / (one - z0c * t);
    // q = λ (z - a)/(1 - conj(a) z) with λ = q'(0)/(1 - |a|²).
    let u0 = -turn * z0c;
    let du0 = turn * (T::one() - z0 * z0);
    let dq0 = du0 * (T::one() - w0 * w0) / ((one + w0c * u0) * (one + w0c * u0));
    let lambda = dq0 / (T::one() - a.norm_sqr());
    let zeros = if a.norm().is_zero() {
        vec![Complex::zero()]
    } else {
        vec![a]
    };
    SchwarzFunction::blaschke_fix0(lambda.arg(), zeros)
}

/// Robertson function attaining `|S_f(z0)| = extremal_value(α, z0)`.
pub fn phase_aligned_extremal<T: Real>(
    alpha: SpiralAlpha<T>,
    z0: T,
    order: usize,
) -> Result<RobertsonFunction<T>> {
    let omega = phase_aligned_omega(&alpha, z0)?;
    Ok(robertson_from_omega(alpha, omega, order)?.with_provenance(Provenance::PhaseAligned { z0 }))
}
