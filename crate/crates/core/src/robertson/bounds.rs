//! Closed-form pointwise and norm bounds for the Robertson class, and the
//! profile whose maximization produces them.

use crate::scalar::Real;

use super::alpha::{Regime, SpiralAlpha};

/// Branch radius `(1 - sin|α|) / sin|α|`, defined only when `|α| > π/6`.
pub fn delta<T: Real>(alpha: &SpiralAlpha<T>) -> Option<T> {
    match alpha.regime() {
        Regime::Small => None,
        Regime::Large => {
            let s = alpha.sin_abs();
            Some((T::one() - s) / s)
        }
    }
}

/// Critical point `r² / (1 - (1 - r²) sin|α|)` of [`g_profile`].
pub fn s0<T: Real>(alpha: &SpiralAlpha<T>, r: T) -> T {
    let r2 = r * r;
    r2 / (T::one() - (T::one() - r2) * alpha.sin_abs())
}

/// `sin|α| t² - t + 1 - sin|α|`; its roots are `δ` and `1`, and it is
/// positive exactly when `s0(t) < t`.
pub fn h_poly<T: Real>(alpha: &SpiralAlpha<T>, t: T) -> T {
    let s = alpha.sin_abs();
    s * t * t - t + T::one() - s
}

/// `g(s) = (r² - s²(1 - (1 - r²) sin|α|)) / (r² (1 - r²) (1 - s)²)` for
/// `0 <= s <= r`, where `s` stands for `|ω(z)|` at `|z| = r`.
pub fn g_profile<T: Real>(alpha: &SpiralAlpha<T>, r: T, s: T) -> T {
    let one = T::one();
    let r2 = r * r;
    let k = one - (one - r2) * alpha.sin_abs();
    (r2 - s * s * k) / (r2 * (one - r2) * (one - s) * (one - s))
}

fn inner_branch<T: Real>(alpha: &SpiralAlpha<T>, r: T) -> T {
    let one = T::one();
    let s = alpha.sin_abs();
    let w = one - r * r;
    T::lit(2.0) * alpha.cos() * (one - w * s) / (w * w * (one - s))
}

/// Sharp upper bound for `|S_f(z)|` at `|z| = r` over the class.
pub fn pointwise_bound<T: Real>(alpha: &SpiralAlpha<T>, r: T) -> T {
    match delta(alpha) {
        Some(d) if r >= d => {
            let m = T::one() - r;
            T::lit(2.0) * alpha.cos() * alpha.sin_abs() / (m * m)
        }
        _ => inner_branch(alpha, r),
    }
}

/// Sharp bound for `sup (1 - |z|²)² |S_f(z)|`.
pub fn schwarzian_norm_bound<T: Real>(alpha: &SpiralAlpha<T>) -> T {
    match alpha.regime() {
        Regime::Small => T::lit(2.0) * alpha.cos() / (T::one() - alpha.sin_abs()),
        Regime::Large => T::lit(8.0) * alpha.cos() * alpha.sin_abs(),
    }
}

/// Sharp bound `4 cos α` for `sup (1 - |z|²) |P_f(z)|`.
pub fn pre_schwarzian_norm_bound<T: Real>(alpha: &SpiralAlpha<T>) -> T {
    T::lit(4.0) * alpha.cos()
}
