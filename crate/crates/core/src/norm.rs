//! Hyperbolic sup-norms `sup (1 - |z|²)^k |F(z)|` over the unit disk.
//!
//! The estimate is a coarse polar scan followed by local refinement from the
//! best few scan maxima: alternating golden-section line searches in radius
//! and angle, each pass closed by a finite-difference Newton line search.
//! Every evaluated point inside `|z| <= r_max` contributes to the maximum,
//! so the reported value is a lower bound for the true supremum that never
//! decreases when more refinement passes are allowed.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridConfig;
use crate::robertson::Distortion;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult<T> {
    pub value: T,
    pub argmax: Complex<T>,
    /// The maximizer sits in the outermost radial cell.
    pub boundary_attained: bool,
    /// The scan radius was capped below `cfg.r_max` (series-backed input).
    pub truncation_limited: bool,
    /// Outer radius actually scanned.
    pub r_max: T,
    pub evaluations: usize,
}

fn weighted<T: Real, F>(f: &F, k: i32, z: Complex<T>) -> Result<T>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let wrap = |source: Error| Error::EvaluationFailure {
        re: z.re.as_f64(),
        im: z.im.as_f64(),
        source: Box::new(source),
    };
    let v = f(z).map_err(wrap)?;
    let m = v.norm();
    if !m.is_finite() {
        return Err(wrap(Error::BadParameter(format!("non-finite value {v}"))));
    }
    Ok((T::one() - z.norm_sqr()).powi(k) * m)
}

#[derive(Debug, Clone, Copy)]
struct Best<T> {
    value: T,
    z: Complex<T>,
}

/// Golden-section search for a maximum of `eval` on `[a, b]`, endpoints
/// included. Returns the best abscissa and value seen and the number of
/// evaluations.
fn golden_max<T: Real>(
    a: T,
    b: T,
    tol: T,
    mut eval: impl FnMut(T) -> Result<T>,
) -> Result<(T, T, usize)> {
    let g = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = (a, b);
    let mut best = (a, eval(a)?);
    let mut count = 1;
    let note = |x: T, f: T, best: &mut (T, T)| {
        if f > best.1 {
            *best = (x, f);
        }
    };
    let fb = eval(b)?;
    note(b, fb, &mut best);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    count += 3;
    note(x1, f1, &mut best);
    note(x2, f2, &mut best);
    for _ in 0..MAX_GOLDEN_STEPS {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = eval(x2)?;
            note(x2, f2, &mut best);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = eval(x1)?;
            note(x1, f1, &mut best);
        }
        count += 1;
    }
    Ok((best.0, best.1, count))
}

/// Golden-section steps per line search; shrinks a unit bracket below 1e-16.
const MAX_GOLDEN_STEPS: usize = 80;

/// Number of coarse local maxima, in the disk and on the outer ring, that
/// seed the refinement.
pub const REFINE_STARTS: usize = 8;

/// Indices of the largest local maxima (non-strict) of the polar scan over
/// the 8-neighbourhood, periodic in angle; best first, ties by grid order.
fn seeds<T: Real>(values: &[T], n_radii: usize, n_ang: usize) -> Vec<usize> {
    let at = |i: usize, j: usize| values[i * n_ang + j % n_ang];
    // the first ring is the origin, a single point
    let mut peaks: Vec<usize> = std::iter::once(0)
        .chain(n_ang..values.len())
        .filter(|&idx| {
            let (i, j) = (idx / n_ang, idx % n_ang);
            let v = values[idx];
            (i.saturating_sub(1)..=(i + 1).min(n_radii - 1))
                .all(|ii| [j + n_ang - 1, j, j + 1].iter().all(|&jj| at(ii, jj) <= v))
        })
        .collect();
    let by_value =
        |a: &usize, b: &usize| values[*b].partial_cmp(&values[*a]).unwrap().then(a.cmp(b));
    peaks.sort_by(by_value);
    peaks.truncate(REFINE_STARTS);
    // Suprema are often approached only as |z| -> 1 along peaks narrower
    // than the angular spacing; seed from the outer ring as well.
    let outer = (n_radii - 1) * n_ang;
    let mut rim: Vec<usize> = (0..n_ang)
        .filter(|&j| {
            at(n_radii - 1, j + n_ang - 1) <= at(n_radii - 1, j)
                && at(n_radii - 1, j + 1) <= at(n_radii - 1, j)
        })
        .map(|j| outer + j)
        .filter(|idx| !peaks.contains(idx))
        .collect();
    rim.sort_by(by_value);
    rim.truncate(REFINE_STARTS);
    peaks.extend(rim);
    peaks
}

/// `sup (1 - |z|²)^k |F(z)|` over `|z| <= cfg.r_max`.
///
/// The coarse scan runs in parallel; the reduction is sequential in grid order
/// so the result is identical to a sequential run. Refinement then runs
/// alternating line searches from the best few local maxima of the scan.
pub fn weighted_sup<T, F>(f: F, weight_power: u32, cfg: &GridConfig<T>) -> Result<NormResult<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    cfg.validate()?;
    if !(1..=2).contains(&weight_power) {
        return Err(Error::BadParameter(format!(
            "weight power {weight_power} must be 1 or 2"
        )));
    }
    let k = weight_power as i32;
    let radii = cfg.radii();
    let angles = cfg.angles();
    let points = cfg.points();
    let values = points
        .par_iter()
        .map(|&z| weighted(&f, k, z))
        .collect::<Result<Vec<T>>>()?;
    let mut evaluations = values.len();

    let mut best = Best {
        value: T::neg_infinity(),
        z: Complex::new(T::zero(), T::zero()),
    };
    for (idx, &v) in values.iter().enumerate() {
        if v > best.value {
            best = Best {
                value: v,
                z: points[idx],
            };
        }
    }

    if cfg.refine_iters > 0 {
        for idx in seeds(&values, radii.len(), angles.len()) {
            let (found, n) = refine(&f, k, cfg, &radii, &angles, idx, values[idx])?;
            evaluations += n;
            if found.value > best.value {
                best = found;
            }
        }
    }

    let boundary_attained = best.z.norm() >= radii[radii.len() - 2];
    Ok(NormResult {
        value: best.value,
        argmax: best.z,
        boundary_attained,
        truncation_limited: false,
        r_max: cfg.r_max,
        evaluations,
    })
}

/// Alternating line searches from grid point `idx`: radial at the current
/// best angle, then angular at the current best radius. A bracket whose
/// optimum lands on its edge doubles for the next pass. Each pass depends
/// only on the state left by the previous one, so more passes never lower
/// the value.
fn refine<T, F>(
    f: &F,
    k: i32,
    cfg: &GridConfig<T>,
    radii: &[T],
    angles: &[T],
    idx: usize,
    value: T,
) -> Result<(Best<T>, usize)>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let n_ang = angles.len();
    let ir = idx / n_ang;
    let mut r = radii[ir];
    let mut t = angles[idx % n_ang];
    let mut best = Best {
        value,
        z: Complex::from_polar(r, t),
    };
    let mut hr = (radii[(ir + 1).min(radii.len() - 1)] - r).max(r - radii[ir.saturating_sub(1)]);
    let mut ht = T::TAU() / T::count(n_ang);
    let two = T::lit(2.0);
    let tol = cfg.refine_tol;
    let mut evaluations = 0;
    for _ in 0..cfg.refine_iters {
        let before = best.value;

        let (lo, hi) = ((r - hr).max(T::zero()), (r + hr).min(cfg.r_max));
        let (x, v, n) = golden_max(lo, hi, tol, |x| weighted(f, k, Complex::from_polar(x, t)))?;
        evaluations += n;
        if v > best.value {
            best = Best {
                value: v,
                z: Complex::from_polar(x, t),
            };
            r = x;
            if (x - lo <= tol && lo > T::zero()) || (hi - x <= tol && hi < cfg.r_max) {
                hr = hr * two;
            }
        }

        let (lo, hi) = (t - ht, t + ht);
        let (x, v, n) = golden_max(lo, hi, tol, |x| weighted(f, k, Complex::from_polar(r, x)))?;
        evaluations += n;
        if v > best.value {
            best = Best {
                value: v,
                z: Complex::from_polar(r, x),
            };
            t = x;
            if x - lo <= tol || hi - x <= tol {
                ht = (ht * two).min(T::PI());
            }
        }

        let (z, v, n) = newton_search(f, k, best.z, hr, cfg.r_max, tol)?;
        evaluations += n;
        if v > best.value {
            best = Best { value: v, z };
            r = z.norm();
            t = if r > T::zero() { z.arg() } else { t };
        }

        if !(best.value > before) {
            break;
        }
    }
    Ok((best, evaluations))
}

/// Line search from `z` along a finite-difference Newton direction of the
/// weighted modulus in Cartesian coordinates, or along the gradient when
/// the Hessian is not negative definite. Gradient steps are limited to
/// `reach`; the search never leaves `|z| <= r_max`.
fn newton_search<T, F>(
    f: &F,
    k: i32,
    z: Complex<T>,
    reach: T,
    r_max: T,
    tol: T,
) -> Result<(Complex<T>, T, usize)>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let one = T::one();
    let two = T::lit(2.0);
    // stencil stays inside the unit disk
    let h = T::lit(NEWTON_STEP) * (one - z.norm()).min(one).max(T::epsilon());
    let w = |dx: T, dy: T| weighted(f, k, z + Complex::new(dx, dy));
    let c = w(T::zero(), T::zero())?;
    let (xp, xm, yp, ym) = (
        w(h, T::zero())?,
        w(-h, T::zero())?,
        w(T::zero(), h)?,
        w(T::zero(), -h)?,
    );
    let (pp, pm, mp, mm) = (w(h, h)?, w(h, -h)?, w(-h, h)?, w(-h, -h)?);
    let mut count = 9;
    let (gx, gy) = ((xp - xm) / (two * h), (yp - ym) / (two * h));
    let hxx = (xp - two * c + xm) / (h * h);
    let hyy = (yp - two * c + ym) / (h * h);
    let hxy = (pp - pm - mp + mm) / (T::lit(4.0) * h * h);
    let det = hxx * hyy - hxy * hxy;
    let (dx, dy, s_max) = if hxx < T::zero() && det > T::zero() {
        // -H^{-1} g
        (
            (hxy * gy - hyy * gx) / det,
            (hxy * gx - hxx * gy) / det,
            two,
        )
    } else {
        let g = gx.hypot(gy);
        (gx, gy, if g > T::zero() { reach / g } else { T::zero() })
    };
    let d = Complex::new(dx, dy);
    if !(d.norm() > T::zero()) || !(s_max > T::zero()) || !d.norm().is_finite() {
        return Ok((z, T::neg_infinity(), count));
    }
    // largest s with |z + s d| <= r_max
    let (a, b, cc) = (
        d.norm_sqr(),
        two * (z.re * d.re + z.im * d.im),
        z.norm_sqr() - r_max * r_max,
    );
    let disc = (b * b - T::lit(4.0) * a * cc).max(T::zero());
    let s_hi = s_max.min(((disc.sqrt() - b) / (two * a)).max(T::zero()));
    if !(s_hi > T::zero()) {
        return Ok((z, T::neg_infinity(), count));
    }
    let along = |s: T| {
        let p = z + d * s;
        // guard against rounding past r_max
        let m = p.norm();
        if m > r_max {
            p * (r_max / m)
        } else {
            p
        }
    };
    let (s, v, n) = golden_max(T::zero(), s_hi, tol * s_hi.max(one), |s| {
        weighted(f, k, along(s))
    })?;
    count += n;
    Ok((along(s), v, count))
}

/// Finite-difference step for [`newton_search`], relative to `1 - |z|`.
const NEWTON_STEP: f64 = 1e-3;

fn capped<D: Distortion>(f: &D, cfg: &GridConfig<D::Scalar>) -> (GridConfig<D::Scalar>, bool) {
    match f.truncation_radius() {
        Some(cap) if cap < cfg.r_max => (cfg.with_r_max(cap), true),
        _ => (*cfg, false),
    }
}

/// `sup (1 - |z|²) |P_f(z)|`.
pub fn norm_pre_schwarzian<D>(f: &D, cfg: &GridConfig<D::Scalar>) -> Result<NormResult<D::Scalar>>
where
    D: Distortion + Sync,
{
    let (cfg, limited) = capped(f, cfg);
    let mut res = weighted_sup(|z| f.pre_schwarzian(z), 1, &cfg)?;
    res.truncation_limited = limited;
    Ok(res)
}

/// `sup (1 - |z|²)² |S_f(z)|`.
pub fn norm_schwarzian<D>(f: &D, cfg: &GridConfig<D::Scalar>) -> Result<NormResult<D::Scalar>>
where
    D: Distortion + Sync,
{
    let (cfg, limited) = capped(f, cfg);
    let mut res = weighted_sup(|z| f.schwarzian(z), 2, &cfg)?;
    res.truncation_limited = limited;
    Ok(res)
}
