//! Analytic maps on the unit disk: the [`DiskFunction`] abstraction, Schwarz
//! functions (rotations and Blaschke products fixing the origin) and their
//! certification.

use std::ops::Mul;

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::grid::GridConfig;
use crate::scalar::{cis, re, Real};
use crate::series::TaylorSeries;

/// Value and first three derivatives of an analytic function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: Complex<T>,
    pub d1: Complex<T>,
    pub d2: Complex<T>,
    pub d3: Complex<T>,
}

impl<T: Real> Jet<T> {
    pub fn new(value: Complex<T>, d1: Complex<T>, d2: Complex<T>, d3: Complex<T>) -> Self {
        Self { value, d1, d2, d3 }
    }

    pub fn constant(c: Complex<T>) -> Self {
        let zero = Complex::zero();
        Self::new(c, zero, zero, zero)
    }

    /// Jet of the identity map at `z`.
    pub fn variable(z: Complex<T>) -> Self {
        let zero = Complex::zero();
        Self::new(z, Complex::one(), zero, zero)
    }

    pub fn as_array(&self) -> [Complex<T>; 4] {
        [self.value, self.d1, self.d2, self.d3]
    }
}

impl<T: Real> From<[Complex<T>; 4]> for Jet<T> {
    fn from(a: [Complex<T>; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

/// Leibniz rule.
impl<T: Real> Mul for Jet<T> {
    type Output = Self;
    fn mul(self, g: Self) -> Self {
        let f = self;
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        Self {
            value: f.value * g.value,
            d1: f.d1 * g.value + f.value * g.d1,
            d2: f.d2 * g.value + f.d1 * g.d1 * two + f.value * g.d2,
            d3: f.d3 * g.value + (f.d2 * g.d1 + f.d1 * g.d2) * three + f.value * g.d3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    ClosedForm,
    SeriesBacked,
}

/// An analytic map on the open unit disk that can report its third-order jet.
pub trait DiskFunction {
    type Scalar: Real;

    fn kind(&self) -> FunctionKind;

    /// Jet at `z` without a domain check.
    fn jet_unchecked(&self, z: Complex<Self::Scalar>) -> Jet<Self::Scalar>;

    /// Jet at `z`; fails with [`Error::OutsideDisk`] when `|z| >= 1`.
    fn jet(&self, z: Complex<Self::Scalar>) -> Result<Jet<Self::Scalar>> {
        check_in_disk(z)?;
        Ok(self.jet_unchecked(z))
    }

    fn eval(&self, z: Complex<Self::Scalar>) -> Complex<Self::Scalar> {
        self.jet_unchecked(z).value
    }

    /// Radius beyond which the jet is not trustworthy, if any.
    fn truncation_radius(&self) -> Option<Self::Scalar> {
        None
    }
}

pub(crate) fn check_in_disk<T: Real>(z: Complex<T>) -> Result<()> {
    let r = z.norm();
    if r < T::one() {
        Ok(())
    } else {
        Err(Error::OutsideDisk(r.as_f64()))
    }
}

/// The identity map `z ↦ z`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Identity<T>(std::marker::PhantomData<T>);

impl<T: Real> Identity<T> {
    pub fn new() -> Self {
        Self(std::marker::PhantomData)
    }
}

impl<T: Real> DiskFunction for Identity<T> {
    type Scalar = T;
    fn kind(&self) -> FunctionKind {
        FunctionKind::ClosedForm
    }
    fn jet_unchecked(&self, z: Complex<T>) -> Jet<T> {
        Jet::variable(z)
    }
}

impl<T: Real> DiskFunction for TaylorSeries<T> {
    type Scalar = T;
    fn kind(&self) -> FunctionKind {
        FunctionKind::SeriesBacked
    }
    fn jet_unchecked(&self, z: Complex<T>) -> Jet<T> {
        self.eval_jet(z).into()
    }

    fn truncation_radius(&self) -> Option<T> {
        Some(series_radius_cap(self.order()))
    }
}

/// Outermost radius at which a series-backed jet is sampled.
pub const SERIES_RADIUS_CAP: f64 = 0.9;

/// Tail budget `N³ r^N` for the third derivative of a unit-scale series.
const SERIES_TAIL_BUDGET: f64 = 1e-8;

/// Largest `r <= 0.9` with `N³ r^N <= 1e-8`: about 0.773 at `N = 128`,
/// reaching 0.9 from `N ≈ 420` on.
pub fn series_radius_cap<T: Real>(order: usize) -> T {
    let n = order.max(1) as f64;
    let r = ((SERIES_TAIL_BUDGET.ln() - 3.0 * n.ln()) / n).exp();
    T::lit(r.min(SERIES_RADIUS_CAP))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchwarzFamily<T> {
    /// `ω(z) = e^{iθ} z`.
    Rotation { theta: T },
    /// `ω(z) = p z (z - b) / (1 - b z)` with `p = ±1`, real `b ∈ (-1, 1)`.
    Blaschke2 { p: T, b: T },
    /// `ω(z) = e^{iθ} z ∏ (z - a_j) / (1 - conj(a_j) z)`.
    BlaschkeFix0 { theta: T, zeros: Vec<Complex<T>> },
}

/// A Schwarz function `ω` together with its quotient `q(z) = ω(z) / z`.
///
/// Every family carries `q` in factored closed form, so quantities that
/// divide by `z` never see the removable singularity at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzFunction<T> {
    family: SchwarzFamily<T>,
}

/// `(z - a) / (1 - conj(a) z)` and its first three derivatives.
fn blaschke_factor_jet<T: Real>(a: Complex<T>, z: Complex<T>) -> Jet<T> {
    let ac = a.conj();
    let m = T::one() - a.norm_sqr();
    let den = Complex::<T>::one() - ac * z;
    let inv = den.inv();
    let d1 = inv * inv * m;
    let d2 = d1 * inv * ac * T::lit(2.0);
    let d3 = d2 * inv * ac * T::lit(3.0);
    Jet::new((z - a) * inv, d1, d2, d3)
}

/// Taylor coefficients of `(z - a) / (1 - conj(a) z)`.
fn blaschke_factor_series<T: Real>(a: Complex<T>, order: usize) -> TaylorSeries<T> {
    let ac = a.conj();
    let m = T::one() - a.norm_sqr();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(-a);
    let mut pow = Complex::<T>::one();
    for _ in 1..=order {
        coeffs.push(pow * m);
        pow = pow * ac;
    }
    TaylorSeries::from_coeffs(coeffs)
}

impl<T: Real> SchwarzFunction<T> {
    /// `ω(z) = e^{iθ} z`.
    pub fn rotation(theta: T) -> Self {
        Self {
            family: SchwarzFamily::Rotation { theta },
        }
    }

    pub fn identity() -> Self {
        Self::rotation(T::zero())
    }

    /// `φ(z) = p z (z - b) / (1 - b z)`.
    pub fn blaschke2(p: T, b: T) -> Result<Self> {
        if p != T::one() && p != -T::one() {
            return Err(Error::BadParameter(format!("p = {p} must be +1 or -1")));
        }
        if !(b.abs() < T::one()) {
            return Err(Error::BadParameter(format!(
                "|b| = {} must be < 1",
                b.abs()
            )));
        }
        Ok(Self {
            family: SchwarzFamily::Blaschke2 { p, b },
        })
    }

    /// Finite Blaschke product fixing the origin, with extra zeros `zeros`.
    pub fn blaschke_fix0(theta: T, zeros: Vec<Complex<T>>) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < T::one())) {
            return Err(Error::BadParameter(format!(
                "Blaschke zero {a} lies outside the open unit disk"
            )));
        }
        Ok(Self {
            family: SchwarzFamily::BlaschkeFix0 { theta, zeros },
        })
    }

    pub fn family(&self) -> &SchwarzFamily<T> {
        &self.family
    }

    /// Number of zeros in the disk, counted with multiplicity.
    pub fn degree(&self) -> usize {
        match &self.family {
            SchwarzFamily::Rotation { .. } => 1,
            SchwarzFamily::Blaschke2 { .. } => 2,
            SchwarzFamily::BlaschkeFix0 { zeros, .. } => 1 + zeros.len(),
        }
    }

    /// Jet of `q(z) = ω(z) / z`.
    pub fn quotient_jet(&self, z: Complex<T>) -> Jet<T> {
        match &self.family {
            SchwarzFamily::Rotation { theta } => Jet::constant(cis(*theta)),
            SchwarzFamily::Blaschke2 { p, b } => {
                let f = blaschke_factor_jet(re(*b), z);
                Jet::new(f.value * *p, f.d1 * *p, f.d2 * *p, f.d3 * *p)
            }
            SchwarzFamily::BlaschkeFix0 { theta, zeros } => {
                zeros.iter().fold(Jet::constant(cis(*theta)), |acc, &a| {
                    acc * blaschke_factor_jet(a, z)
                })
            }
        }
    }

    pub fn quotient(&self, z: Complex<T>) -> Complex<T> {
        self.quotient_jet(z).value
    }

    /// Taylor series of `q` to the given order.
    pub fn quotient_series(&self, order: usize) -> TaylorSeries<T> {
        match &self.family {
            SchwarzFamily::Rotation { theta } => TaylorSeries::constant(cis(*theta), order),
            SchwarzFamily::Blaschke2 { p, b } => {
                blaschke_factor_series(re(*b), order).scale(re(*p))
            }
            SchwarzFamily::BlaschkeFix0 { theta, zeros } => zeros
                .iter()
                .fold(TaylorSeries::constant(cis(*theta), order), |acc, &a| {
                    acc.product(&blaschke_factor_series(a, order))
                }),
        }
    }

    /// Taylor series of `ω` to the given order.
    pub fn series(&self, order: usize) -> TaylorSeries<T> {
        self.quotient_series(order).shift_up()
    }
}

impl<T: Real> DiskFunction for SchwarzFunction<T> {
    type Scalar = T;
    fn kind(&self) -> FunctionKind {
        FunctionKind::ClosedForm
    }
    fn jet_unchecked(&self, z: Complex<T>) -> Jet<T> {
        Jet::variable(z) * self.quotient_jet(z)
    }
}

/// Grid diagnostics for membership of a map in the Schwarz class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertReport<T> {
    /// `max (|ω(z)| - |z|)` over the grid (Schwarz lemma defect).
    pub max_modulus_excess: T,
    /// `|ω(0)|`.
    pub origin_defect: T,
    /// `max(0, |ω'(z)|(1 - |z|²) - (1 - |ω(z)|²))` over the grid.
    pub max_pick_defect: T,
    pub points: usize,
}

impl<T: Real> CertReport<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.max_modulus_excess <= tol && self.origin_defect <= tol && self.max_pick_defect <= tol
    }
}

/// Checks `ω(0) = 0`, `|ω(z)| <= |z|` and the Schwarz–Pick inequality on the
/// grid. Violations are reported, not raised.
pub fn schwarz_certify<F: DiskFunction>(
    omega: &F,
    grid: &GridConfig<F::Scalar>,
) -> CertReport<F::Scalar> {
    let zero = F::Scalar::zero();
    let one = F::Scalar::one();
    let points = grid.points();
    let mut report = CertReport {
        max_modulus_excess: F::Scalar::neg_infinity(),
        origin_defect: omega.eval(Complex::zero()).norm(),
        max_pick_defect: zero,
        points: points.len(),
    };
    for z in points {
        let jet = omega.jet_unchecked(z);
        let r2 = z.norm_sqr();
        let w = jet.value.norm();
        report.max_modulus_excess = report.max_modulus_excess.max(w - z.norm());
        let pick = jet.d1.norm() * (one - r2) - (one - w * w);
        report.max_pick_defect = report.max_pick_defect.max(pick.max(zero));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    fn sample_points() -> Vec<C> {
        let mut pts = Vec::new();
        for i in 1..=9 {
            for j in 0..12 {
                pts.push(C::from_polar(
                    0.1 * i as f64,
                    2.0 * PI * j as f64 / 12.0 + 0.1,
                ));
            }
        }
        pts
    }

    /// Central difference of each jet component at step 1e-5, predicting the next one.
    fn fd_jet<F: DiskFunction<Scalar = f64>>(f: &F, z: C) -> [C; 3] {
        let h = 1e-5;
        let lo = f.jet(z - c(h, 0.0)).unwrap().as_array();
        let hi = f.jet(z + c(h, 0.0)).unwrap().as_array();
        [0, 1, 2].map(|k| (hi[k] - lo[k]) / (2.0 * h))
    }

    #[test]
    fn rotation_values() {
        let id = SchwarzFunction::<f64>::rotation(0.0);
        assert_eq!(id.eval(c(0.5, 0.0)), c(0.5, 0.0));
        let flip = SchwarzFunction::<f64>::rotation(PI);
        assert!(close(flip.eval(c(0.5, 0.0)), c(-0.5, 0.0), 1e-15));
        let rot = SchwarzFunction::<f64>::rotation(1.234);
        for z in sample_points() {
            assert!((rot.eval(z).norm() - z.norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn blaschke2_values() {
        let b = SchwarzFunction::<f64>::blaschke2(-1.0, 0.0).unwrap();
        assert_eq!(b.eval(c(0.5, 0.0)), c(-0.25, 0.0));
        let b = SchwarzFunction::<f64>::blaschke2(1.0, 0.5).unwrap();
        assert_eq!(b.eval(c(0.5, 0.0)), c(0.0, 0.0));
        assert_eq!(b.quotient(c(0.5, 0.0)), c(0.0, 0.0));
        let b = SchwarzFunction::<f64>::blaschke2(-1.0, 0.8).unwrap();
        for j in 0..64 {
            let z = C::from_polar(0.999, 2.0 * PI * j as f64 / 64.0);
            // |φ| = 0.999 · |Möbius factor| and the factor is within 1e-3 of unimodular
            let w = b.eval(z).norm();
            assert!(w < 0.999 && w > 0.999 - 0.02, "{w}");
        }
    }

    #[test]
    fn blaschke2_rejects_bad_parameters() {
        assert!(SchwarzFunction::<f64>::blaschke2(-1.0, 1.0).is_err());
        assert!(SchwarzFunction::<f64>::blaschke2(0.5, 0.1).is_err());
        assert!(SchwarzFunction::<f64>::blaschke_fix0(0.0, vec![c(0.8, 0.7)]).is_err());
    }

    #[test]
    fn jet_examples() {
        let z = c(0.3, -0.2);
        let j = Identity::<f64>::new().jet(z).unwrap();
        assert_eq!(j.as_array(), [z, c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let j = SchwarzFunction::<f64>::blaschke2(-1.0, 0.0)
            .unwrap()
            .jet(c(0.5, 0.0))
            .unwrap();
        let expected = [c(-0.25, 0.0), c(-1.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)];
        for (a, b) in j.as_array().iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }

        let geo = TaylorSeries::<f64>::geometric(128);
        let z = c(0.3, 0.0);
        let j = geo.jet(z).unwrap();
        let w = (c(1.0, 0.0) - z).inv();
        let expected = [w, w * w, w * w * w * 2.0, w * w * w * w * 6.0];
        for (a, b) in j.as_array().iter().zip(expected) {
            assert!(close(*a, b, 1e-12));
        }
    }

    #[test]
    fn jet_outside_disk_fails() {
        let id = Identity::<f64>::new();
        assert!(matches!(id.jet(c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
        assert!(matches!(id.jet(c(0.8, 0.7)), Err(Error::OutsideDisk(_))));
    }

    fn families() -> Vec<SchwarzFunction<f64>> {
        vec![
            SchwarzFunction::rotation(0.7),
            SchwarzFunction::blaschke2(-1.0, 0.6).unwrap(),
            SchwarzFunction::blaschke2(1.0, -0.3).unwrap(),
            SchwarzFunction::blaschke_fix0(0.4, vec![c(0.3, 0.5), c(-0.6, 0.1)]).unwrap(),
        ]
    }

    #[test]
    fn closed_form_jets_match_finite_differences() {
        for w in families() {
            for z in sample_points() {
                let jet = w.jet(z).unwrap();
                let fd = fd_jet(&w, z);
                for (k, (exact, approx)) in [jet.d1, jet.d2, jet.d3].iter().zip(fd).enumerate() {
                    let err = (exact - approx).norm() / exact.norm().max(1.0);
                    assert!(
                        err <= 1e-6,
                        "{:?} at {z}: order {} err {err}",
                        w.family(),
                        k + 1
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_is_structural() {
        for w in families() {
            for z in sample_points() {
                assert!(close(z * w.quotient(z), w.eval(z), 1e-15));
            }
            let j0 = w.jet(c(0.0, 0.0)).unwrap();
            assert!(close(w.quotient(c(0.0, 0.0)), j0.d1, 1e-15));
            assert!(w.quotient(c(0.0, 0.0)).norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn series_matches_closed_form() {
        for w in families() {
            let s = w.series(128);
            for z in sample_points().into_iter().filter(|z| z.norm() <= 0.7) {
                let a = s.jet(z).unwrap();
                let b = w.jet(z).unwrap();
                for (x, y) in a.as_array().iter().zip(b.as_array()) {
                    assert!(close(*x, y, 1e-10));
                }
            }
        }
    }

    /// Winding number of ω around 0 along the circle |z - center| = radius.
    fn zero_count(w: &SchwarzFunction<f64>, center: C, radius: f64) -> i64 {
        let n = 2000;
        let mut total = 0.0;
        let mut prev = w.eval(center + C::from_polar(radius, 0.0)).arg();
        for k in 1..=n {
            let z = center + C::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
            let a = w.eval(z).arg();
            let mut d = a - prev;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            total += d;
            prev = a;
        }
        (total / (2.0 * PI)).round() as i64
    }

    #[test]
    fn blaschke2_zero_set_is_origin_and_b() {
        for (p, b) in [(-1.0, 0.3), (1.0, -0.55), (-1.0, 0.8)] {
            let w = SchwarzFunction::<f64>::blaschke2(p, b).unwrap();
            assert_eq!(zero_count(&w, c(0.0, 0.0), 0.99), 2);
            assert_eq!(zero_count(&w, c(0.0, 0.0), 0.05), 1);
            assert_eq!(zero_count(&w, c(b, 0.0), 0.05), 1);
        }
    }

    #[test]
    fn certify_examples() {
        let grid = GridConfig::default();
        let rep = schwarz_certify(&SchwarzFunction::<f64>::rotation(2.0), &grid);
        assert!(rep.passes(1e-15), "{rep:?}");
        let rep = schwarz_certify(
            &SchwarzFunction::<f64>::blaschke2(-1.0, 0.5).unwrap(),
            &grid,
        );
        assert!(rep.passes(1e-12), "{rep:?}");
        // z ↦ z + 0.5 is not a Schwarz function
        let shifted = TaylorSeries::<f64>::from_real(&[0.5, 1.0]);
        let rep = schwarz_certify(&shifted, &grid);
        assert_eq!(rep.origin_defect, 0.5);
        assert!(!rep.passes(1e-12));
    }

    #[test]
    fn leibniz_product_matches_series_product() {
        let a = TaylorSeries::<f64>::from_coeffs(vec![
            c(0.1, 0.2),
            c(1.0, 0.0),
            c(0.3, -0.4),
            c(0.2, 0.2),
        ]);
        let b = TaylorSeries::<f64>::from_coeffs(vec![
            c(-0.5, 0.0),
            c(0.0, 1.0),
            c(0.7, 0.1),
            c(0.0, 0.0),
        ]);
        let a6 = a.truncate(6);
        let b6 = b.truncate(6);
        let z = c(0.2, 0.3);
        let prod: Jet<f64> = a.jet(z).unwrap() * b.jet(z).unwrap();
        let direct = a6.product(&b6).jet(z).unwrap();
        for (x, y) in prod.as_array().iter().zip(direct.as_array()) {
            assert!(close(*x, y, 1e-14));
        }
    }
}
