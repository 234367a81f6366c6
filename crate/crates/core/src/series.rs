//! Truncated complex Taylor series about the origin.
//!
//! A [`TaylorSeries`] of order `N` stores the `N + 1` coefficients of
//! `z^0 ..= z^N`. Binary operations truncate to the smaller operand order, so
//! callers that need headroom must allocate a larger order up front.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

/// Truncation order used when none is specified.
pub const DEFAULT_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> TaylorSeries<T> {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// An empty vector is treated as the zero series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Self { coeffs }
    }

    /// Real coefficients, convenient in tests and for real-valued families.
    pub fn from_real(coeffs: &[T]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| re(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex::zero(); order + 1],
        }
    }

    pub fn constant(c: Complex<T>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(re(T::one()), order)
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(re(T::one()), 1, order)
    }

    /// `c z^k`, or the zero series when `k > order`.
    pub fn monomial(c: Complex<T>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - z)`: all coefficients equal to one.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![re(T::one()); order + 1],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, n: usize) -> Complex<T> {
        self.coeffs.get(n).copied().unwrap_or_else(Complex::zero)
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Drops (or zero-pads) coefficients so that the order becomes `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex::zero());
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Multiplies by `z`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(Complex::zero());
        coeffs.extend_from_slice(&self.coeffs[..n]);
        Self { coeffs }
    }

    /// Divides by `z`, discarding the constant term; the order drops by one.
    pub fn shift_down(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn product(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex::zero(); n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `c` with `c * other = self` up to the smaller order.
    pub fn quotient(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0];
        if b0.norm_sqr().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(other.order());
        let inv = b0.inv();
        let mut out: Vec<Complex<T>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * out[k - j];
            }
            out.push(acc * inv);
        }
        Ok(Self { coeffs: out })
    }

    /// Coefficients of `self ∘ inner` by Horner's rule in series arithmetic.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if !c0.is_zero() {
            return Err(Error::NonvanishingInner(c0.norm().as_f64()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.product(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Term-wise derivative; the order drops by one (order 0 stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * T::count(k))
            .collect();
        Self { coeffs }
    }

    /// Antiderivative vanishing at the origin. The top coefficient
    /// `a_N / (N + 1)` is exact, so the order rises by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &a)| a / T::count(k + 1)),
        );
        Self { coeffs }
    }

    /// `exp(self)` from the recurrence `n e_n = Σ_{k=1}^{n} k a_k e_{n-k}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].exp());
        for m in 1..=n {
            let mut acc = Complex::zero();
            for k in 1..=m {
                acc += self.coeffs[k] * T::count(k) * out[m - k];
            }
            out.push(acc / T::count(m));
        }
        Self { coeffs: out }
    }

    /// Horner evaluation of the truncated polynomial. No truncation-error
    /// guarantee is made.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &a| acc * z + a)
    }

    /// Value and first three derivatives of the truncated polynomial at `z`.
    pub fn eval_jet(&self, z: Complex<T>) -> [Complex<T>; 4] {
        let zero = Complex::zero();
        let (mut p0, mut p1, mut p2, mut p3) = (zero, zero, zero, zero);
        for &a in self.coeffs.iter().rev() {
            p3 = p3 * z + p2;
            p2 = p2 * z + p1;
            p1 = p1 * z + p0;
            p0 = p0 * z + a;
        }
        let two = T::lit(2.0);
        let six = T::lit(6.0);
        [p0, p1, p2 * two, p3 * six]
    }

    /// Largest coefficient modulus difference over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| (self.coeffs[k] - other.coeffs[k]).norm())
            .fold(T::zero(), T::max)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| f(self.coeffs[k], other.coeffs[k]))
            .collect();
        Self { coeffs }
    }
}

impl<T: Real> Add for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn add(self, rhs: Self) -> TaylorSeries<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn sub(self, rhs: Self) -> TaylorSeries<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Real> Mul for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn mul(self, rhs: Self) -> TaylorSeries<T> {
        self.product(rhs)
    }
}

impl<T: Real> Neg for &TaylorSeries<T> {
    type Output = TaylorSeries<T>;
    fn neg(self) -> TaylorSeries<T> {
        TaylorSeries {
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TaylorSeries<f64>;
    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    /// log(a) for a0 != 0, built independently as log(a0) + ∫ a'/a.
    fn log_oracle(a: &S) -> S {
        let a0 = a.coeff(0);
        let ratio = a.derivative().quotient(&a.truncate(a.order() - 1)).unwrap();
        let mut l = ratio.integral();
        l.coeffs[0] = a0.ln();
        l
    }

    #[test]
    fn product_telescopes() {
        let a = S::from_real(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let b = S::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(a.product(&b), S::from_real(&[1.0, 0.0, -1.0, 0.0, 0.0]));
    }

    #[test]
    fn product_with_one_is_identity() {
        let s = S::from_coeffs(vec![c(0.1, 0.2), c(-1.0, 3.0), c(0.5, 0.0)]);
        assert_eq!(s.product(&S::one(2)), s);
    }

    #[test]
    fn geometric_times_one_minus_z() {
        let n = 40;
        let mut one_minus_z = S::one(n);
        one_minus_z.coeffs[1] = c(-1.0, 0.0);
        let p = S::geometric(n).product(&one_minus_z);
        assert_eq!(p.coeff(0), c(1.0, 0.0));
        assert!(p.coeffs()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = S::geometric(10);
        let b = S::geometric(4);
        assert_eq!(a.product(&b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
    }

    #[test]
    fn quotient_cases() {
        let n = 12;
        let mut one_minus_z = S::one(n);
        one_minus_z.coeffs[1] = c(-1.0, 0.0);
        let geo = S::one(n).quotient(&one_minus_z).unwrap();
        assert!(geo.coeffs().iter().all(|&a| close(a, c(1.0, 0.0), 1e-15)));

        let a = S::from_coeffs(vec![c(2.0, 1.0), c(0.3, -0.7), c(1.0, 0.0)]);
        let one = a.quotient(&a).unwrap();
        assert!(one.max_abs_diff(&S::one(2)) < 1e-15);

        // (2/(1-z)) / (1/(1-z)^2) = 2(1-z)
        let two_geo = S::geometric(n).scale(c(2.0, 0.0));
        let geo_sq = S::geometric(n).product(&S::geometric(n));
        let q = two_geo.quotient(&geo_sq).unwrap();
        let mut expected = S::zero(n);
        expected.coeffs[0] = c(2.0, 0.0);
        expected.coeffs[1] = c(-2.0, 0.0);
        assert!(q.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn quotient_by_zero_constant_fails() {
        let b = S::identity(4);
        assert_eq!(S::one(4).quotient(&b), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn compose_cases() {
        let n = 10;
        let z2 = S::monomial(c(1.0, 0.0), 2, n);
        let g = S::geometric(n).compose(&z2).unwrap();
        for k in 0..=n {
            let expected = if k % 2 == 0 { 1.0 } else { 0.0 };
            assert_eq!(g.coeff(k), c(expected, 0.0));
        }

        let outer = S::from_coeffs(vec![c(0.3, 0.1), c(-1.0, 2.0), c(0.5, 0.5), c(4.0, 0.0)]);
        assert_eq!(outer.compose(&S::identity(3)).unwrap(), outer);

        // (w + w^2) ∘ (z + z^2) = z + 2z^2 + 2z^3 + z^4
        let w = S::from_real(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        let expected = S::from_real(&[0.0, 1.0, 2.0, 2.0, 1.0, 0.0]);
        assert!(w.compose(&w).unwrap().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn compose_rejects_nonvanishing_inner() {
        let inner = S::from_real(&[0.5, 1.0]);
        assert!(matches!(
            S::geometric(1).compose(&inner),
            Err(Error::NonvanishingInner(_))
        ));
    }

    #[test]
    fn derivative_and_integral() {
        let a = S::from_real(&[0.0, 1.0, 1.0]);
        assert_eq!(a.derivative(), S::from_real(&[1.0, 2.0]));
        let b = S::from_real(&[1.0, 2.0]);
        assert_eq!(b.integral(), S::from_real(&[0.0, 1.0, 1.0]));
        assert_eq!(S::one(0).derivative(), S::zero(0));
    }

    #[test]
    fn exp_cases() {
        assert_eq!(S::zero(8).exp(), S::one(8));

        let n = 20;
        let e = S::monomial(c(2.0, 0.0), 1, n).exp();
        let mut expected = 1.0;
        for k in 0..=n {
            if k > 0 {
                expected *= 2.0 / k as f64;
            }
            assert!(close(
                e.coeff(k),
                c(expected, 0.0),
                1e-15 * expected.max(1.0)
            ));
        }

        let log_geo = log_oracle(&S::geometric(n + 1));
        let back = log_geo.exp();
        assert!(back.max_abs_diff(&S::geometric(n)) < 1e-13);
    }

    #[test]
    fn eval_cases() {
        assert_eq!(S::geometric(30).eval(c(0.0, 0.0)), c(1.0, 0.0));
        let z = c(0.3, 0.4);
        assert_eq!(S::identity(5).eval(z), z);
        let v = S::geometric(128).eval(c(0.5, 0.0));
        assert!((v - c(2.0, 0.0)).norm() <= 2.0 * 0.5f64.powi(129) + 1e-15);
    }

    #[test]
    fn eval_jet_matches_derivative_series() {
        let s = S::from_coeffs(vec![
            c(0.2, 0.1),
            c(1.0, -0.5),
            c(0.3, 0.3),
            c(-0.7, 0.2),
            c(0.1, 0.9),
        ]);
        let z = c(0.4, -0.2);
        let jet = s.eval_jet(z);
        let d1 = s.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        assert!(close(jet[0], s.eval(z), 1e-15));
        assert!(close(jet[1], d1.eval(z), 1e-14));
        assert!(close(jet[2], d2.eval(z), 1e-14));
        assert!(close(jet[3], d3.eval(z), 1e-14));
    }
}
