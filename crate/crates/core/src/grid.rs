use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Polar sampling of the closed disk `|z| <= r_max` plus refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig<T> {
    pub n_radii: usize,
    pub n_angles: usize,
    pub r_max: T,
    pub refine_iters: usize,
    pub refine_tol: T,
}

impl<T: Real> Default for GridConfig<T> {
    /// 64 Chebyshev radii on `[0, 1 - 1e-4]`, 256 angles, 40 golden-section
    /// iterations, bracket tolerance `1e-12`.
    fn default() -> Self {
        Self {
            n_radii: 64,
            n_angles: 256,
            r_max: T::one() - T::lit(1e-4),
            refine_iters: 40,
            refine_tol: T::lit(1e-12),
        }
    }
}

impl<T: Real> GridConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_radii < 2 || self.n_angles < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 radii and 2 angles, got {} x {}",
                self.n_radii, self.n_angles
            )));
        }
        if !(self.r_max > T::zero() && self.r_max < T::one()) {
            return Err(Error::InvalidGrid(format!(
                "r_max = {} not in (0, 1)",
                self.r_max
            )));
        }
        if !(self.refine_tol >= T::zero()) {
            return Err(Error::InvalidGrid(format!(
                "refine_tol = {} is negative",
                self.refine_tol
            )));
        }
        Ok(())
    }

    pub fn with_r_max(mut self, r_max: T) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn with_refine_iters(mut self, iters: usize) -> Self {
        self.refine_iters = iters;
        self
    }

    /// Chebyshev–Lobatto radii on `[0, r_max]`, increasing, endpoints included.
    pub fn radii(&self) -> Vec<T> {
        let m = self.n_radii - 1;
        let half = T::lit(0.5) * self.r_max;
        (0..self.n_radii)
            .map(|i| {
                if i == m {
                    self.r_max
                } else {
                    half * (T::one() - (T::PI() * T::count(i) / T::count(m)).cos())
                }
            })
            .collect()
    }

    /// Equally spaced angles `2πj / n_angles`, starting at 0.
    pub fn angles(&self) -> Vec<T> {
        (0..self.n_angles)
            .map(|j| T::TAU() * T::count(j) / T::count(self.n_angles))
            .collect()
    }

    /// Every grid point, radius-major.
    pub fn points(&self) -> Vec<Complex<T>> {
        let angles = self.angles();
        self.radii()
            .into_iter()
            .flat_map(|r| angles.iter().map(move |&t| Complex::from_polar(r, t)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_radii_are_chebyshev_on_closed_interval() {
        let cfg = GridConfig::<f64>::default();
        cfg.validate().unwrap();
        let r = cfg.radii();
        assert_eq!(r.len(), 64);
        assert_eq!(r[0], 0.0);
        assert_eq!(r[63], 1.0 - 1e-4);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        // clustered at both ends
        assert!(r[1] - r[0] < r[32] - r[31]);
        assert!(r[63] - r[62] < r[32] - r[31]);
        assert_eq!(cfg.points().len(), 64 * 256);
    }

    #[test]
    fn rejects_degenerate_grids() {
        let cfg = GridConfig::<f64> {
            n_angles: 1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = GridConfig::<f64>::default().with_r_max(1.0);
        assert!(cfg.validate().is_err());
    }
}
