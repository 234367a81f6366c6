//! Pre-Schwarzian and Schwarzian derivatives on the unit disk, their
//! hyperbolic sup-norms, and the Robertson classes `S_α` of functions with
//! `Re{e^{iα}(1 + z f''/f')} > 0`.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what all documented
//! tolerances assume.

pub mod disk;
pub mod error;
pub mod grid;
pub mod norm;
pub mod robertson;
pub mod scalar;
pub mod series;

pub use disk::{
    schwarz_certify, series_radius_cap, CertReport, DiskFunction, FunctionKind, Identity, Jet,
    SchwarzFamily, SchwarzFunction, SERIES_RADIUS_CAP,
};
pub use error::{Error, Result};
pub use grid::GridConfig;
pub use norm::{norm_pre_schwarzian, norm_schwarzian, weighted_sup, NormResult};
pub use robertson::{Distortion, F0Map, Regime, RobertsonFunction, SpiralAlpha};
pub use scalar::Real;
pub use series::{TaylorSeries, DEFAULT_ORDER};

pub type C64 = num_complex::Complex<f64>;
pub type TaylorSeries64 = TaylorSeries<f64>;
pub type SchwarzFunction64 = SchwarzFunction<f64>;
pub type SpiralAlpha64 = SpiralAlpha<f64>;
pub type RobertsonFunction64 = RobertsonFunction<f64>;
pub type F0Map64 = F0Map<f64>;
pub type GridConfig64 = GridConfig<f64>;
pub type NormResult64 = NormResult<f64>;
