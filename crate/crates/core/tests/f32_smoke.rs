//! The numerics compile and behave for `f32`; tolerances are loose.

use num_complex::Complex;
use schwarzian_core::robertson::{
    extremal_value, phase_aligned_omega, schwarzian_norm_bound, schwarzian_via_omega,
};
use schwarzian_core::{
    norm_schwarzian, DiskFunction, F0Map, GridConfig, SpiralAlpha, TaylorSeries,
};

#[test]
fn f32_pipeline() {
    let a = SpiralAlpha::<f32>::new(std::f32::consts::FRAC_PI_3).unwrap();
    assert!((schwarzian_norm_bound(&a) - 2.0 * 3f32.sqrt()).abs() < 1e-5);

    let w = phase_aligned_omega(&a, 0.1).unwrap();
    let s = schwarzian_via_omega(&a, &w, Complex::new(0.1, 0.0))
        .unwrap()
        .norm();
    let v = extremal_value(&a, 0.1).unwrap();
    assert!((s - v).abs() <= 1e-4 * v);

    let cfg = GridConfig::<f32> {
        n_radii: 16,
        n_angles: 32,
        r_max: 0.99,
        ..GridConfig::default()
    };
    let res = norm_schwarzian(&F0Map::new(a), &cfg).unwrap();
    assert!(res.value <= 2.0 * 3f32.sqrt() * (1.0 + 1e-5));
    assert!(res.value >= 3.3, "{res:?}");

    let g = TaylorSeries::<f32>::geometric(32);
    let z = Complex::new(0.25f32, 0.0);
    assert!((g.eval(z) - Complex::new(4.0 / 3.0, 0.0)).norm() < 1e-6);
    assert!((g.jet(z).unwrap().d1 - Complex::new(16.0 / 9.0, 0.0)).norm() < 1e-5);
}
