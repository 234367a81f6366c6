//! The Robertson classes `S_α`: construction from a Schwarz function,
//! derivative operators, closed-form bounds and extremal functions.

mod alpha;
mod bounds;
mod derivatives;
mod dieudonne;
mod extremal;
mod function;

pub use alpha::{Regime, SpiralAlpha};
pub use bounds::{
    delta, g_profile, h_poly, pointwise_bound, pre_schwarzian_norm_bound, s0, schwarzian_norm_bound,
};
pub use derivatives::{
    membership_min, pre_schwarzian, pre_schwarzian_via_omega, schwarzian, schwarzian_via_omega,
    Distortion, VANISHING_DERIVATIVE,
};
pub use dieudonne::{dieudonne_report, DieudonneReport};
pub use extremal::{
    check_admissible, extremal_b, extremal_f0, extremal_fz0p, extremal_p, extremal_value,
    phase_aligned_extremal, phase_aligned_omega,
};
pub use function::{robertson_from_omega, F0Map, Provenance, RobertsonFunction};
