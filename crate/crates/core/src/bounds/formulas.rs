//! Closed-form price-of-anarchy upper bounds.
//!
//! `a_max` enters in ratio form (largest over smallest positive
//! coefficient): the price of anarchy is invariant under scaling all delays,
//! so this is the coefficient spread after normalizing the smallest one to 1.

use crate::model::DelayClassStats;

/// `(theta + 1) a_max k^(theta - 1)` for non-atomic decomposable
/// theta-polynomial delays.
pub fn bound_nonatomic_decomposable(stats: &DelayClassStats) -> f64 {
    let theta = stats.theta as i32;
    (theta as f64 + 1.0) * stats.a_max * (stats.k as f64).powi(theta - 1)
}

/// `(2 a_max k N_phi)^(theta + 1)` for non-atomic heterogeneous
/// theta-polynomial delays.
pub fn bound_nonatomic_heterogeneous_poly(stats: &DelayClassStats) -> f64 {
    (2.0 * stats.a_max * stats.k as f64 * stats.n_phi as f64).powi(stats.theta as i32 + 1)
}

/// Variant `a_max (2 k N_phi)^(theta + 1)`; agrees with the default when
/// `a_max = 1`.
pub fn bound_nonatomic_heterogeneous_poly_abstract(stats: &DelayClassStats) -> f64 {
    stats.a_max * (2.0 * stats.k as f64 * stats.n_phi as f64).powi(stats.theta as i32 + 1)
}

/// `(t + sqrt(t (t + 4))) / 2 + 1` with `t = k^2 N_phi^2 a_max^2` for
/// non-atomic heterogeneous affine delays.
pub fn bound_nonatomic_heterogeneous_affine(stats: &DelayClassStats) -> f64 {
    let t = (stats.k as f64 * stats.n_phi as f64 * stats.a_max).powi(2);
    quadratic_root(t)
}

/// Variant with `t = k^4 a_max`.
pub fn bound_nonatomic_heterogeneous_affine_abstract(stats: &DelayClassStats) -> f64 {
    quadratic_root((stats.k as f64).powi(4) * stats.a_max)
}

/// `(a_max + sqrt(a_max^2 + 4 a_max)) / 2 + 1` for atomic decomposable
/// affine delays.
pub fn bound_atomic_decomposable_affine(stats: &DelayClassStats) -> f64 {
    quadratic_root(stats.a_max)
}

/// `a_max (N_phi + k theta)^(theta + 1)` for atomic decomposable
/// theta-polynomial delays.
pub fn bound_atomic_decomposable_poly(stats: &DelayClassStats) -> f64 {
    let base = stats.n_phi as f64 + (stats.k as f64) * stats.theta as f64;
    stats.a_max * base.powi(stats.theta as i32 + 1)
}

/// `sqrt(a_max) + 2` for two-commodity atomic uniform affine delays.
pub fn bound_atomic_uniform_affine(stats: &DelayClassStats) -> f64 {
    stats.a_max.sqrt() + 2.0
}

/// Larger root of `y^2 - t y - t = 0`, plus one.
fn quadratic_root(t: f64) -> f64 {
    (t + (t * (t + 4.0)).sqrt()) / 2.0 + 1.0
}
