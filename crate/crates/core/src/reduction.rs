//! Sphere integrals of log-homogeneous functions from Gaussian integrals.
//!
//! For `f` with `f(a x) = g(a) + f(x)` the full-space Gaussian integral of
//! `f` splits into a sphere part and a radial part:
//!
//! ```text
//! 2^{n/2-1} Gamma(n/2) * int_{S^{n-1}} f dmu
//!     = int_{R^n} f(x) e^{-||x||^2/2} dx  -  omega_{n-1} * int_0^inf g(r) r^{n-1} e^{-r^2/2} dr
//! ```
//!
//! The module works on integral *values*: once `f` is fixed this is an
//! identity between numbers, and callers own the evaluation strategy.

use crate::specfun::{gaussian_log_radius_mean, radial_moment, sphere_area, SphereDimension};

/// The two integrals on the right-hand side for one log-homogeneous `f`.
#[derive(Clone, Copy, Debug)]
pub struct LogHomogeneousPair {
    /// `int_{R^n} f(x) e^{-||x||^2/2} dx`
    pub gaussian_integral: f64,
    /// `int_0^inf g(r) r^{n-1} e^{-r^2/2} dr`
    pub radial_g_integral: f64,
    pub dim: SphereDimension,
}

/// Total (unnormalized) integral of `f` over `S^{n-1}`.
pub fn sphere_integral_from_gaussian(pair: &LogHomogeneousPair) -> f64 {
    (pair.gaussian_integral - sphere_area(pair.dim) * pair.radial_g_integral)
        / radial_moment(pair.dim)
}

/// Mean form, specialized to `g(r) = log r`: the spherical mean of `f` is
/// its Gaussian mean minus the mean of `log ||g||`.
pub fn sphere_mean_log_from_gaussian_mean(gaussian_mean: f64, n: SphereDimension) -> f64 {
    gaussian_mean - gaussian_log_radius_mean(n)
}
