//! Spherical means of `log ||A u||` for a linear map `A`.
//!
//! For an `n x n` real matrix `A` with singular values `s_1 >= ... >= s_n`,
//! the central quantity is the average distortion
//!
//! ```text
//! I(A) = mean over u in S^{n-1} of log ||A u||
//! ```
//!
//! taken with respect to the rotation-invariant probability measure. `I(A)`
//! depends only on the singular spectrum, which keeps everything here
//! spectrum-driven:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`specfun`] | Exact harmonic/digamma arithmetic in `Q + Q*gamma + Q*log 2`, sphere areas, Gaussian radial moments |
//! | [`reduction`] | Sphere integrals of log-homogeneous functions from Gaussian integrals |
//! | [`spectrum`] | Dense matrices, one-sided Jacobi singular values, validated spectra |
//! | [`bounds`] | Sharp upper/lower bounds on `I(A)` and the normalized gap |
//! | [`estimate`] | Deterministic quadrature and reproducible Monte Carlo estimators |
//! | [`lln`] | Law-of-large-numbers diagnostics over growing spectra |
//!
//! The crate is `no_std` (with `alloc`); IO and the CLI live in the
//! companion `avgdist-cli` crate.
//!
//! # Example
//!
//! ```
//! use avgdist::{distortion_bounds, quad_estimate, QuadConfig, SingularSpectrum};
//!
//! let s = SingularSpectrum::from_values(&[3.0, 4.0]).unwrap();
//! let est = quad_estimate(&s, &QuadConfig::default()).unwrap();
//! // classical closed form: log((3 + 4) / 2)
//! assert!((est.value - 3.5f64.ln()).abs() < 1e-9);
//!
//! let b = distortion_bounds(&s);
//! assert!(b.lower < est.value && est.value < b.upper);
//! ```

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod estimate;
pub mod lln;
pub mod reduction;
pub mod specfun;
pub mod spectrum;

mod quadrature;
mod rng;

pub use bounds::{bound_gap, distortion_bounds, BoundsReport};
pub use estimate::{
    closed_form, mc_estimate, quad_estimate, sample_sphere, DistortionEstimate, EstimateError,
    EstimateMethod, McConfig, McMode, QuadConfig,
};
pub use lln::{condition_number, lln_ratio, lln_scan, LlnDiagnostics, LlnError, LlnHypothesis};
pub use reduction::{
    sphere_integral_from_gaussian, sphere_mean_log_from_gaussian_mean, LogHomogeneousPair,
};
pub use specfun::{
    digamma_half, digamma_half_f64, gaussian_log_radius_mean, harmonic, mean_log_coordinate,
    mean_log_coordinate_f64, odd_harmonic, radial_log_moment, radial_moment, sphere_area, xi,
    GammaLogCombination, SphereDimension, EULER_GAMMA,
};
pub use spectrum::{DenseMatrix, SingularSpectrum, SpectrumError};
