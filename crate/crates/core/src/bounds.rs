//! Sharp bounds on the spherical mean of `log ||A u||` from the spectrum.
//!
//! With `S = sum s_i^2`, concavity and symmetry of the integrand in the
//! variables `s_i^2` pin the extremes of `I = mean log ||diag(s) u||`:
//!
//! * maximum at the isotropic point `s_i^2 = S/n`, giving
//!   `I <= log(S)/2 - log(n)/2`;
//! * minimum at any rank-one vertex, giving
//!   `I >= log(S)/2 + c(n)` where `c(n)` is the spherical mean of
//!   `log |x_1|` ([`mean_log_coordinate_f64`]).
//!
//! The scale-invariant form is `J = 2 I - log S`, bounded by `2 c(n)` and
//! `-log n`.

use crate::specfun::{mean_log_coordinate_f64, SphereDimension};
use crate::spectrum::SingularSpectrum;

/// Both bounds, their normalized (`J`) forms, and the spectrum-independent gap.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BoundsReport {
    /// `log(sum s_i^2) / 2`
    pub half_log_sum_sq: f64,
    pub lower: f64,
    pub upper: f64,
    /// `2 (lower - half_log_sum_sq)`, the sharp constant doubled
    pub j_lower: f64,
    /// `2 (upper - half_log_sum_sq) = -log n`
    pub j_upper: f64,
    /// `upper - lower`; depends only on the dimension
    pub gap: f64,
}

/// Evaluates the bounds for a spectrum.
///
/// `log(sum s_i^2)` is computed with max-scaling, so spectra with top values
/// near the f64 overflow threshold are handled.
pub fn distortion_bounds(s: &SingularSpectrum) -> BoundsReport {
    let n = s.dim();
    let half_log_sum_sq = 0.5 * s.log_sum_sq();
    let upper = half_log_sum_sq - 0.5 * libm::log(n.as_f64());
    let lower = half_log_sum_sq + mean_log_coordinate_f64(n);
    BoundsReport {
        half_log_sum_sq,
        lower,
        upper,
        j_lower: 2.0 * (lower - half_log_sum_sq),
        j_upper: 2.0 * (upper - half_log_sum_sq),
        gap: upper - lower,
    }
}

/// The dimension-only gap `(-log(n)/2) - c(n)` between the two bounds.
///
/// It tends to `(gamma + log 2)/2 ~ 0.6352` as `n` grows; `gamma + log 2`
/// is the corresponding limit for the `J`-normalized gap `j_upper - j_lower`.
pub fn bound_gap(n: SphereDimension) -> f64 {
    assert!(n.get() >= 2, "bound_gap requires n >= 2");
    -0.5 * libm::log(n.as_f64()) - mean_log_coordinate_f64(n)
}
