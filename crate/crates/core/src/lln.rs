//! Law-of-large-numbers diagnostics over growing spectra.
//!
//! For a fixed sequence `s_1, s_2, ...` of positive values, let `A_n` have
//! singular values `s_1..s_n`. When the ratio
//! `r_n = sum s_i^4 / (sum s_i^2)^2` tends to zero, the deviation
//!
//! ```text
//! d_n = I(A_n) - log(sum s_i^2)/2 + log(n)/2
//! ```
//!
//! tends to zero as well, i.e. the upper bound becomes the right
//! approximation. Uniformly bounded condition numbers are enough:
//! `s_i/s_j < c` for all pairs forces `r_n <= c^4 / n`.
//!
//! A finite scan cannot certify a limit, so [`lln_scan`] records the ratio
//! trend and condition numbers next to the deviations instead of issuing a
//! verdict; deviations use the deterministic quadrature estimator, since
//! Monte Carlo noise would drown the trend.

use alloc::vec::Vec;
use core::fmt;

use crate::estimate::{quad_estimate, EstimateError, QuadConfig};
use crate::spectrum::{SingularSpectrum, SpectrumError};

#[derive(Clone, PartialEq, Debug)]
pub enum LlnError {
    /// A prefix failed spectrum validation.
    InvalidPrefix { dim: usize, source: SpectrumError },
    /// `dims` must be non-empty, strictly increasing, and each at least 2.
    InvalidDims,
    /// The sequence is shorter than the largest requested dimension.
    SequenceTooShort { needed: usize, len: usize },
    /// A deviation's quadrature failed.
    Quadrature(EstimateError),
}

impl fmt::Display for LlnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidPrefix { dim, source } => {
                write!(f, "prefix of length {dim} is not a valid spectrum: {source}")
            }
            Self::InvalidDims => {
                write!(f, "dims must be strictly increasing and each at least 2")
            }
            Self::SequenceTooShort { needed, len } => {
                write!(f, "sequence has {len} values but {needed} are required")
            }
            Self::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LlnError {}

/// Per-dimension diagnostics; all lists share the length of `dims`.
#[derive(Clone, PartialEq, Debug)]
pub struct LlnDiagnostics {
    pub dims: Vec<usize>,
    /// `r_n = sum s_i^4 / (sum s_i^2)^2`, in `[1/n, 1]`
    pub ratios: Vec<f64>,
    /// `d_n = I(A_n) - log(sum s_i^2)/2 + log(n)/2`
    pub deviations: Vec<f64>,
    /// `s_max / s_min` per prefix; `+inf` marks a zero minimum
    pub condition_numbers: Vec<f64>,
}

/// Hypothesis status derived from a scan.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct LlnHypothesis {
    /// Each recorded ratio strictly below its predecessor.
    pub ratios_decreasing: bool,
    /// Largest condition number seen across the scanned prefixes.
    pub max_condition_number: f64,
}

impl LlnDiagnostics {
    pub fn hypothesis(&self) -> LlnHypothesis {
        let ratios_decreasing = self.ratios.windows(2).all(|w| w[1] < w[0]);
        let max_condition_number = self
            .condition_numbers
            .iter()
            .fold(0.0f64, |acc, &c| acc.max(c));
        LlnHypothesis {
            ratios_decreasing,
            max_condition_number,
        }
    }
}

/// `sum s_i^4 / (sum s_i^2)^2`, max-scaled so extreme spectra do not overflow.
pub fn lln_ratio(s: &SingularSpectrum) -> f64 {
    let top = s.max_sigma();
    let mut sum2 = 0.0;
    let mut sum4 = 0.0;
    for &sig in s.sigmas() {
        let r = sig / top;
        let r2 = r * r;
        sum2 += r2;
        sum4 += r2 * r2;
    }
    sum4 / (sum2 * sum2)
}

/// `s_max / s_min`; `+inf` when the smallest value is zero.
pub fn condition_number(s: &SingularSpectrum) -> f64 {
    let min = s.min_sigma();
    if min == 0.0 {
        f64::INFINITY
    } else {
        s.max_sigma() / min
    }
}

/// Scans prefixes `s_1..s_n` for each `n` in `dims`, recording the ratio,
/// the condition number, and the quadrature-based deviation.
pub fn lln_scan(
    sigma_sequence: &[f64],
    dims: &[usize],
    quad: &QuadConfig,
) -> Result<LlnDiagnostics, LlnError> {
    if dims.is_empty() || dims[0] < 2 || dims.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LlnError::InvalidDims);
    }
    let needed = *dims.last().expect("non-empty");
    if sigma_sequence.len() < needed {
        return Err(LlnError::SequenceTooShort {
            needed,
            len: sigma_sequence.len(),
        });
    }

    let mut ratios = Vec::with_capacity(dims.len());
    let mut deviations = Vec::with_capacity(dims.len());
    let mut condition_numbers = Vec::with_capacity(dims.len());
    for &n in dims {
        let prefix = SingularSpectrum::from_values(&sigma_sequence[..n])
            .map_err(|source| LlnError::InvalidPrefix { dim: n, source })?;
        ratios.push(lln_ratio(&prefix));
        condition_numbers.push(condition_number(&prefix));
        let est = quad_estimate(&prefix, quad).map_err(LlnError::Quadrature)?;
        let deviation = est.value - 0.5 * prefix.log_sum_sq() + 0.5 * libm::log(n as f64);
        deviations.push(deviation);
    }

    Ok(LlnDiagnostics {
        dims: dims.to_vec(),
        ratios,
        deviations,
        condition_numbers,
    })
}
