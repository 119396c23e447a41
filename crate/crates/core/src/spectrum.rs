//! Matrices, singular spectra, and the Jacobi SVD that connects them.
//!
//! The spherical mean of `log ||A u||` is invariant under replacing `A` by
//! the diagonal matrix of its singular values, so a validated, sorted
//! [`SingularSpectrum`] is the sole input every other module takes. General
//! matrices enter through [`DenseMatrix::singular_values`], a one-sided
//! (Hestenes) Jacobi iteration on columns: dependency-free, and accurate in a
//! relative sense even for small singular values. Only the values are
//! computed, never the vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::specfun::SphereDimension;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpectrumError {
    /// All matrix entries are zero, so the top singular value would be zero.
    ZeroMatrix,
    /// Jacobi sweeps exceeded the fixed cap without meeting the tolerance.
    NoConvergence { sweeps: usize },
    /// A spectrum entry is NaN, infinite, or negative, or the whole list is
    /// zero (index 0 in that case).
    InvalidSpectrum { index: usize },
    /// A matrix entry is NaN or infinite.
    NonFiniteEntry { row: usize, col: usize },
    /// Row/entry count does not form a square matrix.
    ShapeMismatch { expected: usize, got: usize },
    /// Zero-dimensional input.
    EmptyMatrix,
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroMatrix => write!(f, "matrix is identically zero"),
            Self::NoConvergence { sweeps } => {
                write!(f, "Jacobi SVD did not converge within {sweeps} sweeps")
            }
            Self::InvalidSpectrum { index } => {
                write!(f, "invalid singular value at index {index}")
            }
            Self::NonFiniteEntry { row, col } => {
                write!(f, "non-finite matrix entry at ({row}, {col})")
            }
            Self::ShapeMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            Self::EmptyMatrix => write!(f, "matrix must have dimension at least 1"),
        }
    }
}

impl core::error::Error for SpectrumError {}

/// Square real matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    /// Builds an `dim x dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self, SpectrumError> {
        if dim == 0 {
            return Err(SpectrumError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(SpectrumError::ShapeMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for (i, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(SpectrumError::NonFiniteEntry {
                    row: i / dim,
                    col: i % dim,
                });
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectrumError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(SpectrumError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(SpectrumError::ShapeMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn transpose(&self) -> DenseMatrix {
        let n = self.dim;
        let mut t = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                t[c * n + r] = self.entries[r * n + c];
            }
        }
        DenseMatrix { dim: n, entries: t }
    }

    /// Singular values by one-sided Jacobi, sorted descending.
    ///
    /// Convergence: every column pair satisfies
    /// `|<a_i, a_j>| <= tol * ||a_i|| * ||a_j||`. At most 30 cyclic sweeps;
    /// `tol` must lie in `(0, 1e-4]`.
    pub fn singular_values(&self, tol: f64) -> Result<SingularSpectrum, SpectrumError> {
        assert!(
            tol > 0.0 && tol <= 1e-4,
            "Jacobi tolerance must lie in (0, 1e-4]"
        );
        if self.entries.iter().all(|&x| x == 0.0) {
            return Err(SpectrumError::ZeroMatrix);
        }
        let n = self.dim;
        // column-major working copy; rotations act on whole columns
        let mut cols = vec![0.0f64; n * n];
        for r in 0..n {
            for c in 0..n {
                cols[c * n + r] = self.entries[r * n + c];
            }
        }

        const MAX_SWEEPS: usize = 30;
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let mut aii = 0.0;
                    let mut ajj = 0.0;
                    let mut aij = 0.0;
                    for r in 0..n {
                        let x = cols[i * n + r];
                        let y = cols[j * n + r];
                        aii += x * x;
                        ajj += y * y;
                        aij += x * y;
                    }
                    // covers zero columns too: aij is then exactly 0
                    if libm::fabs(aij) <= tol * libm::sqrt(aii) * libm::sqrt(ajj) {
                        continue;
                    }
                    rotated = true;
                    let zeta = (ajj - aii) / (2.0 * aij);
                    let t = if zeta >= 0.0 {
                        1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                    } else {
                        -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                    };
                    let cs = 1.0 / libm::sqrt(1.0 + t * t);
                    let sn = cs * t;
                    for r in 0..n {
                        let x = cols[i * n + r];
                        let y = cols[j * n + r];
                        cols[i * n + r] = cs * x - sn * y;
                        cols[j * n + r] = sn * x + cs * y;
                    }
                }
            }
            if !rotated {
                let values: Vec<f64> = (0..n)
                    .map(|c| scaled_norm(&cols[c * n..(c + 1) * n]))
                    .collect();
                return SingularSpectrum::from_values(&values);
            }
        }
        Err(SpectrumError::NoConvergence { sweeps: MAX_SWEEPS })
    }
}

/// Overflow-safe Euclidean norm.
pub(crate) fn scaled_norm(v: &[f64]) -> f64 {
    let mut m = 0.0f64;
    for &x in v {
        let a = libm::fabs(x);
        if a > m {
            m = a;
        }
    }
    if m == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for &x in v {
        let r = x / m;
        sum += r * r;
    }
    m * libm::sqrt(sum)
}

/// Validated singular values `s_1 >= s_2 >= ... >= s_n >= 0` with `s_1 > 0`.
///
/// Zero values are allowed (rank-deficient spectra are meaningful), but an
/// all-zero spectrum is rejected since the mean of `log ||A u||` would be
/// `-infinity`.
#[derive(Clone, PartialEq, Debug)]
pub struct SingularSpectrum {
    sigmas: Vec<f64>,
    dim: SphereDimension,
}

impl SingularSpectrum {
    /// Sorts a copy of `values` descending and validates it.
    pub fn from_values(values: &[f64]) -> Result<Self, SpectrumError> {
        if values.is_empty() {
            return Err(SpectrumError::InvalidSpectrum { index: 0 });
        }
        for (index, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(SpectrumError::InvalidSpectrum { index });
            }
        }
        let mut sigmas = values.to_vec();
        sigmas.sort_unstable_by(|a, b| b.total_cmp(a));
        if sigmas[0] == 0.0 {
            return Err(SpectrumError::InvalidSpectrum { index: 0 });
        }
        let dim = SphereDimension::new(sigmas.len()).expect("non-empty");
        Ok(Self { sigmas, dim })
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn dim(&self) -> SphereDimension {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_sigma(&self) -> f64 {
        self.sigmas[0]
    }

    pub fn min_sigma(&self) -> f64 {
        *self.sigmas.last().expect("non-empty")
    }

    /// The squares `s_i^2`, descending.
    pub fn squared(&self) -> impl Iterator<Item = f64> + '_ {
        self.sigmas.iter().map(|&s| s * s)
    }

    /// Number of strictly positive values.
    pub fn nonzero_count(&self) -> usize {
        self.sigmas.iter().filter(|&&s| s > 0.0).count()
    }

    /// All values equal (exact comparison).
    pub fn is_isotropic(&self) -> bool {
        self.sigmas.iter().all(|&s| s == self.sigmas[0])
    }

    /// Exactly one nonzero value.
    pub fn is_rank_one(&self) -> bool {
        self.nonzero_count() == 1
    }

    /// `log(sum s_i^2)` computed as `2 log s_1 + log(sum (s_i/s_1)^2)`, so
    /// spectra with `s_1` near the f64 overflow threshold stay finite.
    pub fn log_sum_sq(&self) -> f64 {
        let top = self.sigmas[0];
        let mut sum = 0.0;
        for &s in &self.sigmas {
            let r = s / top;
            sum += r * r;
        }
        2.0 * libm::log(top) + libm::log(sum)
    }

    /// `sum s_i^2` via the same max-scaling.
    pub fn sum_sq(&self) -> f64 {
        let top = self.sigmas[0];
        let mut sum = 0.0;
        for &s in &self.sigmas {
            let r = s / top;
            sum += r * r;
        }
        top * top * sum
    }
}
