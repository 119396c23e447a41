//! Exact special-function values at integer and half-integer points.
//!
//! Everything the sharp bounds need reduces to harmonic sums, the digamma
//! function at half-integers, and Gaussian radial moments. The half-integer
//! values of psi live in `Q + Q*gamma + Q*log 2`, so they are carried as
//! [`GammaLogCombination`]s with arbitrary-precision rational coefficients;
//! `gamma` and `Gamma` at half-integers come from upward recurrences off the
//! two base values `psi(1) = -gamma`, `psi(1/2) = -gamma - 2 log 2`,
//! `Gamma(1) = 1`, `Gamma(1/2) = sqrt(pi)`, never from series.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Euler's constant, 20 significant digits.
///
/// Validated in tests against the limit of `H_m - log m` at `m = 10^6` with
/// the Euler-Maclaurin correction `1/(2m)`.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

/// Ambient dimension `n >= 1`; the sphere in play is `S^{n-1}`.
///
/// `n = 1` is the degenerate sphere `{-1, +1}`, and every formula in this
/// crate degrades gracefully there.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SphereDimension(usize);

impl SphereDimension {
    /// `None` when `n == 0`.
    pub fn new(n: usize) -> Option<Self> {
        if n == 0 {
            None
        } else {
            Some(Self(n))
        }
    }

    pub const fn get(self) -> usize {
        self.0
    }

    pub(crate) fn as_f64(self) -> f64 {
        self.0 as f64
    }

    fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Display for SphereDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An exact element of `Q + Q*gamma + Q*log 2`.
///
/// Addition, subtraction and rational scaling are exact; only [`to_real`]
/// rounds, evaluating with `gamma` and `log 2` in double precision.
///
/// [`to_real`]: GammaLogCombination::to_real
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaLogCombination {
    rational_part: BigRational,
    gamma_coeff: BigRational,
    log2_coeff: BigRational,
}

impl GammaLogCombination {
    pub fn new(
        rational_part: BigRational,
        gamma_coeff: BigRational,
        log2_coeff: BigRational,
    ) -> Self {
        Self {
            rational_part,
            gamma_coeff,
            log2_coeff,
        }
    }

    pub fn zero() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn from_rational(rational_part: BigRational) -> Self {
        Self::new(rational_part, BigRational::zero(), BigRational::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational_part
    }

    pub fn gamma_coeff(&self) -> &BigRational {
        &self.gamma_coeff
    }

    pub fn log2_coeff(&self) -> &BigRational {
        &self.log2_coeff
    }

    /// True when both transcendental coefficients vanish.
    pub fn is_rational(&self) -> bool {
        self.gamma_coeff.is_zero() && self.log2_coeff.is_zero()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(
            &self.rational_part * factor,
            &self.gamma_coeff * factor,
            &self.log2_coeff * factor,
        )
    }

    /// Double-precision value of the combination.
    pub fn to_real(&self) -> f64 {
        ratio_to_f64(&self.rational_part)
            + ratio_to_f64(&self.gamma_coeff) * EULER_GAMMA
            + ratio_to_f64(&self.log2_coeff) * LN_2
    }
}

impl Add for GammaLogCombination {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.rational_part + rhs.rational_part,
            self.gamma_coeff + rhs.gamma_coeff,
            self.log2_coeff + rhs.log2_coeff,
        )
    }
}

impl Sub for GammaLogCombination {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.rational_part - rhs.rational_part,
            self.gamma_coeff - rhs.gamma_coeff,
            self.log2_coeff - rhs.log2_coeff,
        )
    }
}

impl Neg for GammaLogCombination {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(
            -self.rational_part,
            -self.gamma_coeff,
            -self.log2_coeff,
        )
    }
}

impl fmt::Display for GammaLogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        push_term(&mut out, &self.rational_part, None);
        push_term(&mut out, &self.gamma_coeff, Some("γ"));
        push_term(&mut out, &self.log2_coeff, Some("log 2"));
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn push_term(out: &mut String, coeff: &BigRational, symbol: Option<&str>) {
    use core::fmt::Write;

    if coeff.is_zero() {
        return;
    }
    let mag = coeff.abs();
    if out.is_empty() {
        if coeff.is_negative() {
            out.push('-');
        }
    } else if coeff.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    match symbol {
        None => {
            let _ = write!(out, "{mag}");
        }
        Some(sym) => {
            if mag == BigRational::from_integer(BigInt::from(1)) {
                out.push_str(sym);
            } else {
                let _ = write!(out, "{mag}·{sym}");
            }
        }
    }
}

/// Rounds a big rational to the nearest double.
///
/// `Ratio::to_f64` converts numerator and denominator separately and falls
/// over once either exceeds the f64 range, which harmonic numerators do
/// early; this scales the quotient to 64-65 significant bits first.
pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();
    let shift = 64 + b.bits() as i64 - a.bits() as i64;
    let q = if shift >= 0 {
        (a << shift as usize) / b
    } else {
        a / (b << (-shift) as usize)
    };
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * libm::exp2(-shift as f64);
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `H_m = 1 + 1/2 + ... + 1/m` as an exact rational; `H_0 = 0`.
pub fn harmonic(m: usize) -> BigRational {
    let mut sum = BigRational::zero();
    for k in 1..=m {
        sum += BigRational::new(BigInt::from(1), BigInt::from(k));
    }
    sum
}

/// `1 + 1/3 + ... + 1/(2m - 1)` as an exact rational; `0` for `m = 0`.
pub fn odd_harmonic(m: usize) -> BigRational {
    let mut sum = BigRational::zero();
    for k in 1..=m {
        sum += BigRational::new(BigInt::from(1), BigInt::from(2 * k - 1));
    }
    sum
}

fn harmonic_f64(m: usize) -> f64 {
    // smallest terms first
    let mut sum = 0.0;
    for k in (1..=m).rev() {
        sum += 1.0 / k as f64;
    }
    sum
}

fn odd_harmonic_f64(m: usize) -> f64 {
    let mut sum = 0.0;
    for k in (1..=m).rev() {
        sum += 1.0 / (2 * k - 1) as f64;
    }
    sum
}

/// `psi(n/2)` exactly:
///
/// * even `n`: `-gamma + H_{n/2 - 1}`
/// * odd `n`:  `-gamma - 2 log 2 + 2 (1 + 1/3 + ... + 1/(n - 2))`
pub fn digamma_half(n: SphereDimension) -> GammaLogCombination {
    if n.is_even() {
        GammaLogCombination::new(harmonic(n.get() / 2 - 1), rat(-1, 1), BigRational::zero())
    } else {
        GammaLogCombination::new(
            odd_harmonic((n.get() - 1) / 2) * rat(2, 1),
            rat(-1, 1),
            rat(-2, 1),
        )
    }
}

/// Double-precision `psi(n/2)` by the same recurrences, for dimensions where
/// exact rationals would be needlessly expensive.
pub fn digamma_half_f64(n: SphereDimension) -> f64 {
    if n.is_even() {
        -EULER_GAMMA + harmonic_f64(n.get() / 2 - 1)
    } else {
        -EULER_GAMMA - 2.0 * LN_2 + 2.0 * odd_harmonic_f64((n.get() - 1) / 2)
    }
}

/// Mean of `log |x_1|` over `S^{n-1}`, i.e. `(-2 log 2 - gamma - psi(n/2)) / 2`.
///
/// The gamma coefficient cancels exactly for every `n`, leaving a value in
/// `Q + Q*log 2`. This is the sharp lower-bound constant: the minimum of the
/// spherical mean of `log ||diag(s) u||` over unit-trace `s^2` is attained at
/// a rank-one vertex, where the mean is exactly this quantity.
pub fn mean_log_coordinate(n: SphereDimension) -> GammaLogCombination {
    let head = GammaLogCombination::new(BigRational::zero(), rat(-1, 1), rat(-2, 1));
    (head - digamma_half(n)).scale(&rat(1, 2))
}

/// Double-precision [`mean_log_coordinate`], with gamma cancelled symbolically.
pub fn mean_log_coordinate_f64(n: SphereDimension) -> f64 {
    if n.is_even() {
        -LN_2 - 0.5 * harmonic_f64(n.get() / 2 - 1)
    } else {
        0.0 - odd_harmonic_f64((n.get() - 1) / 2)
    }
}

/// Piecewise harmonic-sum form of the lower-bound constant:
///
/// * even `n`: `-log 2 - H_{n/2} / 2`
/// * odd `n`:  `-(1 + 1/3 + ... + 1/(n - 2))`
///
/// Kept verbatim, including the even case summing through `n/2`. For odd `n`
/// it coincides with [`mean_log_coordinate`]; for even `n` it sits exactly
/// `1/n` below it (the sharp even-n constant sums through `n/2 - 1`), which
/// the circle case `n = 2` pins down: the spherical mean of `log |x_1|` is
/// `-log 2`, while `xi(2) = -log 2 - 1/2`. Bounds therefore use
/// [`mean_log_coordinate`]; this form stays available for comparison.
pub fn xi(n: SphereDimension) -> GammaLogCombination {
    assert!(n.get() >= 2, "xi requires n >= 2");
    if n.is_even() {
        GammaLogCombination::new(harmonic(n.get() / 2) * rat(-1, 2), BigRational::zero(), rat(-1, 1))
    } else {
        GammaLogCombination::from_rational(-odd_harmonic((n.get() - 1) / 2))
    }
}

/// `log Gamma(n/2)` by upward recurrence from `Gamma(1) = 1`, `Gamma(1/2) = sqrt(pi)`.
pub fn log_gamma_half(n: SphereDimension) -> f64 {
    if n.is_even() {
        let mut sum = 0.0;
        for k in 1..n.get() / 2 {
            sum += libm::log(k as f64);
        }
        sum
    } else {
        let mut sum = 0.5 * libm::log(core::f64::consts::PI);
        for k in 1..=(n.get() - 1) / 2 {
            sum += libm::log(k as f64 - 0.5);
        }
        sum
    }
}

/// Surface area of `S^{n-1}`: `2 pi^{n/2} / Gamma(n/2)`.
pub fn sphere_area(n: SphereDimension) -> f64 {
    let log_pi = libm::log(core::f64::consts::PI);
    libm::exp(LN_2 + 0.5 * n.as_f64() * log_pi - log_gamma_half(n))
}

/// `int_0^inf r^{n-1} e^{-r^2/2} dr = 2^{n/2 - 1} Gamma(n/2)`.
pub fn radial_moment(n: SphereDimension) -> f64 {
    libm::exp((0.5 * n.as_f64() - 1.0) * LN_2 + log_gamma_half(n))
}

/// `int_0^inf log(r) r^{n-1} e^{-r^2/2} dr = 2^{n/2 - 2} Gamma(n/2) (log 2 + psi(n/2))`.
pub fn radial_log_moment(n: SphereDimension) -> f64 {
    let prefactor = libm::exp((0.5 * n.as_f64() - 2.0) * LN_2 + log_gamma_half(n));
    prefactor * (LN_2 + digamma_half_f64(n))
}

/// Mean of `log ||g||` for a standard Gaussian vector in dimension `n`:
/// `(log 2 + psi(n/2)) / 2`, the ratio of the two radial moments above.
pub fn gaussian_log_radius_mean(n: SphereDimension) -> f64 {
    0.5 * (LN_2 + digamma_half_f64(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> SphereDimension {
        SphereDimension::new(n).unwrap()
    }

    fn glc(r: BigRational, g: BigRational, l: BigRational) -> GammaLogCombination {
        GammaLogCombination::new(r, g, l)
    }

    #[test]
    fn euler_gamma_matches_harmonic_limit() {
        // H_m - log m - 1/(2m) -> gamma with error ~ 1/(12 m^2); Kahan-summed
        // so the float error stays below the truncation error.
        let m: u64 = 1_000_000;
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for k in (1..=m).rev() {
            let term = 1.0 / k as f64 - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        let estimate = sum - (m as f64).ln() - 1.0 / (2.0 * m as f64);
        assert!(
            (estimate - EULER_GAMMA).abs() < 2e-13,
            "gamma oracle off: {estimate:.17} vs {EULER_GAMMA:.17}"
        );
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), BigRational::zero());
        assert_eq!(harmonic(3), rat(11, 6));
        // direct-summation oracle for H_6
        assert_eq!(harmonic(6), rat(49, 20));
    }

    #[test]
    fn odd_harmonic_values() {
        assert_eq!(odd_harmonic(0), BigRational::zero());
        assert_eq!(odd_harmonic(2), rat(4, 3));
        assert_eq!(odd_harmonic(3), rat(23, 15));
    }

    #[test]
    fn digamma_base_values() {
        // psi(1) = -gamma
        assert_eq!(
            digamma_half(dim(2)),
            glc(rat(0, 1), rat(-1, 1), rat(0, 1))
        );
        // psi(1/2) = -gamma - 2 log 2
        assert_eq!(
            digamma_half(dim(1)),
            glc(rat(0, 1), rat(-1, 1), rat(-2, 1))
        );
        // psi(3) = -gamma + 3/2, reachable from psi(1) via psi(x+1) = psi(x) + 1/x
        assert_eq!(
            digamma_half(dim(6)),
            glc(rat(3, 2), rat(-1, 1), rat(0, 1))
        );
    }

    #[test]
    fn digamma_recurrence_exact() {
        // psi((n+2)/2) - psi(n/2) = 2/n, exactly, across both parities
        for n in 1..=512usize {
            let diff = digamma_half(dim(n + 2)) - digamma_half(dim(n));
            assert_eq!(
                diff,
                GammaLogCombination::from_rational(rat(2, n as i64)),
                "recurrence fails at n = {n}"
            );
        }
    }

    #[test]
    fn mean_log_coordinate_gamma_cancels() {
        for n in 1..=512usize {
            assert!(
                mean_log_coordinate(dim(n)).gamma_coeff().is_zero(),
                "gamma survives at n = {n}"
            );
        }
    }

    #[test]
    fn mean_log_coordinate_values() {
        assert_eq!(mean_log_coordinate(dim(1)), GammaLogCombination::zero());
        // S^2: x_1 is uniform on [-1, 1] and int_0^1 log x dx = -1
        assert_eq!(
            mean_log_coordinate(dim(3)),
            GammaLogCombination::from_rational(rat(-1, 1))
        );
        // circle: -log 2 (cross-checked against 1-D quadrature in tests/oracles.rs)
        assert_eq!(
            mean_log_coordinate(dim(2)),
            glc(rat(0, 1), rat(0, 1), rat(-1, 1))
        );
    }

    #[test]
    fn xi_values() {
        assert_eq!(xi(dim(3)), GammaLogCombination::from_rational(rat(-1, 1)));
        assert_eq!(xi(dim(5)), GammaLogCombination::from_rational(rat(-4, 3)));
        // even case: -log 2 - 1/2
        assert_eq!(xi(dim(2)), glc(rat(-1, 2), rat(0, 1), rat(-1, 1)));
    }

    #[test]
    fn xi_vs_mean_log_coordinate() {
        for n in (3..=101usize).step_by(2) {
            assert_eq!(xi(dim(n)), mean_log_coordinate(dim(n)), "odd n = {n}");
        }
        for n in (2..=100usize).step_by(2) {
            let diff = xi(dim(n)) - mean_log_coordinate(dim(n));
            assert_eq!(
                diff,
                GammaLogCombination::from_rational(rat(-1, n as i64)),
                "even n = {n}"
            );
        }
    }

    #[test]
    fn f64_paths_match_exact() {
        for n in 1..=512usize {
            let d = dim(n);
            assert!(
                (digamma_half_f64(d) - digamma_half(d).to_real()).abs() < 1e-12,
                "digamma f64 path at n = {n}"
            );
            assert!(
                (mean_log_coordinate_f64(d) - mean_log_coordinate(d).to_real()).abs() < 1e-12,
                "mean log coordinate f64 path at n = {n}"
            );
        }
        // no negative zero at n = 1
        assert_eq!(mean_log_coordinate_f64(dim(1)).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn sphere_areas() {
        let pi = core::f64::consts::PI;
        assert!((sphere_area(dim(2)) - 2.0 * pi).abs() < 1e-12);
        assert!((sphere_area(dim(3)) - 4.0 * pi).abs() < 1e-12);
        assert!((sphere_area(dim(4)) - 2.0 * pi * pi).abs() < 1e-12);
    }

    #[test]
    fn radial_moments() {
        let pi = core::f64::consts::PI;
        assert!((radial_moment(dim(2)) - 1.0).abs() < 1e-14);
        assert!((radial_moment(dim(4)) - 2.0).abs() < 1e-13);
        assert!((radial_moment(dim(3)) - (pi / 2.0).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn radial_log_moments_closed_forms() {
        // (log 2 - gamma) / 2
        let expected2 = 0.5 * (LN_2 - EULER_GAMMA);
        assert!((radial_log_moment(dim(2)) - expected2).abs() < 1e-14);
        // -sqrt(pi/8) (gamma + log 2)
        let pi = core::f64::consts::PI;
        let expected1 = -(pi / 8.0).sqrt() * (EULER_GAMMA + LN_2);
        assert!((radial_log_moment(dim(1)) - expected1).abs() < 1e-13);
        // log 2 + psi(2) = log 2 + 1 - gamma
        let expected4 = LN_2 + 1.0 - EULER_GAMMA;
        assert!((radial_log_moment(dim(4)) - expected4).abs() < 1e-13);
    }

    #[test]
    fn gaussian_log_radius_means() {
        assert!((gaussian_log_radius_mean(dim(2)) - 0.5 * (LN_2 - EULER_GAMMA)).abs() < 1e-15);
        assert!((gaussian_log_radius_mean(dim(1)) + 0.5 * (EULER_GAMMA + LN_2)).abs() < 1e-15);
        // ratio of the two radial moments
        for n in 1..=40usize {
            let d = dim(n);
            let ratio = radial_log_moment(d) / radial_moment(d);
            assert!(
                (gaussian_log_radius_mean(d) - ratio).abs() < 1e-12,
                "moment ratio at n = {n}"
            );
        }
    }

    #[test]
    fn ratio_to_f64_handles_huge_rationals() {
        // H_2048 has a numerator of ~900 digits
        let h = harmonic(2048);
        let direct = harmonic_f64(2048);
        assert!((ratio_to_f64(&h) - direct).abs() < 1e-11);
        assert_eq!(ratio_to_f64(&rat(-1, 1)), -1.0);
        assert_eq!(ratio_to_f64(&rat(3, 4)), 0.75);
        assert_eq!(ratio_to_f64(&BigRational::zero()), 0.0);
    }

    #[test]
    fn combination_display() {
        use alloc::string::ToString;
        assert_eq!(GammaLogCombination::zero().to_string(), "0");
        assert_eq!(digamma_half(dim(1)).to_string(), "-γ - 2·log 2");
        assert_eq!(mean_log_coordinate(dim(3)).to_string(), "-1");
        assert_eq!(xi(dim(2)).to_string(), "-1/2 - log 2");
    }

    #[test]
    fn scale_and_ops_are_exact() {
        let a = glc(rat(1, 3), rat(2, 1), rat(-1, 2));
        let b = a.clone().add(a.clone());
        assert_eq!(b, a.scale(&rat(2, 1)));
        assert_eq!(a.clone().sub(a.clone()), GammaLogCombination::zero());
        assert_eq!(-a.clone(), a.scale(&rat(-1, 1)));
    }
}
