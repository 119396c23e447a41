//! Property tests for the structural invariants.

mod common;

use avgdist::{
    distortion_bounds, lln_ratio, mc_estimate, sphere_integral_from_gaussian, LogHomogeneousPair,
    McConfig, McMode, SingularSpectrum, SphereDimension,
};
use proptest::prelude::*;

fn sigma_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-2f64..1e2, 1..24)
}

proptest! {
    #[test]
    fn spectrum_is_sorted_and_permutation_blind(mut values in sigma_vec()) {
        let a = SingularSpectrum::from_values(&values).unwrap();
        prop_assert!(a.sigmas().windows(2).all(|w| w[0] >= w[1]));
        values.reverse();
        let b = SingularSpectrum::from_values(&values).unwrap();
        prop_assert_eq!(a.sigmas(), b.sigmas());
        prop_assert_eq!(distortion_bounds(&a), distortion_bounds(&b));
    }

    #[test]
    fn spectrum_rejects_bad_entries(mut values in sigma_vec(), bad in prop::sample::select(
        vec![f64::NAN, f64::INFINITY, -1.0, -1e-300],
    )) {
        values.push(bad);
        prop_assert!(SingularSpectrum::from_values(&values).is_err());
    }

    #[test]
    fn lln_ratio_respects_cauchy_schwarz(values in sigma_vec()) {
        let s = SingularSpectrum::from_values(&values).unwrap();
        let n = values.len() as f64;
        let r = lln_ratio(&s);
        prop_assert!(r <= 1.0 + 1e-12);
        prop_assert!(r >= 1.0 / n - 1e-12);
    }

    #[test]
    fn bounds_order_and_gap_are_dimension_only(values in sigma_vec()) {
        let s = SingularSpectrum::from_values(&values).unwrap();
        let b = distortion_bounds(&s);
        prop_assert!(b.lower <= b.upper);
        let n = SphereDimension::new(values.len()).unwrap();
        if n.get() >= 2 {
            prop_assert!((b.gap - avgdist::bound_gap(n)).abs() < 1e-12);
        }
        prop_assert!((b.j_upper - (b.j_lower + 2.0 * b.gap)).abs() < 1e-12);
    }

    #[test]
    fn reduction_is_linear(g1 in -1e3f64..1e3, r1 in -1e3f64..1e3,
                           g2 in -1e3f64..1e3, r2 in -1e3f64..1e3,
                           alpha in -10f64..10.0, n in 1usize..16) {
        let dim = SphereDimension::new(n).unwrap();
        let pair = |g, r| LogHomogeneousPair { gaussian_integral: g, radial_g_integral: r, dim };
        let lhs = sphere_integral_from_gaussian(&pair(g1 + alpha * g2, r1 + alpha * r2));
        let rhs = sphere_integral_from_gaussian(&pair(g1, r1))
            + alpha * sphere_integral_from_gaussian(&pair(g2, r2));
        let scale = 1.0 + lhs.abs().max(rhs.abs());
        prop_assert!((lhs - rhs).abs() < 1e-9 * scale);
    }

    #[test]
    fn mc_is_deterministic_in_config(values in sigma_vec(), seed in any::<u64>()) {
        let s = SingularSpectrum::from_values(&values).unwrap();
        let cfg = McConfig { samples: 64, seed, mode: McMode::Projection };
        prop_assert_eq!(mc_estimate(&s, &cfg).unwrap(), mc_estimate(&s, &cfg).unwrap());
    }
}
