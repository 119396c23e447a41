//! JSON assembly. All numbers go through serde_json's shortest round-trip
//! encoding and field order is fixed, so identical inputs give byte-identical
//! documents.

use avgdist::specfun::{self, GammaLogCombination, SphereDimension};
use avgdist::{BoundsReport, DistortionEstimate};
use serde_json::{json, Value};

/// Exact rationals for the constants block are computed up to this dimension;
/// past it the arbitrary-precision harmonic sums get expensive and only the
/// double-precision values are reported.
pub const EXACT_DIM_CAP: usize = 4096;

fn glc_json(c: &GammaLogCombination) -> Value {
    json!({
        "rational": c.rational_part().to_string(),
        "gamma_coeff": c.gamma_coeff().to_string(),
        "log2_coeff": c.log2_coeff().to_string(),
        "value": c.to_real(),
    })
}

fn f64_only_json(value: f64) -> Value {
    json!({
        "rational": null,
        "gamma_coeff": null,
        "log2_coeff": null,
        "value": value,
    })
}

/// The per-dimension constants block: `psi(n/2)`, the sharp lower-bound
/// constant, its as-printed variant, the sphere area, and the bound gap.
pub fn constants_json(n: SphereDimension) -> Value {
    let exact = n.get() <= EXACT_DIM_CAP;
    let psi = if exact {
        glc_json(&specfun::digamma_half(n))
    } else {
        f64_only_json(specfun::digamma_half_f64(n))
    };
    let mlc = if exact {
        glc_json(&specfun::mean_log_coordinate(n))
    } else {
        f64_only_json(specfun::mean_log_coordinate_f64(n))
    };
    let xi = if n.get() < 2 {
        Value::Null
    } else if exact {
        glc_json(&specfun::xi(n))
    } else {
        // xi = mean_log_coordinate - 1/n at even n, equal at odd n
        let mut v = specfun::mean_log_coordinate_f64(n);
        if n.get().is_multiple_of(2) {
            v -= 1.0 / n.get() as f64;
        }
        f64_only_json(v)
    };
    let gap = if n.get() >= 2 {
        json!(avgdist::bound_gap(n))
    } else {
        Value::Null
    };
    json!({
        "psi_half": psi,
        "mean_log_coordinate": mlc,
        "xi": xi,
        "sphere_area": specfun::sphere_area(n),
        "bound_gap": gap,
    })
}

pub fn estimate_json(est: &DistortionEstimate) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("value".into(), json!(est.value));
    obj.insert("method".into(), json!(est.method.name()));
    if let Some(se) = est.std_error {
        obj.insert("std_error".into(), json!(se));
    }
    if let Some(used) = est.samples_used {
        obj.insert("samples_used".into(), json!(used));
    }
    if let Some(skipped) = est.skipped {
        obj.insert("skipped".into(), json!(skipped));
    }
    Value::Object(obj)
}

pub fn bounds_json(b: &BoundsReport) -> Value {
    json!({
        "half_log_sum_sq": b.half_log_sum_sq,
        "lower": b.lower,
        "upper": b.upper,
        "j_lower": b.j_lower,
        "j_upper": b.j_upper,
        "gap": b.gap,
    })
}
