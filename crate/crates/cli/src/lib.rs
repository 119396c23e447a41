//! Library half of the `avgdist` command-line tool.
//!
//! Each `run_*` function implements one subcommand end to end and returns the
//! JSON document the binary prints on stdout. Failures split into validation
//! errors (exit 2) and numerical failures (exit 3).

pub mod input;
pub mod report;

use avgdist::specfun::SphereDimension;
use avgdist::{
    closed_form, distortion_bounds, lln_scan, mc_estimate, quad_estimate, EstimateError,
    EstimateMethod, LlnError, McConfig, QuadConfig,
};
use serde_json::{json, Value};
use std::path::Path;

use input::InputSource;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliError {
    /// Bad input or flags; exit code 2.
    Validation(String),
    /// The computation itself failed (no convergence, tolerance not reached);
    /// exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Self::Numerical(msg.into())
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Validation(m) | Self::Numerical(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

fn estimate_error(e: EstimateError) -> CliError {
    CliError::numerical(e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Mc,
    Quad,
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Mc => "mc",
            Self::Quad => "quad",
            Self::Auto => "auto",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComputeRequest {
    pub source: InputSource,
    pub method: Method,
    pub mc: McConfig,
    pub quad: QuadConfig,
}

fn validate_configs(mc: &McConfig, quad: &QuadConfig) -> Result<(), CliError> {
    if mc.samples < 2 {
        return Err(CliError::validation("--samples must be at least 2"));
    }
    if !(quad.abs_tol > 0.0 && quad.abs_tol <= 1e-2) {
        return Err(CliError::validation("--tol must lie in (0, 1e-2]"));
    }
    Ok(())
}

/// `compute`: estimate `I(A)` and report it with bounds and constants.
pub fn run_compute(req: &ComputeRequest) -> Result<Value, CliError> {
    validate_configs(&req.mc, &req.quad)?;
    let spectrum = input::load_spectrum(&req.source)?;

    let estimate = match req.method {
        Method::Quad => quad_estimate(&spectrum, &req.quad).map_err(estimate_error)?,
        Method::Mc => mc_estimate(&spectrum, &req.mc).map_err(estimate_error)?,
        Method::Auto => match closed_form(&spectrum) {
            Some(est) => est,
            None => quad_estimate(&spectrum, &req.quad).map_err(estimate_error)?,
        },
    };
    let bounds = distortion_bounds(&spectrum);

    // a quadrature value outside the bounds means the library is wrong
    if estimate.method == EstimateMethod::Quadrature {
        let slack = 2.0 * req.quad.abs_tol;
        if estimate.value < bounds.lower - slack || estimate.value > bounds.upper + slack {
            return Err(CliError::numerical(format!(
                "internal error: quadrature estimate {} violates bounds [{}, {}]",
                estimate.value, bounds.lower, bounds.upper
            )));
        }
    }

    let mode = match req.mc.mode {
        avgdist::McMode::Projection => "projection",
        avgdist::McMode::GaussianReduction => "reduction",
    };
    Ok(json!({
        "dim": spectrum.dim().get(),
        "sigmas": spectrum.sigmas(),
        "estimate": report::estimate_json(&estimate),
        "bounds": report::bounds_json(&bounds),
        "constants": report::constants_json(spectrum.dim()),
        "provenance": {
            "method": req.method.name(),
            "mode": mode,
            "seed": req.mc.seed,
            "samples": req.mc.samples,
            "tol": req.quad.abs_tol,
            "svd_tol": input::SVD_TOL,
            "version": VERSION,
        },
    }))
}

/// `constants`: the exact per-dimension constants, plus whether the
/// as-printed lower-bound form agrees with the sharp one.
pub fn run_constants(n: usize) -> Result<Value, CliError> {
    let dim = SphereDimension::new(n)
        .ok_or_else(|| CliError::validation("n must be a positive integer"))?;
    let mut doc = serde_json::Map::new();
    doc.insert("n".into(), json!(n));
    let constants = report::constants_json(dim);
    for (k, v) in constants.as_object().expect("object").iter() {
        doc.insert(k.clone(), v.clone());
    }
    let agrees = if (2..=report::EXACT_DIM_CAP).contains(&n) {
        json!(avgdist::xi(dim) == avgdist::mean_log_coordinate(dim))
    } else if n >= 2 {
        json!(n % 2 == 1)
    } else {
        Value::Null
    };
    doc.insert("agrees".into(), agrees);
    Ok(Value::Object(doc))
}

/// `lln`: ratio/condition/deviation scan over prefixes of a sigma sequence.
pub fn run_lln(
    sigma_file: &Path,
    format: Option<input::SourceFormat>,
    dims: &[usize],
    quad: &QuadConfig,
) -> Result<Value, CliError> {
    if !(quad.abs_tol > 0.0 && quad.abs_tol <= 1e-2) {
        return Err(CliError::validation("--tol must lie in (0, 1e-2]"));
    }
    let sequence = input::load_positive_sequence(sigma_file, format)?;
    let diag = lln_scan(&sequence, dims, quad).map_err(|e| match e {
        LlnError::Quadrature(q) => estimate_error(q),
        other => CliError::validation(other.to_string()),
    })?;
    let hyp = diag.hypothesis();
    Ok(json!({
        "dims": diag.dims,
        "ratios": diag.ratios,
        "deviations": diag.deviations,
        "condition_numbers": diag.condition_numbers,
        "hypothesis": {
            "ratios_decreasing": hyp.ratios_decreasing,
            "max_condition_number": hyp.max_condition_number,
        },
        "provenance": { "tol": quad.abs_tol, "version": VERSION },
    }))
}
