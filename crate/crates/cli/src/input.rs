//! Input parsing: matrices and sigma lists from CSV or JSON files, or inline.

use std::fs;
use std::path::{Path, PathBuf};

use avgdist::{DenseMatrix, SingularSpectrum, SpectrumError};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SourceFormat {
    Csv,
    Json,
}

/// Where the spectrum comes from; exactly one per invocation.
#[derive(Clone, Debug)]
pub enum InputSource {
    /// Square matrix file: CSV rows or `{"matrix": [[...]]}`.
    MatrixFile {
        path: PathBuf,
        format: Option<SourceFormat>,
    },
    /// Sigma file: one value per line, or `{"sigmas": [...]}`.
    SigmaFile {
        path: PathBuf,
        format: Option<SourceFormat>,
    },
    /// Comma-separated values given on the command line.
    SigmaInline(Vec<f64>),
}

/// Jacobi tolerance used when a matrix input must be decomposed.
pub const SVD_TOL: f64 = 1e-12;

/// Parses `--sigmas` as an inline list when every comma-separated token is a
/// number; anything else is a file path.
pub fn sigma_source(arg: &str, format: Option<SourceFormat>) -> InputSource {
    let tokens: Vec<&str> = arg.split(',').map(str::trim).collect();
    let parsed: Option<Vec<f64>> = tokens
        .iter()
        .map(|t| if t.is_empty() { None } else { t.parse().ok() })
        .collect();
    match parsed {
        Some(values) if !values.is_empty() => InputSource::SigmaInline(values),
        _ => InputSource::SigmaFile {
            path: PathBuf::from(arg),
            format,
        },
    }
}

fn detect_format(path: &Path, requested: Option<SourceFormat>) -> Result<SourceFormat, CliError> {
    if let Some(f) = requested {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(SourceFormat::Csv),
        Some("json") => Ok(SourceFormat::Json),
        _ => Err(CliError::validation(format!(
            "cannot infer format of '{}'; use --format csv|json",
            path.display()
        ))),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read '{}': {e}", path.display())))
}

fn parse_number(token: &str, context: &str) -> Result<f64, CliError> {
    token
        .trim()
        .parse()
        .map_err(|_| CliError::validation(format!("{context}: '{}' is not a number", token.trim())))
}

fn parse_matrix_csv(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, CliError> = line
            .split(',')
            .map(|t| parse_number(t, &format!("matrix row {}", i + 1)))
            .collect();
        rows.push(row?);
    }
    Ok(rows)
}

fn json_value(text: &str) -> Result<serde_json::Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::validation(format!("invalid JSON: {e}")))
}

fn json_number(v: &serde_json::Value, context: &str) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| CliError::validation(format!("{context}: expected a number, got {v}")))
}

fn parse_matrix_json(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let root = json_value(text)?;
    let rows = root
        .get("matrix")
        .and_then(|m| m.as_array())
        .ok_or_else(|| CliError::validation("expected {\"matrix\": [[...]]}".to_string()))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let cells = row
                .as_array()
                .ok_or_else(|| CliError::validation(format!("matrix row {} is not an array", i + 1)))?;
            cells
                .iter()
                .map(|c| json_number(c, &format!("matrix row {}", i + 1)))
                .collect()
        })
        .collect()
}

fn parse_sigmas_csv(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        values.push(parse_number(line, &format!("line {}", i + 1))?);
    }
    Ok(values)
}

fn parse_sigmas_json(text: &str) -> Result<Vec<f64>, CliError> {
    let root = json_value(text)?;
    let values = root
        .get("sigmas")
        .and_then(|s| s.as_array())
        .ok_or_else(|| CliError::validation("expected {\"sigmas\": [...]}".to_string()))?;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| json_number(v, &format!("sigma {}", i + 1)))
        .collect()
}

fn spectrum_error(e: SpectrumError) -> CliError {
    match e {
        SpectrumError::NoConvergence { .. } => CliError::numerical(e.to_string()),
        _ => CliError::validation(e.to_string()),
    }
}

/// Loads, validates, and (for matrices) decomposes the input into a spectrum.
pub fn load_spectrum(source: &InputSource) -> Result<SingularSpectrum, CliError> {
    match source {
        InputSource::MatrixFile { path, format } => {
            let text = read(path)?;
            let rows = match detect_format(path, *format)? {
                SourceFormat::Csv => parse_matrix_csv(&text)?,
                SourceFormat::Json => parse_matrix_json(&text)?,
            };
            let matrix = DenseMatrix::from_rows(&rows).map_err(spectrum_error)?;
            matrix.singular_values(SVD_TOL).map_err(spectrum_error)
        }
        InputSource::SigmaFile { path, format } => {
            let text = read(path)?;
            let values = match detect_format(path, *format)? {
                SourceFormat::Csv => parse_sigmas_csv(&text)?,
                SourceFormat::Json => parse_sigmas_json(&text)?,
            };
            SingularSpectrum::from_values(&values).map_err(spectrum_error)
        }
        InputSource::SigmaInline(values) => {
            SingularSpectrum::from_values(values).map_err(spectrum_error)
        }
    }
}

/// Reads a sigma sequence file for the LLN scan: every entry must be a
/// strictly positive real.
pub fn load_positive_sequence(path: &Path, format: Option<SourceFormat>) -> Result<Vec<f64>, CliError> {
    let text = read(path)?;
    let values = match detect_format(path, format)? {
        SourceFormat::Csv => parse_sigmas_csv(&text)?,
        SourceFormat::Json => parse_sigmas_json(&text)?,
    };
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(CliError::validation(format!(
                "sequence entry {} must be a positive real, got {v}",
                i + 1
            )));
        }
    }
    Ok(values)
}
