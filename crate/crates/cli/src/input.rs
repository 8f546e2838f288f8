//! Loading matrices, tableaux, and rational numbers from the command line.
//!
//! Matrix files are JSON 2-D arrays; entries are rational strings (`"-1/216"`,
//! `"0.304"`), integers, or `{"re": "...", "im": "..."}` pairs. Floating-point
//! literals are rejected so every input survives parsing exactly. Tableau
//! files carry `{"s", "a", "b"}` with the same entry syntax.

use std::path::Path;

use num_rational::BigRational;

use hypostab_core::exact::parse_rational;
use hypostab_core::hypo::{rotation_generator, staircase};
use hypostab_core::rk::ButcherTableau;
use hypostab_core::MatrixExact;

use crate::errors::{CliError, Result};

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn load_matrix(path: &Path) -> Result<MatrixExact> {
    let text = read_file(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not a matrix file: {e}", path.display())))
}

/// Resolve a `--tableau` argument: one of the bundled reference names, or a
/// path to a tableau file.
pub fn load_tableau(spec: &str) -> Result<ButcherTableau> {
    let bundled = match spec {
        "euler" => Some(include_str!("../data/tableau/euler.json")),
        "heun2" => Some(include_str!("../data/tableau/heun2.json")),
        "kutta3" => Some(include_str!("../data/tableau/kutta3.json")),
        "rk4" => Some(include_str!("../data/tableau/rk4.json")),
        _ => None,
    };
    let text = match bundled {
        Some(t) => t.to_string(),
        None => read_file(Path::new(spec))?,
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{spec} is not a tableau: {e}")))
}

pub fn parse_positive_rational(flag: &str, text: &str) -> Result<BigRational> {
    let q = parse_rational(text)
        .map_err(|e| CliError::Usage(format!("invalid value for {flag}: {e}")))?;
    if q <= BigRational::new(0.into(), 1.into()) {
        return Err(CliError::Usage(format!("{flag} must be positive")));
    }
    Ok(q)
}

/// One matrix from the mutually exclusive source flags.
pub fn resolve_matrix(
    matrix: Option<&Path>,
    stairs: Option<usize>,
    rotation: bool,
) -> Result<(String, MatrixExact)> {
    match (matrix, stairs, rotation) {
        (Some(path), None, false) => {
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            Ok((label, load_matrix(path)?))
        }
        (None, Some(n), false) => Ok((format!("staircase({n})"), staircase(n))),
        (None, None, true) => Ok(("rotation".to_string(), rotation_generator())),
        _ => Err(CliError::Usage(
            "choose exactly one of --matrix, --staircase, --rotation".to_string(),
        )),
    }
}
