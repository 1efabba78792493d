//! Reading category files.

use std::path::Path;

use mtcperm_core::{catalog, FusionCategoryData, LoadOptions};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "MTCPERM_TOL";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Data { path: String, source: mtcperm_core::Error },
    #[error("{0}")]
    Config(String),
}

/// `MTCPERM_TOL`, if set.
pub fn env_tolerance() -> Result<Option<f64>, LoadError> {
    match std::env::var(TOL_ENV) {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .map(Some)
            .ok_or_else(|| LoadError::Config(format!("{TOL_ENV}={v} is not a positive number"))),
        Err(_) => Ok(None),
    }
}

/// Load a category from a JSON file.  A path that does not exist but names a
/// bundled category (`fibonacci`, `fibonacci.json`) loads the bundled copy.
///
/// Coherence is *not* enforced here: a perturbed file must reach the
/// consistency suite and fail there.  Structural problems (shapes, unknown
/// labels, malformed JSON) are errors.  `tol` (or `MTCPERM_TOL`) replaces the
/// file's tolerance.
pub fn load_category(path: &str, tol: Option<f64>) -> Result<FusionCategoryData, LoadError> {
    let p = Path::new(path);
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path).to_string();
    let text = match std::fs::read_to_string(p) {
        Ok(t) => t,
        Err(e) => {
            let bundled = catalog::SOURCES.iter().chain(catalog::BROKEN).find(|(n, _)| *n == stem);
            match bundled {
                Some((_, t)) if p.parent().is_none_or(|d| d.as_os_str().is_empty()) => t.to_string(),
                _ => return Err(LoadError::Io { path: path.into(), source: e }),
            }
        }
    };
    let opts = LoadOptions { coherence: false };
    let mut cat = FusionCategoryData::from_json_str(&text, &stem, opts)
        .map_err(|e| LoadError::Data { path: path.into(), source: e })?;
    if let Some(t) = tol.or(env_tolerance()?) {
        cat.set_tolerance(t);
    }
    Ok(cat)
}
