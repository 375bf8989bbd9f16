//! Artifact writing: temp file in the target directory, then rename.

use std::io::Write;
use std::path::Path;

use pansu_core::ExperimentReport;

use crate::CliError;

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// JSON when `path` ends in `.json`, CSV otherwise.
pub fn report_text(report: &ExperimentReport, path: &Path) -> Result<String, CliError> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        Ok(report.to_json()?)
    } else {
        Ok(report.to_csv())
    }
}

/// Writes `report` to `out`, or prints it as CSV.
pub fn emit_report(report: &ExperimentReport, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, &report_text(report, path)?),
        None => {
            print!("{}", report.to_csv());
            Ok(())
        }
    }
}

/// Writes `value` as pretty JSON to `out`, or prints it.
pub fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(pansu_core::Error::from)? + "\n";
    match out {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
