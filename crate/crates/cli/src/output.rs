use std::io::Write;
use std::path::Path;

use htrinomial::geometry::LocusSample;
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path` when given, standard output otherwise.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))
        }
    }
}

/// `x` with 17 significant digits; negative zero prints as zero.
pub fn sig17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn locus_csv(samples: &[LocusSample]) -> String {
    let mut out = String::from("theta,re,im\n");
    for s in samples {
        out.push_str(&format!("{},{},{}\n", sig17(s.theta), sig17(s.value.re), sig17(s.value.im)));
    }
    out
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}
