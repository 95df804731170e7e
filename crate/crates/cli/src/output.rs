//! Deterministic file output: rounded JSON, atomic writes and a metadata
//! sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use fbp_core::report::round_significant;
use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds every float in the tree to twelve significant digits.
pub fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_significant(x, SIGNIFICANT_DIGITS)))
            {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json<T: serde::Serialize>(data: &T) -> serde_json::Result<String> {
    let mut value = serde_json::to_value(data)?;
    round_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

#[derive(serde::Serialize)]
pub struct RunMeta<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub arguments: Vec<String>,
    pub sample_count: usize,
    pub elapsed_seconds: f64,
    pub unix_time: u64,
}

/// Emits `contents` to `out` (with sidecar) or to stdout.
pub fn emit(out: Option<&Path>, contents: &str, meta: &RunMeta<'_>) -> std::io::Result<()> {
    match out {
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            write_atomic(path, contents)?;
            let meta = serde_json::to_string_pretty(meta).map_err(std::io::Error::other)?;
            write_atomic(&sidecar_path(path), &(meta + "\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_and_paths() {
        let mut v = serde_json::json!({"a": [0.1234567890123456, 3], "b": {"c": -2.0000000000004}});
        round_floats(&mut v);
        assert_eq!(v["a"][0], 0.123456789012);
        assert_eq!(v["a"][1], 3);
        assert_eq!(v["b"]["c"], -2.0);
        assert_eq!(sidecar_path(Path::new("out/x.json")), Path::new("out/x.json.meta.json"));
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
