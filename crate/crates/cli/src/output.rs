use std::fs;
use std::path::{Path, PathBuf};

use gpp_radial::{write_dump, DumpMeta, RadialField};
use serde::Serialize;
use serde_json::Value;

use crate::error::{LabError, Result};

/// Writes the files of one run into its output directory, each carrying the
/// configuration hash.
#[derive(Debug, Clone)]
pub struct Outputs {
    dir: PathBuf,
    hash: String,
}

impl Outputs {
    pub fn create(dir: &Path, hash: &str) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
        Ok(Self { dir: dir.to_path_buf(), hash: hash.to_string() })
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Serialises `payload` (which must serialise to a JSON object) with an
    /// added `config_hash` key. Keys come out sorted.
    pub fn json<T: Serialize>(&self, name: &str, payload: &T) -> Result<PathBuf> {
        let mut value = serde_json::to_value(payload)?;
        match &mut value {
            Value::Object(map) => {
                map.insert("config_hash".into(), Value::String(self.hash.clone()));
            }
            _ => unreachable!("outputs are JSON objects"),
        }
        let mut text = serde_json::to_string_pretty(&value)?;
        text.push('\n');
        self.text(name, &text)
    }

    pub fn text(&self, name: &str, text: &str) -> Result<PathBuf> {
        let path = self.path(name);
        fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
        Ok(path)
    }

    pub fn profile(&self, name: &str, field: &RadialField, alpha: f64, rho: f64) -> Result<PathBuf> {
        let path = self.path(name);
        let meta = DumpMeta { alpha, rho, extra: vec![("config_hash".into(), self.hash.clone())] };
        let mut buf = Vec::new();
        write_dump(&mut buf, field, &meta)?;
        fs::write(&path, buf).map_err(|e| LabError::io(&path, e))?;
        Ok(path)
    }
}

/// Comma-separated table whose first line records the hash.
pub fn csv_table(hash: &str, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("# config_hash = {hash}\n{}\n", header.join(","));
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
