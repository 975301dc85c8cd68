//! Plain-text field dumps: `#`-prefixed `key = value` header lines followed
//! by two whitespace-separated columns (radius, value).

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{RadialError, Result};
use crate::field::RadialField;
use crate::grid::RadialGrid;

/// Header metadata beyond the grid itself.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DumpMeta {
    pub alpha: f64,
    pub rho: f64,
    /// Additional `key = value` pairs, e.g. a configuration hash.
    pub extra: Vec<(String, String)>,
}

pub fn write_dump<W: Write>(mut out: W, field: &RadialField, meta: &DumpMeta) -> Result<()> {
    let g = field.grid();
    writeln!(out, "# n = {}", g.n())?;
    writeln!(out, "# r_max = {:e}", g.r_max())?;
    writeln!(out, "# alpha = {:e}", meta.alpha)?;
    writeln!(out, "# rho = {:e}", meta.rho)?;
    for (k, v) in &meta.extra {
        writeln!(out, "# {k} = {v}")?;
    }
    for (r, v) in g.nodes().iter().zip(field.values()) {
        writeln!(out, "{r:.17e} {v:.17e}")?;
    }
    Ok(())
}

fn parse_f64(key: &str, s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| RadialError::Parse(format!("bad value for {key}: {s:?}")))
}

pub fn read_dump<R: BufRead>(input: R) -> Result<(RadialField, DumpMeta)> {
    let mut n = None;
    let mut r_max = None;
    let mut meta = DumpMeta::default();
    let mut values = Vec::new();
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            let Some((k, v)) = h.split_once('=') else { continue };
            let (k, v) = (k.trim(), v.trim());
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|_| RadialError::Parse(format!("bad n: {v:?}")))?),
                "r_max" => r_max = Some(parse_f64(k, v)?),
                "alpha" => meta.alpha = parse_f64(k, v)?,
                "rho" => meta.rho = parse_f64(k, v)?,
                _ => meta.extra.push((k.to_string(), v.to_string())),
            }
            continue;
        }
        let mut cols = line.split_whitespace();
        let (_, Some(v)) = (cols.next(), cols.next()) else {
            return Err(RadialError::Parse(format!("expected two columns: {line:?}")));
        };
        values.push(parse_f64("value", v)?);
    }
    let n = n.ok_or_else(|| RadialError::Parse("missing n".into()))?;
    let r_max = r_max.ok_or_else(|| RadialError::Parse("missing r_max".into()))?;
    let grid = Arc::new(RadialGrid::new(n, r_max)?);
    Ok((RadialField::new(grid, values)?, meta))
}
