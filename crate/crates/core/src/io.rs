//! File formats: CSV for grids and panels (17 significant digits, bit-exact
//! round trip), JSON envelopes for metadata, and the config hash embedded in
//! every output.

use crate::error::{Error, Result};
use crate::grid::{GridPath, PathOfPaths};
use crate::levy::{PointSet, PointTriple, SheetGrid, WindowParams};
use crate::sums::PathPanel;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;

/// Decimal rendering used in every CSV: 17 significant digits, enough to
/// reproduce any f64 exactly on parse.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Hash of a canonical config rendering; embedded in output metadata so
/// mixed-provenance inputs can be rejected.
pub fn config_hash(config: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(config).unwrap_or_default();
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hex_digest(&hasher.finalize())
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(out, "{b:02x}");
    }
    out
}

fn parse_f64(field: &str, line: usize, col: &str) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| {
        Error::Data(format!("line {line}: column '{col}': cannot parse '{field}' as a number"))
    })
}

// ---------------------------------------------------------------------------
// Grid paths
// ---------------------------------------------------------------------------

pub fn grid_path_to_csv(x: &GridPath) -> String {
    let m = x.resolution();
    let mut out = String::from("s,value\n");
    for l in 0..=m {
        let s = l as f64 / m as f64;
        let _ = writeln!(out, "{},{}", fmt_f64(s), fmt_f64(x.value(l)));
    }
    out
}

pub fn grid_path_from_csv(text: &str) -> Result<GridPath> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line.trim() != "s,value" {
                return Err(Error::Data(format!("line 1: expected header 's,value', got '{line}'")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (s_field, v_field) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(Error::Data(format!("line {}: expected two columns", idx + 1))),
        };
        parse_f64(s_field, idx + 1, "s")?;
        values.push(parse_f64(v_field, idx + 1, "value")?);
    }
    GridPath::new(values)
}

/// JSON envelope of a grid path (resolution plus values, exactly the
/// in-memory representation).
pub fn grid_path_to_json(x: &GridPath) -> String {
    serde_json::to_string_pretty(x).unwrap()
}

pub fn grid_path_from_json(text: &str) -> Result<GridPath> {
    let path: GridPath =
        serde_json::from_str(text).map_err(|e| Error::Data(format!("bad path JSON: {e}")))?;
    GridPath::new(path.values().to_vec())
}

// ---------------------------------------------------------------------------
// Paths of paths and sheets (long CSV: t,s,value)
// ---------------------------------------------------------------------------

pub fn path_of_paths_to_csv(x: &PathOfPaths) -> String {
    let n = x.time_resolution();
    let m = x.space_resolution();
    let mut out = String::from("t,s,value\n");
    for k in 0..=n {
        let t = k as f64 / n as f64;
        for l in 0..=m {
            let s = l as f64 / m as f64;
            let _ = writeln!(out, "{},{},{}", fmt_f64(t), fmt_f64(s), fmt_f64(x.entry(k).value(l)));
        }
    }
    out
}

fn long_csv_rows(text: &str) -> Result<Vec<(f64, f64, f64)>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line.trim() != "t,s,value" {
                return Err(Error::Data(format!(
                    "line 1: expected header 't,s,value', got '{line}'"
                )));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Data(format!(
                "line {}: expected three columns, got {}",
                idx + 1,
                fields.len()
            )));
        }
        rows.push((
            parse_f64(fields[0], idx + 1, "t")?,
            parse_f64(fields[1], idx + 1, "s")?,
            parse_f64(fields[2], idx + 1, "value")?,
        ));
    }
    Ok(rows)
}

fn grid_shape(rows: &[(f64, f64, f64)]) -> Result<(usize, usize)> {
    if rows.is_empty() {
        return Err(Error::Data("no data rows".into()));
    }
    let m = rows.iter().take_while(|r| r.0 == rows[0].0).count() - 1;
    if m == 0 || rows.len() % (m + 1) != 0 {
        return Err(Error::Data("rows do not form a complete rectangular grid".into()));
    }
    let n = rows.len() / (m + 1) - 1;
    if n == 0 {
        return Err(Error::Data("grid needs at least two time rows".into()));
    }
    Ok((n, m))
}

pub fn path_of_paths_from_csv(text: &str) -> Result<PathOfPaths> {
    let rows = long_csv_rows(text)?;
    let (n, m) = grid_shape(&rows)?;
    let entries = (0..=n)
        .map(|k| {
            GridPath::new(rows[k * (m + 1)..(k + 1) * (m + 1)].iter().map(|r| r.2).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PathOfPaths::new(entries)
}

pub fn sheet_to_csv(sheet: &SheetGrid) -> String {
    let n = sheet.time_resolution();
    let m = sheet.space_resolution();
    let mut out = String::from("t,s,value\n");
    for k in 0..=n {
        let t = sheet.t_max() * k as f64 / n as f64;
        for l in 0..=m {
            let s = l as f64 / m as f64;
            let _ = writeln!(out, "{},{},{}", fmt_f64(t), fmt_f64(s), fmt_f64(sheet.value(k, l)));
        }
    }
    out
}

pub fn sheet_from_csv(text: &str, meta: &SheetMeta) -> Result<SheetGrid> {
    let rows = long_csv_rows(text)?;
    let (n, m) = grid_shape(&rows)?;
    SheetGrid::new(n, m, meta.t_max, meta.centered, rows.iter().map(|r| r.2).collect())
}

/// Sidecar metadata written next to every sheet CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SheetMeta {
    pub command: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub time_resolution: usize,
    pub space_resolution: usize,
    pub t_max: f64,
    pub centered: bool,
    pub config_hash: String,
}

impl SheetMeta {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<SheetMeta> {
        serde_json::from_str(text).map_err(|e| Error::Data(format!("bad sheet metadata: {e}")))
    }
}

// ---------------------------------------------------------------------------
// Point sets (replay format)
// ---------------------------------------------------------------------------

/// Serialized point cloud: a `t,r,w_id` CSV, the direction paths as a panel
/// keyed by `w_id`, and the window/schedule metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetMeta {
    pub window: WindowParams,
    pub schedule: Vec<f64>,
    pub config_hash: String,
}

pub fn point_set_to_csv(points: &PointSet) -> (String, String) {
    let mut rows = String::from("t,r,w_id\n");
    let mut paths: Vec<&GridPath> = Vec::new();
    for p in points.triples() {
        let _ = writeln!(rows, "{},{},{}", fmt_f64(p.t), fmt_f64(p.r), paths.len());
        paths.push(&p.w);
    }
    if paths.is_empty() {
        return (rows, String::new());
    }
    let m = paths[0].resolution();
    let mut panel = String::new();
    let header: Vec<String> = (0..paths.len()).map(|i| format!("w{i}")).collect();
    panel.push_str(&header.join(","));
    panel.push('\n');
    for l in 0..=m {
        let row: Vec<String> = paths.iter().map(|p| fmt_f64(p.value(l))).collect();
        panel.push_str(&row.join(","));
        panel.push('\n');
    }
    (rows, panel)
}

pub fn point_set_from_csv(rows_text: &str, panel_text: &str, meta: &PointSetMeta) -> Result<PointSet> {
    let mut triples = Vec::new();
    if rows_text.lines().skip(1).all(|l| l.trim().is_empty()) {
        return PointSet::from_triples(meta.window, &meta.schedule, triples);
    }
    let paths = panel_from_csv(panel_text)?;
    for (idx, line) in rows_text.lines().enumerate() {
        if idx == 0 {
            if line.trim() != "t,r,w_id" {
                return Err(Error::Data(format!("line 1: expected header 't,r,w_id', got '{line}'")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Data(format!("line {}: expected three columns", idx + 1)));
        }
        let t = parse_f64(fields[0], idx + 1, "t")?;
        let r = parse_f64(fields[1], idx + 1, "r")?;
        let w_id: usize = fields[2].trim().parse().map_err(|_| {
            Error::Data(format!("line {}: column 'w_id': bad index '{}'", idx + 1, fields[2]))
        })?;
        let w = paths
            .1
            .get(w_id)
            .ok_or_else(|| Error::Data(format!("line {}: w_id {} out of range", idx + 1, w_id)))?
            .clone();
        triples.push(PointTriple { t, r, w });
    }
    PointSet::from_triples(meta.window, &meta.schedule, triples)
}

// ---------------------------------------------------------------------------
// Panels (one path per column)
// ---------------------------------------------------------------------------

/// Parse a panel CSV: named columns, one path per column, `m + 1` rows.
/// Errors name the offending row or column.
pub fn panel_from_csv(text: &str) -> Result<(Vec<String>, Vec<GridPath>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Data("empty panel file".into()))?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if names.is_empty() || names.iter().any(|n| n.is_empty()) {
        return Err(Error::Data("line 1: header must name every column".into()));
    }
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::Data(format!(
                "line {}: ragged row: expected {} columns, got {}",
                idx + 1,
                names.len(),
                fields.len()
            )));
        }
        for (c, field) in fields.iter().enumerate() {
            columns[c].push(parse_f64(field, idx + 1, &names[c])?);
        }
    }
    let paths = names
        .iter()
        .zip(columns)
        .map(|(name, col)| {
            GridPath::new(col).map_err(|_| {
                Error::Data(format!("column '{name}': not a valid path (need >= 2 finite values)"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((names, paths))
}

pub fn panel_to_csv(names: &[String], panel: &PathPanel) -> String {
    let mut out = names.join(",");
    out.push('\n');
    let m = panel.resolution();
    for l in 0..=m {
        let row: Vec<String> = panel.paths().iter().map(|p| fmt_f64(p.value(l))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Normalize ingested columns to unit sup norm, failing with the column
/// name when a column is identically zero.
pub fn normalize_panel(names: &[String], paths: Vec<GridPath>) -> Result<Vec<GridPath>> {
    names
        .iter()
        .zip(paths)
        .map(|(name, p)| {
            p.polar()
                .map(|(_, z)| z)
                .map_err(|_| Error::Data(format!("column '{name}' is identically zero")))
        })
        .collect()
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}
