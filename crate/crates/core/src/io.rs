//! File formats: frame and matrix JSON, Wigner-table CSV, PGM heatmaps.
//!
//! Complex numbers are written as `[re, im]` pairs. CSV values use 17 significant
//! digits so tables survive a write/read cycle bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::composite::CompositeWignerTable;
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{c, CMatrix, CVector};
use crate::opframes::WignerTable;

/// `{ "d": int, "vectors": [[[re, im], …], …] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub d: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

/// `{ "rows": int, "cols": int, "entries": [[[re, im], …], …] }`, rows outermost.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&Frame> for FrameJson {
    fn from(frame: &Frame) -> Self {
        FrameJson {
            d: frame.d(),
            vectors: frame
                .vectors()
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<FrameJson> for Frame {
    type Error = Error;

    fn try_from(json: FrameJson) -> Result<Frame> {
        if let Some(bad) = json.vectors.iter().position(|v| v.len() != json.d) {
            return Err(Error::input(format!(
                "frame vector {bad} does not have the declared dimension {}",
                json.d
            )));
        }
        Frame::new(
            json.vectors
                .iter()
                .map(|v| CVector::from_iterator(v.len(), v.iter().map(|p| c(p[0], p[1]))))
                .collect(),
        )
    }
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<CMatrix> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::input(format!(
                "matrix entries do not match the declared shape {}x{}",
                json.rows, json.cols
            )));
        }
        Ok(CMatrix::from_fn(json.rows, json.cols, |i, j| {
            let p = json.entries[i][j];
            c(p[0], p[1])
        }))
    }
}

pub fn frame_to_json(frame: &Frame) -> String {
    serde_json::to_string_pretty(&FrameJson::from(frame)).expect("frame serializes")
}

pub fn frame_from_json(text: &str) -> Result<Frame> {
    let json: FrameJson = serde_json::from_str(text)?;
    Frame::try_from(json)
}

pub fn write_frame(path: &Path, frame: &Frame) -> Result<()> {
    fs::write(path, frame_to_json(frame))?;
    Ok(())
}

pub fn read_frame(path: &Path) -> Result<Frame> {
    frame_from_json(&fs::read_to_string(path)?)
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from(m)).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let json: MatrixJson = serde_json::from_str(text)?;
    CMatrix::try_from(json)
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    matrix_from_json(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    fs::write(path, matrix_to_json(m))?;
    Ok(())
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with header `j,k,value`, rows in lexicographic `(j, k)` order.
pub fn wigner_to_csv(table: &WignerTable) -> String {
    let n = table.count();
    let mut out = String::from("j,k,value\n");
    for j in 0..n {
        for k in 0..n {
            writeln!(out, "{j},{k},{}", fmt_f64(table.get(j, k))).unwrap();
        }
    }
    out
}

pub fn wigner_from_csv(text: &str) -> Result<WignerTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "j,k,value" => {}
        _ => return Err(Error::input("expected CSV header 'j,k,value'")),
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parse_err = || Error::input(format!("malformed CSV row {}: '{line}'", lineno + 2));
        if fields.len() != 3 {
            return Err(parse_err());
        }
        let j: usize = fields[0].parse().map_err(|_| parse_err())?;
        let k: usize = fields[1].parse().map_err(|_| parse_err())?;
        let v: f64 = fields[2].parse().map_err(|_| parse_err())?;
        rows.push((j, k, v));
    }
    let n = (rows.len() as f64).sqrt().round() as usize;
    if n * n != rows.len() || n == 0 {
        return Err(Error::input(format!("{} rows do not form a square table", rows.len())));
    }
    let mut table = WignerTable::zeros(n);
    for (idx, (j, k, v)) in rows.into_iter().enumerate() {
        if (j, k) != (idx / n, idx % n) {
            return Err(Error::input(format!("row ({j},{k}) is out of lexicographic order")));
        }
        table.set(j, k, v);
    }
    Ok(table)
}

/// CSV with header `j,l,k,m,value`, flattened lexicographically.
pub fn composite_to_csv(table: &CompositeWignerTable) -> String {
    let (n1, n2) = table.counts();
    let mut out = String::from("j,l,k,m,value\n");
    for j in 0..n1 {
        for l in 0..n2 {
            for k in 0..n1 {
                for m in 0..n2 {
                    writeln!(out, "{j},{l},{k},{m},{}", fmt_f64(table.get(j, l, k, m))).unwrap();
                }
            }
        }
    }
    out
}

/// Plain (P2) grayscale PGM of a table: row `j`, column `k`, values mapped affinely
/// from `[min, max]` to `[0, 255]`. A constant table maps to 0. The range is kept
/// in a header comment.
pub fn wigner_to_pgm(table: &WignerTable) -> String {
    let n = table.count();
    let (lo, hi) = table
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let span = hi - lo;
    let mut out = String::new();
    writeln!(out, "P2").unwrap();
    writeln!(out, "# min={} max={}", fmt_f64(lo), fmt_f64(hi)).unwrap();
    writeln!(out, "{n} {n}").unwrap();
    writeln!(out, "255").unwrap();
    for j in 0..n {
        let row: Vec<String> = (0..n)
            .map(|k| {
                let level = if span > 0.0 { ((table.get(j, k) - lo) / span * 255.0).round() } else { 0.0 };
                (level as u8).to_string()
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}
