//! Heatmap files: serving-id CSV matrix (north row first), SIR CSV matrix
//! and a JSON metadata sidecar.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Serialize, Serializer};

use super::grid::ConnectivityGrid;
use crate::error::{Error, Result};

/// Sidecar describing one heatmap file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatmapMetadata {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub cell_size_m: f64,
    pub altitude_m: f64,
    pub nx: usize,
    pub ny: usize,
    #[serde(serialize_with = "ser_float_or_inf")]
    pub sir_threshold_db: f64,
    pub environment: String,
    pub num_bs: u32,
    pub seed: Option<u64>,
    pub hole_cells: usize,
}

impl HeatmapMetadata {
    pub fn describe(grid: &ConnectivityGrid, environment: &str, seed: Option<u64>) -> Self {
        let s = grid.spec();
        Self {
            x_min: s.x_min,
            y_min: s.y_min,
            x_max: s.x_max,
            y_max: s.y_max,
            cell_size_m: s.cell_size_m,
            altitude_m: s.altitude_m,
            nx: s.nx(),
            ny: s.ny(),
            sir_threshold_db: grid.sir_threshold_db(),
            environment: environment.to_string(),
            num_bs: grid.num_bs(),
            seed,
            hole_cells: grid.hole_count(),
        }
    }
}

fn ser_float_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&v.to_string())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_matrix<T: ToString>(path: &Path, rows: impl Iterator<Item = Vec<T>>) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    for row in rows {
        w.write_record(row.iter().map(ToString::to_string))
            .map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the serving-id matrix, north row first.
pub fn write_ids_csv(path: &Path, grid: &ConnectivityGrid) -> Result<()> {
    write_matrix(path, grid.rows_north_up().into_iter().map(<[u32]>::to_vec))
}

/// Writes the best-SIR matrix (dB), north row first. Infinite values are
/// written as `inf` / `-inf`.
pub fn write_sir_csv(path: &Path, grid: &ConnectivityGrid) -> Result<()> {
    let nx = grid.spec().nx();
    write_matrix(path, grid.best_sir_db().chunks(nx).rev().map(<[f64]>::to_vec))
}

/// Writes `<stem>.csv` (ids), `<stem>_sir.csv` and `<stem>.json` into `dir`.
pub fn write_heatmap(
    dir: &Path,
    stem: &str,
    grid: &ConnectivityGrid,
    meta: &HeatmapMetadata,
) -> Result<()> {
    write_ids_csv(&dir.join(format!("{stem}.csv")), grid)?;
    write_sir_csv(&dir.join(format!("{stem}_sir.csv")), grid)?;
    let path = dir.join(format!("{stem}.json"));
    let mut f = create(&path)?;
    serde_json::to_writer_pretty(&mut f, meta)
        .map_err(|e| Error::io(&path, e.into()))?;
    writeln!(f).and_then(|_| f.flush()).map_err(|e| Error::io(&path, e))
}

/// Serving-id matrix as read back from a CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMatrix {
    pub nx: usize,
    pub ny: usize,
    /// South row first, matching [`super::GridSpec::index`].
    pub ids: Vec<u32>,
}

/// Reads a north-up serving-id matrix. Blank lines and lines starting with
/// `#` are ignored.
pub fn read_ids_csv(path: &Path) -> Result<IdMatrix> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::csv(path, e))?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::csv(path, e))?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<u32>().map_err(|_| {
                    Error::Config(format!("{}: invalid serving id {f:?}", path.display()))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        rows.push(row);
    }
    let ny = rows.len();
    let nx = rows.first().map_or(0, Vec::len);
    if ny == 0 || nx == 0 {
        return Err(Error::Config(format!("{}: empty grid", path.display())));
    }
    let ids = rows.into_iter().rev().flatten().collect::<Vec<_>>();
    Ok(IdMatrix { nx, ny, ids })
}
