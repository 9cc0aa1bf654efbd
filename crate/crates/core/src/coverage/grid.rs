use serde::{Deserialize, Serialize};

use crate::channel::MAX_AERIAL_ALTITUDE_M;
use crate::error::{Error, Result};

/// Index of a grid cell: `ix` grows east, `iy` grows north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub ix: usize,
    pub iy: usize,
}

impl Cell {
    pub const fn new(ix: usize, iy: usize) -> Self {
        Self { ix, iy }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.ix, self.iy)
    }
}

/// Horizontal discretization of the airspace at one altitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub cell_size_m: f64,
    pub altitude_m: f64,
}

impl GridSpec {
    /// Square map `[0, side] x [0, side]`.
    pub fn square(side_m: f64, cell_size_m: f64, altitude_m: f64) -> Self {
        Self {
            x_min: 0.0,
            y_min: 0.0,
            x_max: side_m,
            y_max: side_m,
            cell_size_m,
            altitude_m,
        }
    }

    /// Grid with exactly `nx` by `ny` cells anchored at the origin.
    pub fn with_cells(nx: usize, ny: usize, cell_size_m: f64, altitude_m: f64) -> Self {
        Self {
            x_min: 0.0,
            y_min: 0.0,
            x_max: nx as f64 * cell_size_m,
            y_max: ny as f64 * cell_size_m,
            cell_size_m,
            altitude_m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_size_m > 0.0 && self.cell_size_m.is_finite()) {
            return Err(Error::Config("cell size must be positive".into()));
        }
        if !(self.x_max > self.x_min && self.y_max > self.y_min) {
            return Err(Error::Config("grid extent must be non-empty".into()));
        }
        if !(self.altitude_m > 0.0 && self.altitude_m <= MAX_AERIAL_ALTITUDE_M) {
            return Err(Error::Config(format!(
                "grid altitude must lie in (0, 300] m, got {}",
                self.altitude_m
            )));
        }
        Ok(())
    }

    pub fn nx(&self) -> usize {
        (((self.x_max - self.x_min) / self.cell_size_m).ceil() as usize).max(1)
    }

    pub fn ny(&self) -> usize {
        (((self.y_max - self.y_min) / self.cell_size_m).ceil() as usize).max(1)
    }

    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.ix < self.nx() && cell.iy < self.ny()
    }

    /// Row-major (south row first) linear index.
    pub fn index(&self, cell: Cell) -> usize {
        cell.iy * self.nx() + cell.ix
    }

    pub fn cell(&self, index: usize) -> Cell {
        let nx = self.nx();
        Cell::new(index % nx, index / nx)
    }

    /// Center of a cell in metres.
    pub fn center(&self, cell: Cell) -> (f64, f64) {
        (
            self.x_min + (cell.ix as f64 + 0.5) * self.cell_size_m,
            self.y_min + (cell.iy as f64 + 0.5) * self.cell_size_m,
        )
    }

    pub fn center_xyz(&self, cell: Cell) -> [f64; 3] {
        let (x, y) = self.center(cell);
        [x, y, self.altitude_m]
    }

    pub fn with_altitude(&self, altitude_m: f64) -> Self {
        Self {
            altitude_m,
            ..self.clone()
        }
    }

    /// South-west and north-east corner cells.
    pub fn corners(&self) -> (Cell, Cell) {
        (Cell::new(0, 0), Cell::new(self.nx() - 1, self.ny() - 1))
    }
}

/// Serving-BS map at one altitude. Id 0 marks a coverage hole.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityGrid {
    spec: GridSpec,
    strongest_id: Vec<u32>,
    best_sir_db: Vec<f64>,
    serving_id: Vec<u32>,
    num_bs: u32,
    sir_threshold_db: f64,
}

impl ConnectivityGrid {
    /// Builds a grid from per-cell best SIR and strongest-station ids; cells
    /// whose SIR falls below `sir_threshold_db` become holes.
    pub fn from_sir(
        spec: GridSpec,
        strongest_id: Vec<u32>,
        best_sir_db: Vec<f64>,
        num_bs: u32,
        sir_threshold_db: f64,
    ) -> Result<Self> {
        if strongest_id.len() != spec.len() || best_sir_db.len() != spec.len() {
            return Err(Error::Config(format!(
                "grid needs {} cells, got {} ids and {} SIR values",
                spec.len(),
                strongest_id.len(),
                best_sir_db.len()
            )));
        }
        if let Some(bad) = strongest_id.iter().find(|&&id| id > num_bs) {
            return Err(Error::Config(format!(
                "serving id {bad} exceeds the station count {num_bs}"
            )));
        }
        let serving_id = classify(&strongest_id, &best_sir_db, sir_threshold_db);
        Ok(Self {
            spec,
            strongest_id,
            best_sir_db,
            serving_id,
            num_bs,
            sir_threshold_db,
        })
    }

    /// Grid given directly by serving ids (south row first). Covered cells
    /// get an infinite SIR and holes a negative infinite one, with a 0 dB
    /// threshold.
    pub fn from_ids(spec: GridSpec, serving_id: Vec<u32>) -> Result<Self> {
        let num_bs = serving_id.iter().copied().max().unwrap_or(0);
        let sir = serving_id
            .iter()
            .map(|&id| if id == 0 { f64::NEG_INFINITY } else { f64::INFINITY })
            .collect();
        Self::from_sir(spec, serving_id, sir, num_bs, 0.0)
    }

    /// Same SIR field reclassified against another threshold.
    pub fn with_threshold(&self, sir_threshold_db: f64) -> Self {
        Self {
            serving_id: classify(&self.strongest_id, &self.best_sir_db, sir_threshold_db),
            sir_threshold_db,
            ..self.clone()
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn num_bs(&self) -> u32 {
        self.num_bs
    }

    pub fn sir_threshold_db(&self) -> f64 {
        self.sir_threshold_db
    }

    pub fn serving_ids(&self) -> &[u32] {
        &self.serving_id
    }

    pub fn best_sir_db(&self) -> &[f64] {
        &self.best_sir_db
    }

    pub fn serving_id(&self, cell: Cell) -> u32 {
        self.serving_id[self.spec.index(cell)]
    }

    pub fn sir_db(&self, cell: Cell) -> f64 {
        self.best_sir_db[self.spec.index(cell)]
    }

    pub fn is_hole(&self, cell: Cell) -> bool {
        self.serving_id(cell) == 0
    }

    pub fn hole_count(&self) -> usize {
        self.serving_id.iter().filter(|&&id| id == 0).count()
    }

    pub fn hole_fraction(&self) -> f64 {
        self.hole_count() as f64 / self.serving_id.len() as f64
    }

    /// Serving ids as rows, north row first.
    pub fn rows_north_up(&self) -> Vec<&[u32]> {
        let nx = self.spec.nx();
        self.serving_id.chunks(nx).rev().collect()
    }
}

fn classify(strongest: &[u32], sir_db: &[f64], threshold_db: f64) -> Vec<u32> {
    strongest
        .iter()
        .zip(sir_db)
        .map(|(&id, &sir)| if sir < threshold_db { 0 } else { id })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts_use_ceiling() {
        let s = GridSpec::square(2000.0, 50.0, 100.0);
        assert_eq!((s.nx(), s.ny()), (40, 40));
        let s = GridSpec::square(2010.0, 50.0, 100.0);
        assert_eq!(s.nx(), 41);
    }

    #[test]
    fn index_round_trip_and_centers() {
        let s = GridSpec::with_cells(5, 3, 10.0, 100.0);
        for i in 0..s.len() {
            assert_eq!(s.index(s.cell(i)), i);
        }
        assert_eq!(s.center(Cell::new(0, 0)), (5.0, 5.0));
        assert_eq!(s.center(Cell::new(4, 2)), (45.0, 25.0));
    }

    #[test]
    fn validate_catches_bad_specs() {
        assert!(GridSpec::square(100.0, 0.0, 100.0).validate().is_err());
        assert!(GridSpec::square(100.0, 10.0, 301.0).validate().is_err());
        assert!(GridSpec::square(100.0, 10.0, 0.0).validate().is_err());
        assert!(GridSpec::square(100.0, 10.0, 300.0).validate().is_ok());
    }

    #[test]
    fn threshold_reclassification_is_nested() {
        let spec = GridSpec::with_cells(3, 1, 10.0, 100.0);
        let g = ConnectivityGrid::from_sir(spec, vec![1, 2, 1], vec![-3.0, 0.0, 2.5], 2, 0.0)
            .unwrap();
        assert_eq!(g.serving_ids(), &[0, 2, 1]);
        assert_eq!(g.with_threshold(1.0).serving_ids(), &[0, 0, 1]);
        assert_eq!(g.with_threshold(f64::NEG_INFINITY).serving_ids(), &[1, 2, 1]);
    }

    #[test]
    fn rows_are_north_up() {
        let spec = GridSpec::with_cells(2, 2, 10.0, 100.0);
        let g = ConnectivityGrid::from_ids(spec, vec![1, 2, 3, 0]).unwrap();
        assert_eq!(g.rows_north_up(), vec![&[3, 0][..], &[1, 2][..]]);
        assert_eq!(g.num_bs(), 3);
        assert!(g.is_hole(Cell::new(1, 1)));
    }

    #[test]
    fn from_sir_rejects_mismatched_lengths() {
        let spec = GridSpec::with_cells(2, 2, 10.0, 100.0);
        assert!(ConnectivityGrid::from_ids(spec, vec![1, 2]).is_err());
    }
}
