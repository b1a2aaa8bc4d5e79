//! Sampled bounded functions on a grid.
//!
//! A `GridFunction` holds one real per cell, sampled at cell centers. No
//! continuity is enforced: every identity we test is exact at the level of
//! samples. The builtin shapes are sampled in index space so that their
//! geometric level sets land exactly on cell classes (the zero set of the
//! pyramid is the border ring, the zero set of the ramp is the lower half).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Cell, CellSet, Grid, Image, Kind};

/// A named valuewise map applied to sampled function values.
pub type SampledMap = (&'static str, fn(f64) -> f64);

#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Vec<f64>,
    name: String,
}

impl GridFunction {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>, name: impl Into<String>) -> Result<Self> {
        if values.len() != grid.cell_count() {
            return Err(Error::InvalidGrid(format!(
                "function needs {} samples, got {}",
                grid.cell_count(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::PreconditionViolation(
                "function samples must be finite".into(),
            ));
        }
        Ok(GridFunction {
            grid,
            values,
            name: name.into(),
        })
    }

    pub fn from_fn(
        grid: Arc<Grid>,
        name: impl Into<String>,
        mut f: impl FnMut(Cell) -> f64,
    ) -> Result<Self> {
        let values = grid.clone().cells().map(&mut f).collect();
        GridFunction::new(grid, values, name)
    }

    pub fn constant(grid: Arc<Grid>, c: f64) -> Result<Self> {
        let n = grid.cell_count();
        GridFunction::new(grid, vec![c; n], format!("constant:{c}"))
    }

    /// Pyramid over a square grid: 1 at the center cell, decreasing linearly
    /// in Chebyshev index distance, exactly 0 on the border ring.
    pub fn pyramid(grid: Arc<Grid>) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::InvalidGrid("pyramid needs a square grid".into()));
        }
        let m = (grid.n() / 2) as f64;
        GridFunction::from_fn(grid, "pyramid", |c| {
            let dr = (c.row as f64 - m).abs();
            let dc = (c.col as f64 - m).abs();
            1.0 - dr.max(dc) / m
        })
    }

    /// Ramp vanishing on the lower half: 0 on rows at or below the middle
    /// row, rising linearly to exactly 1 on the top row.
    pub fn plane_b(grid: Arc<Grid>) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::InvalidGrid("plane_b needs a square grid".into()));
        }
        let m = (grid.n() / 2) as f64;
        GridFunction::from_fn(grid, "plane_b", |c| {
            let k = m - c.row as f64;
            if k > 0.0 {
                k / m
            } else {
                0.0
            }
        })
    }

    /// x-coordinate of each cell center in the domain rectangle.
    pub fn coords_x(grid: Arc<Grid>) -> Result<Self> {
        GridFunction::from_fn(grid.clone(), "coords:x", |c| grid.cell_center(c).0)
    }

    /// y-coordinate of each cell center in the domain rectangle.
    pub fn coords_y(grid: Arc<Grid>) -> Result<Self> {
        GridFunction::from_fn(grid.clone(), "coords:y", |c| grid.cell_center(c).1)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, cell: Cell) -> f64 {
        self.values[self.grid.index(cell)]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Sorted distinct sample values. Finite, hence a closed set: this is
    /// the spectrum of the function.
    pub fn distinct_values(&self) -> Vec<f64> {
        let mut vs = self.values.clone();
        vs.sort_by(f64::total_cmp);
        vs.dedup();
        vs
    }

    /// Apply `phi` valuewise.
    pub fn map(&self, name: impl Into<String>, phi: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::new(
            self.grid.clone(),
            self.values.iter().map(|&v| phi(v)).collect(),
            name,
        )
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        name: impl Into<String>,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<GridFunction> {
        if self.grid != other.grid {
            return Err(Error::SpaceMismatch(format!(
                "functions `{}` and `{}` live on different grids",
                self.name, other.name
            )));
        }
        GridFunction::new(
            self.grid.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
            name,
        )
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, format!("{}+{}", self.name, other.name), |a, b| a + b)
    }

    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, format!("{}*{}", self.name, other.name), |a, b| a * b)
    }

    /// Cells with value <= t, tagged closed. `sublevel(max)` is the grid.
    pub fn sublevel(&self, t: f64) -> Image {
        Image::new(
            CellSet::from_pred(&self.grid, |c| self.value(c) <= t),
            Kind::Closed,
        )
    }

    /// Cells with value > t, tagged open (the complement of the sublevel).
    pub fn superlevel_open(&self, t: f64) -> Image {
        Image::new(
            CellSet::from_pred(&self.grid, |c| self.value(c) > t),
            Kind::Open,
        )
    }

    /// Preimage of the open interval (lo, hi), by strict inequalities.
    pub fn preimage_open_interval(&self, lo: f64, hi: f64) -> Image {
        Image::new(
            CellSet::from_pred(&self.grid, |c| {
                let v = self.value(c);
                lo < v && v < hi
            }),
            Kind::Open,
        )
    }

    /// Preimage of the closed interval [lo, hi].
    pub fn preimage_closed_interval(&self, lo: f64, hi: f64) -> Image {
        Image::new(
            CellSet::from_pred(&self.grid, |c| {
                let v = self.value(c);
                lo <= v && v <= hi
            }),
            Kind::Closed,
        )
    }

    /// Cells where the function is nonzero.
    pub fn support(&self) -> CellSet {
        CellSet::from_pred(&self.grid, |c| self.value(c) != 0.0)
    }

    /// CSV text, one row per grid row (row 0 = top), values comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.grid.rows() {
            let row: Vec<String> = (0..self.grid.cols())
                .map(|c| format!("{}", self.value(Cell::new(r, c))))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(grid: Arc<Grid>, name: impl Into<String>, text: &str) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.cell_count());
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != grid.rows() as usize {
            return Err(Error::Parse(format!(
                "csv has {} rows, grid needs {}",
                rows.len(),
                grid.rows()
            )));
        }
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != grid.cols() as usize {
                return Err(Error::Parse(format!(
                    "csv row has {} columns, grid needs {}",
                    cols.len(),
                    grid.cols()
                )));
            }
            for v in cols {
                values.push(
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad csv value `{v}`: {e}")))?,
                );
            }
        }
        GridFunction::new(grid, values, name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::DistinguishedGeometry;

    #[test]
    fn pyramid_vanishes_exactly_on_border() {
        let g = Grid::unit(9).unwrap();
        let geo = DistinguishedGeometry::for_grid(&g, &[]).unwrap();
        let a = GridFunction::pyramid(g.clone()).unwrap();
        let zero_set = a.sublevel(0.0);
        assert_eq!(zero_set.cells, geo.border);
        assert_eq!(a.value(geo.center), 1.0);
    }

    #[test]
    fn plane_vanishes_on_lower_half() {
        let g = Grid::unit(9).unwrap();
        let b = GridFunction::plane_b(g.clone()).unwrap();
        let m = g.n() / 2;
        for c in g.cells() {
            if c.row >= m {
                assert_eq!(b.value(c), 0.0);
            } else {
                assert!(b.value(c) > 0.0);
            }
        }
        assert_eq!(b.value(Cell::new(0, 3)), 1.0);
    }

    #[test]
    fn pyramid_plus_plane_is_exactly_one_on_top_wedge() {
        let g = Grid::unit(65).unwrap();
        let a = GridFunction::pyramid(g.clone()).unwrap();
        let b = GridFunction::plane_b(g.clone()).unwrap();
        let s = a.add(&b).unwrap();
        let m = g.n() / 2;
        for c in g.cells() {
            let dr = (c.row as i32 - m as i32).unsigned_abs() as u16;
            let dc = (c.col as i32 - m as i32).unsigned_abs() as u16;
            let in_wedge = c.row <= m && dc <= m - c.row;
            if in_wedge {
                assert_eq!(s.value(c), 1.0, "wedge cell {c} must be exactly 1");
            } else {
                assert!(s.value(c) < 1.0, "cell {c}: {} with dr={dr}", s.value(c));
            }
        }
    }

    #[test]
    fn sublevel_trivia() {
        let g = Grid::unit(5).unwrap();
        let a = GridFunction::pyramid(g.clone()).unwrap();
        assert!(a.sublevel(a.max()).cells.is_full());
        assert!(a.sublevel(a.min() - 1.0).cells.is_empty());
        assert_eq!(a.sublevel(0.5).kind, Kind::Closed);
        assert_eq!(a.superlevel_open(0.5), a.sublevel(0.5).complement());
    }

    #[test]
    fn distinct_values_sorted() {
        let g = Grid::unit(5).unwrap();
        let a = GridFunction::pyramid(g).unwrap();
        let vs = a.distinct_values();
        assert_eq!(vs, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid::unit(3).unwrap();
        let a =
            GridFunction::from_fn(g.clone(), "t", |c| c.row as f64 * 0.1 + c.col as f64).unwrap();
        let text = a.to_csv();
        let back = GridFunction::from_csv(g, "t", &text).unwrap();
        assert_eq!(a.values(), back.values());
    }

    #[test]
    fn constant_and_coords() {
        let g = Grid::unit(5).unwrap();
        let c = GridFunction::constant(g.clone(), 0.5).unwrap();
        assert_eq!(c.distinct_values(), vec![0.5]);
        let x = GridFunction::coords_x(g.clone()).unwrap();
        assert_eq!(x.value(Cell::new(0, 2)), 0.5);
        let y = GridFunction::coords_y(g).unwrap();
        assert_eq!(y.value(Cell::new(2, 0)), 0.5);
        assert!(y.value(Cell::new(0, 0)) > 0.8);
    }
}
