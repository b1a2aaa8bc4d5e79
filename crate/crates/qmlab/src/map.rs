//! Cell maps between grids, the combinatorial stand-in for continuous maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Cell, CellSet, Grid};

/// A total map `from -> to`, one target cell per source cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellMap {
    from: Arc<Grid>,
    to: Arc<Grid>,
    table: Vec<Cell>,
}

impl CellMap {
    pub fn new(from: Arc<Grid>, to: Arc<Grid>, table: Vec<Cell>) -> Result<Self> {
        if table.len() != from.cell_count() {
            return Err(Error::InvalidGrid(format!(
                "map table needs {} entries, got {}",
                from.cell_count(),
                table.len()
            )));
        }
        if let Some(c) = table.iter().find(|c| !to.contains(**c)) {
            return Err(Error::InvalidGrid(format!(
                "map image cell {c} out of bounds"
            )));
        }
        Ok(CellMap { from, to, table })
    }

    pub fn from_fn(
        from: Arc<Grid>,
        to: Arc<Grid>,
        mut f: impl FnMut(Cell) -> Cell,
    ) -> Result<Self> {
        let table = from.cells().map(&mut f).collect();
        CellMap::new(from, to, table)
    }

    pub fn identity(grid: Arc<Grid>) -> Self {
        let table = grid.cells().collect();
        CellMap {
            from: grid.clone(),
            to: grid,
            table,
        }
    }

    /// Translate by (dr, dc), clamping at the grid edge.
    pub fn shift(grid: Arc<Grid>, dr: i32, dc: i32) -> Self {
        let rows = grid.rows() as i32;
        let cols = grid.cols() as i32;
        let table = grid
            .cells()
            .map(|c| {
                Cell::new(
                    (c.row as i32 + dr).clamp(0, rows - 1) as u16,
                    (c.col as i32 + dc).clamp(0, cols - 1) as u16,
                )
            })
            .collect();
        CellMap {
            from: grid.clone(),
            to: grid,
            table,
        }
    }

    /// Fold about the vertical center line: columns mirror onto the left half.
    pub fn fold(grid: Arc<Grid>) -> Self {
        let last = grid.cols() - 1;
        let table = grid
            .cells()
            .map(|c| Cell::new(c.row, c.col.min(last - c.col)))
            .collect();
        CellMap {
            from: grid.clone(),
            to: grid,
            table,
        }
    }

    /// Constant map onto one cell.
    pub fn constant(from: Arc<Grid>, to: Arc<Grid>, cell: Cell) -> Result<Self> {
        if !to.contains(cell) {
            return Err(Error::InvalidGrid(format!("cell {cell} out of bounds")));
        }
        let table = vec![cell; from.cell_count()];
        Ok(CellMap { from, to, table })
    }

    pub fn from_grid(&self) -> &Arc<Grid> {
        &self.from
    }

    pub fn to_grid(&self) -> &Arc<Grid> {
        &self.to
    }

    pub fn apply(&self, cell: Cell) -> Cell {
        self.table[self.from.index(cell)]
    }

    /// `{u in from : f(u) in cells}` for `cells` in the target grid.
    pub fn preimage_cells(&self, cells: &CellSet) -> CellSet {
        CellSet::from_pred(&self.from, |u| {
            cells.contains(self.table[self.from.index(u)])
        })
    }

    /// CSV lines `from_row,from_col,to_row,to_col`, one per source cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for cell in self.from.cells() {
            let img = self.apply(cell);
            out.push_str(&format!(
                "{},{},{},{}\n",
                cell.row, cell.col, img.row, img.col
            ));
        }
        out
    }

    pub fn from_csv(from: Arc<Grid>, to: Arc<Grid>, text: &str) -> Result<Self> {
        let mut table = vec![None; from.cell_count()];
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("map csv line {ln}: need 4 fields")));
            }
            let nums: Vec<u16> = parts
                .iter()
                .map(|p| p.trim().parse::<u16>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("map csv line {ln}: {e}")))?;
            let src = Cell::new(nums[0], nums[1]);
            let dst = Cell::new(nums[2], nums[3]);
            if !from.contains(src) || !to.contains(dst) {
                return Err(Error::Parse(format!(
                    "map csv line {ln}: cell out of bounds"
                )));
            }
            table[from.index(src)] = Some(dst);
        }
        let table: Option<Vec<Cell>> = table.into_iter().collect();
        match table {
            Some(table) => CellMap::new(from, to, table),
            None => Err(Error::Parse(
                "map csv does not cover every source cell".into(),
            )),
        }
    }
}
