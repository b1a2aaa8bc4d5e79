//! Combinatorial model of a rectangle as a cell grid with dual connectivity.
//!
//! Closed cell sets connect through the region adjacency and open cell sets
//! through its dual. The default pair (8 for closed, 4 for open) avoids the
//! digital-topology paradox where a thin closed curve and both sides of its
//! complement count as connected, so grid solidity tracks continuum solidity
//! for the shapes we care about.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Neighborhood convention connecting cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// N, S, E, W neighbors.
    Four,
    /// All eight surrounding neighbors.
    Eight,
}

impl Connectivity {
    pub fn dual(self) -> Self {
        match self {
            Connectivity::Four => Connectivity::Eight,
            Connectivity::Eight => Connectivity::Four,
        }
    }

    fn offsets(self) -> &'static [(i32, i32)] {
        const FOUR: [(i32, i32); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        const EIGHT: [(i32, i32); 8] = [
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

/// Open-or-closed tag. Every set handled by a quasi-measure carries one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Open,
    Closed,
}

impl Kind {
    pub fn flipped(self) -> Self {
        match self {
            Kind::Open => Kind::Closed,
            Kind::Closed => Kind::Open,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kind::Open => "open",
            Kind::Closed => "closed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "open" => Ok(Kind::Open),
            "closed" => Ok(Kind::Closed),
            other => Err(Error::Parse(format!("unknown kind `{other}`"))),
        }
    }
}

/// A cell position: `row` 0 is the top row of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u16,
    pub col: u16,
}

impl Cell {
    pub fn new(row: u16, col: u16) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Axis-aligned rectangle in the plane, `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn unit_square() -> Self {
        Rect {
            x0: 0.0,
            y0: 0.0,
            x1: 1.0,
            y1: 1.0,
        }
    }
}

/// The discretized ambient space: a rows x cols cell grid, an adjacency
/// convention, and the rectangle it models.
///
/// Square grids require an odd side so the domain midpoint lies in the
/// interior of exactly one cell. Degenerate 1x1 squares are rejected since
/// their border ring and center coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    rows: u16,
    cols: u16,
    region: Connectivity,
    domain: Rect,
}

impl Grid {
    pub fn square(n: u16, region: Connectivity, domain: Rect) -> Result<Arc<Grid>> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "side must be an odd integer >= 3, got {n}"
            )));
        }
        Ok(Arc::new(Grid {
            rows: n,
            cols: n,
            region,
            domain,
        }))
    }

    /// Unit square with the default convention: closed sets 8-connected,
    /// open sets 4-connected.
    pub fn unit(n: u16) -> Result<Arc<Grid>> {
        Grid::square(n, Connectivity::Eight, Rect::unit_square())
    }

    /// A general rectangular carrier. Measure geometry (border, center)
    /// needs [`Grid::square`]; rectangles serve as discrete targets and as
    /// small exhaustive-check carriers.
    pub fn rect(rows: u16, cols: u16, region: Connectivity) -> Result<Arc<Grid>> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidGrid("grid needs at least one cell".into()));
        }
        Ok(Arc::new(Grid {
            rows,
            cols,
            region,
            domain: Rect {
                x0: 0.0,
                y0: 0.0,
                x1: cols as f64,
                y1: rows as f64,
            },
        }))
    }

    /// A discrete space of `k` labeled points, modeled as a 1 x k grid.
    pub fn discrete(k: u16) -> Result<Arc<Grid>> {
        if k == 0 {
            return Err(Error::InvalidGrid("discrete space needs >= 1 point".into()));
        }
        Grid::rect(1, k, Connectivity::Eight)
    }

    pub fn rows(&self) -> u16 {
        self.rows
    }

    pub fn cols(&self) -> u16 {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square grid.
    pub fn n(&self) -> u16 {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn cell_count(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    pub fn region_adjacency(&self) -> Connectivity {
        self.region
    }

    pub fn complement_adjacency(&self) -> Connectivity {
        self.region.dual()
    }

    /// Adjacency used for a cell set playing the given role: closed sets
    /// connect through the region adjacency, open sets through its dual.
    pub fn kind_adjacency(&self, kind: Kind) -> Connectivity {
        match kind {
            Kind::Closed => self.region,
            Kind::Open => self.region.dual(),
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.rows && cell.col < self.cols
    }

    pub fn index(&self, cell: Cell) -> usize {
        cell.row as usize * self.cols as usize + cell.col as usize
    }

    pub fn cell_at(&self, index: usize) -> Cell {
        Cell {
            row: (index / self.cols as usize) as u16,
            col: (index % self.cols as usize) as u16,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count()).map(move |i| self.cell_at(i))
    }

    /// Center coordinates of a cell in the domain rectangle. Row 0 is the
    /// top of the grid, i.e. the high-`y` edge of the domain.
    pub fn cell_center(&self, cell: Cell) -> (f64, f64) {
        let w = (self.domain.x1 - self.domain.x0) / self.cols as f64;
        let h = (self.domain.y1 - self.domain.y0) / self.rows as f64;
        let x = self.domain.x0 + (cell.col as f64 + 0.5) * w;
        let y = self.domain.y1 - (cell.row as f64 + 0.5) * h;
        (x, y)
    }

    /// Snap a domain point to the cell containing it. Points on cell
    /// boundaries snap toward lower-left (smaller x, smaller y).
    pub fn snap_point(&self, x: f64, y: f64) -> Result<Cell> {
        let rect = self.domain;
        if x < rect.x0 || x > rect.x1 || y < rect.y0 || y > rect.y1 {
            return Err(Error::InvalidGrid(format!(
                "point ({x},{y}) outside domain"
            )));
        }
        let tx = (x - rect.x0) / (rect.x1 - rect.x0) * self.cols as f64;
        let ty = (y - rect.y0) / (rect.y1 - rect.y0) * self.rows as f64;
        let ix = (tx.ceil() as i64 - 1).clamp(0, self.cols as i64 - 1) as u16;
        let iy = (ty.ceil() as i64 - 1).clamp(0, self.rows as i64 - 1) as u16;
        Ok(Cell {
            row: self.rows - 1 - iy,
            col: ix,
        })
    }

    /// One-line grid descriptor, e.g. `n=65, adjacency=8/4`.
    pub fn descriptor(&self) -> String {
        let adj = match self.region {
            Connectivity::Eight => "8/4",
            Connectivity::Four => "4/8",
        };
        format!("n={}, adjacency={}", self.rows, adj)
    }

    pub fn parse_descriptor(s: &str) -> Result<Arc<Grid>> {
        let mut n = None;
        let mut region = None;
        for part in s.split(',') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("n=") {
                n = Some(
                    v.parse::<u16>()
                        .map_err(|e| Error::Parse(format!("bad n: {e}")))?,
                );
            } else if let Some(v) = part.strip_prefix("adjacency=") {
                region = Some(match v {
                    "8/4" => Connectivity::Eight,
                    "4/8" => Connectivity::Four,
                    other => return Err(Error::Parse(format!("bad adjacency `{other}`"))),
                });
            }
        }
        match (n, region) {
            (Some(n), Some(region)) => Grid::square(n, region, Rect::unit_square()),
            _ => Err(Error::Parse(format!("bad grid descriptor `{s}`"))),
        }
    }
}

/// A finite set of cells within one grid shape, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    rows: u16,
    cols: u16,
    words: Vec<u64>,
}

impl CellSet {
    pub fn empty(grid: &Grid) -> Self {
        let bits = grid.cell_count();
        CellSet {
            rows: grid.rows,
            cols: grid.cols,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn full(grid: &Grid) -> Self {
        let mut s = CellSet::empty(grid);
        for w in &mut s.words {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    pub fn from_cells(grid: &Grid, cells: &[Cell]) -> Result<Self> {
        let mut s = CellSet::empty(grid);
        for &c in cells {
            if !grid.contains(c) {
                return Err(Error::InvalidGrid(format!("cell {c} out of bounds")));
            }
            s.insert(c);
        }
        Ok(s)
    }

    pub fn from_pred(grid: &Grid, mut pred: impl FnMut(Cell) -> bool) -> Self {
        let mut s = CellSet::empty(grid);
        for cell in grid.cells() {
            if pred(cell) {
                s.insert(cell);
            }
        }
        s
    }

    pub fn rows(&self) -> u16 {
        self.rows
    }

    pub fn cols(&self) -> u16 {
        self.cols
    }

    pub fn same_shape(&self, other: &CellSet) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn matches_grid(&self, grid: &Grid) -> bool {
        self.rows == grid.rows && self.cols == grid.cols
    }

    fn bit(&self, cell: Cell) -> usize {
        cell.row as usize * self.cols as usize + cell.col as usize
    }

    fn mask_tail(&mut self) {
        let bits = self.rows as usize * self.cols as usize;
        let rem = bits % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn insert(&mut self, cell: Cell) {
        let b = self.bit(cell);
        self.words[b / 64] |= 1 << (b % 64);
    }

    pub fn remove(&mut self, cell: Cell) {
        let b = self.bit(cell);
        self.words[b / 64] &= !(1 << (b % 64));
    }

    pub fn contains(&self, cell: Cell) -> bool {
        if cell.row >= self.rows || cell.col >= self.cols {
            return false;
        }
        let b = self.bit(cell);
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.rows as usize * self.cols as usize
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        debug_assert!(self.same_shape(other));
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        out
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        debug_assert!(self.same_shape(other));
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        out
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        debug_assert!(self.same_shape(other));
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out
    }

    /// Complement within the grid (not the plane).
    pub fn complement(&self) -> CellSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        debug_assert!(self.same_shape(other));
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        debug_assert!(self.same_shape(other));
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols as usize;
        let bits = self.rows as usize * cols;
        (0..bits).filter_map(move |b| {
            if self.words[b / 64] >> (b % 64) & 1 == 1 {
                Some(Cell {
                    row: (b / cols) as u16,
                    col: (b % cols) as u16,
                })
            } else {
                None
            }
        })
    }

    pub fn first(&self) -> Option<Cell> {
        self.iter().next()
    }

    /// Mask lines, row 0 first, `1` for members.
    pub fn to_mask_lines(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        if self.contains(Cell::new(r, c)) {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_mask_lines(grid: &Grid, lines: &[&str]) -> Result<Self> {
        if lines.len() != grid.rows as usize {
            return Err(Error::Parse(format!(
                "mask has {} rows, grid needs {}",
                lines.len(),
                grid.rows
            )));
        }
        let mut s = CellSet::empty(grid);
        for (r, line) in lines.iter().enumerate() {
            let line = line.trim();
            if line.len() != grid.cols as usize {
                return Err(Error::Parse(format!(
                    "mask row {r} has {} columns, grid needs {}",
                    line.len(),
                    grid.cols
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '1' => s.insert(Cell::new(r as u16, c as u16)),
                    '0' => {}
                    other => return Err(Error::Parse(format!("mask char `{other}`"))),
                }
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CellSet({}x{}, {} cells)",
            self.rows,
            self.cols,
            self.len()
        )
    }
}

/// A cell set tagged open or closed: the objects quasi-measures act on.
///
/// Complementation flips the cells and the kind together. The empty set and
/// the full grid are legal with either tag (both are clopen).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    pub cells: CellSet,
    pub kind: Kind,
}

impl Image {
    pub fn new(cells: CellSet, kind: Kind) -> Self {
        Image { cells, kind }
    }

    pub fn open(cells: CellSet) -> Self {
        Image::new(cells, Kind::Open)
    }

    pub fn closed(cells: CellSet) -> Self {
        Image::new(cells, Kind::Closed)
    }

    pub fn full(grid: &Grid, kind: Kind) -> Self {
        Image::new(CellSet::full(grid), kind)
    }

    pub fn empty(grid: &Grid, kind: Kind) -> Self {
        Image::new(CellSet::empty(grid), kind)
    }

    pub fn complement(&self) -> Image {
        Image {
            cells: self.cells.complement(),
            kind: self.kind.flipped(),
        }
    }

    /// Mask text: a `kind:` header followed by one line per row.
    pub fn to_mask(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind.label());
        for line in self.cells.to_mask_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_mask(grid: &Grid, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty mask".into()))?;
        let kind = header
            .strip_prefix("kind:")
            .ok_or_else(|| Error::Parse("mask missing `kind:` header".into()))
            .and_then(Kind::parse)?;
        let rest: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
        Ok(Image::new(CellSet::from_mask_lines(grid, &rest)?, kind))
    }
}

/// Connected components of `s` under the given adjacency, in scan order of
/// their smallest cell. Empty input yields an empty list.
pub fn connected_components(s: &CellSet, adjacency: Connectivity) -> Vec<CellSet> {
    let rows = s.rows as i32;
    let cols = s.cols as i32;
    let mut seen = vec![false; s.rows as usize * s.cols as usize];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for cell in s.iter() {
        let start = cell.row as usize * cols as usize + cell.col as usize;
        if seen[start] {
            continue;
        }
        let mut comp = CellSet {
            rows: s.rows,
            cols: s.cols,
            words: vec![0; s.words.len()],
        };
        seen[start] = true;
        stack.push(cell);
        while let Some(c) = stack.pop() {
            comp.insert(c);
            for &(dr, dc) in adjacency.offsets() {
                let nr = c.row as i32 + dr;
                let nc = c.col as i32 + dc;
                if nr < 0 || nr >= rows || nc < 0 || nc >= cols {
                    continue;
                }
                let n = Cell::new(nr as u16, nc as u16);
                let idx = nr as usize * cols as usize + nc as usize;
                if !seen[idx] && s.contains(n) {
                    seen[idx] = true;
                    stack.push(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// True when `s` is empty or forms a single component.
pub fn is_connected(s: &CellSet, adjacency: Connectivity) -> bool {
    connected_components(s, adjacency).len() <= 1
}

/// True when some cell of `a` is adjacent to a cell of `b`. Cell-disjoint
/// sets that are adjacent model continuum sets that touch along a boundary,
/// which are not disjoint in the measure-theoretic sense.
pub fn sets_adjacent(a: &CellSet, b: &CellSet, adjacency: Connectivity) -> bool {
    let rows = a.rows() as i32;
    let cols = a.cols() as i32;
    a.iter().any(|c| {
        adjacency.offsets().iter().any(|&(dr, dc)| {
            let nr = c.row as i32 + dr;
            let nc = c.col as i32 + dc;
            nr >= 0
                && nr < rows
                && nc >= 0
                && nc < cols
                && b.contains(Cell::new(nr as u16, nc as u16))
        })
    })
}

/// A set is solid when it is connected and its complement is connected, each
/// under the adjacency matching its role. The empty set and the full grid
/// count as solid. The predicate is invariant under complementation.
pub fn is_solid(grid: &Grid, image: &Image) -> bool {
    let inner = grid.kind_adjacency(image.kind);
    let outer = grid.kind_adjacency(image.kind.flipped());
    is_connected(&image.cells, inner) && is_connected(&image.cells.complement(), outer)
}

/// Remove cells within `steps` region-adjacency hops of the complement.
/// Cells outside the grid count as complement, so eroding the full grid
/// peels the border ring.
pub fn erode(grid: &Grid, s: &CellSet, steps: u32) -> CellSet {
    let mut cur = s.clone();
    let adjacency = grid.region_adjacency();
    for _ in 0..steps {
        if cur.is_empty() {
            break;
        }
        let prev = cur.clone();
        for cell in prev.iter() {
            let interior = adjacency.offsets().iter().all(|&(dr, dc)| {
                let nr = cell.row as i32 + dr;
                let nc = cell.col as i32 + dc;
                nr >= 0
                    && nr < grid.rows as i32
                    && nc >= 0
                    && nc < grid.cols as i32
                    && prev.contains(Cell::new(nr as u16, nc as u16))
            });
            if !interior {
                cur.remove(cell);
            }
        }
    }
    cur
}

/// Remove cells within `steps` hops of the complement taken inside the
/// grid only: the grid edge does not count as complement. This is the
/// right notion of "compactly inside" for subsets of the square itself,
/// which is compact and contains its border.
pub fn erode_within(grid: &Grid, s: &CellSet, steps: u32) -> CellSet {
    let mut cur = s.clone();
    let adjacency = grid.region_adjacency();
    for _ in 0..steps {
        if cur.is_empty() || cur.is_full() {
            break;
        }
        let prev = cur.clone();
        for cell in prev.iter() {
            let interior = adjacency.offsets().iter().all(|&(dr, dc)| {
                let nr = cell.row as i32 + dr;
                let nc = cell.col as i32 + dc;
                nr < 0
                    || nr >= grid.rows() as i32
                    || nc < 0
                    || nc >= grid.cols() as i32
                    || prev.contains(Cell::new(nr as u16, nc as u16))
            });
            if !interior {
                cur.remove(cell);
            }
        }
    }
    cur
}

/// Grow `s` by `steps` region-adjacency hops, clipped to the grid.
pub fn dilate(grid: &Grid, s: &CellSet, steps: u32) -> CellSet {
    let mut cur = s.clone();
    let adjacency = grid.region_adjacency();
    for _ in 0..steps {
        let prev = cur.clone();
        for cell in prev.iter() {
            for &(dr, dc) in adjacency.offsets() {
                let nr = cell.row as i32 + dr;
                let nc = cell.col as i32 + dc;
                if nr >= 0 && nr < grid.rows as i32 && nc >= 0 && nc < grid.cols as i32 {
                    cur.insert(Cell::new(nr as u16, nc as u16));
                }
            }
        }
    }
    cur
}

/// Border ring, center cell, and optional marked points of a square grid.
#[derive(Debug, Clone)]
pub struct DistinguishedGeometry {
    pub border: CellSet,
    pub center: Cell,
    pub marked: Vec<Cell>,
}

impl DistinguishedGeometry {
    pub fn for_grid(grid: &Grid, marked_points: &[(f64, f64)]) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::InvalidGrid(
                "distinguished geometry needs a square grid".into(),
            ));
        }
        let n = grid.n();
        let border = CellSet::from_pred(grid, |c| {
            c.row == 0 || c.col == 0 || c.row == n - 1 || c.col == n - 1
        });
        let rect = grid.domain();
        let center = grid.snap_point((rect.x0 + rect.x1) / 2.0, (rect.y0 + rect.y1) / 2.0)?;
        let mut marked = Vec::new();
        for &(x, y) in marked_points {
            let cell = grid.snap_point(x, y)?;
            if marked.contains(&cell) {
                return Err(Error::InvalidGrid(format!(
                    "marked points collide in cell {cell}"
                )));
            }
            marked.push(cell);
        }
        Ok(DistinguishedGeometry {
            border,
            center,
            marked,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: u16) -> Arc<Grid> {
        Grid::unit(n).unwrap()
    }

    #[test]
    fn odd_side_required() {
        assert!(Grid::unit(4).is_err());
        assert!(Grid::unit(1).is_err());
        assert!(Grid::unit(3).is_ok());
    }

    #[test]
    fn diagonal_pair_components_depend_on_adjacency() {
        let g = grid(5);
        let s = CellSet::from_cells(&g, &[Cell::new(1, 1), Cell::new(2, 2)]).unwrap();
        assert_eq!(connected_components(&s, Connectivity::Four).len(), 2);
        assert_eq!(connected_components(&s, Connectivity::Eight).len(), 1);
    }

    #[test]
    fn components_of_empty_and_full() {
        let g = grid(3);
        assert!(connected_components(&CellSet::empty(&g), Connectivity::Four).is_empty());
        let comps = connected_components(&CellSet::full(&g), Connectivity::Four);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_full());
    }

    #[test]
    fn border_ring_is_solid() {
        let g = grid(7);
        let geo = DistinguishedGeometry::for_grid(&g, &[]).unwrap();
        assert!(is_solid(&g, &Image::closed(geo.border.clone())));
        // oracle: component counts directly
        assert_eq!(
            connected_components(&geo.border, Connectivity::Eight).len(),
            1
        );
        assert_eq!(
            connected_components(&geo.border.complement(), Connectivity::Four).len(),
            1
        );
    }

    #[test]
    fn scattered_pair_is_not_solid() {
        let g = grid(7);
        let s = CellSet::from_cells(&g, &[Cell::new(1, 1), Cell::new(5, 5)]).unwrap();
        assert!(!is_solid(&g, &Image::closed(s)));
    }

    #[test]
    fn annulus_is_not_solid() {
        let g = grid(9);
        // ring strictly inside the square: complement has inner and outer parts
        let s = CellSet::from_pred(&g, |c| {
            let d = c.row.max(c.col).max(8 - c.row).max(8 - c.col);
            (6..=7).contains(&d) && c.row >= 1 && c.col >= 1 && c.row <= 7 && c.col <= 7
        });
        let comps = connected_components(&s.complement(), Connectivity::Four);
        assert_eq!(comps.len(), 2);
        assert!(!is_solid(&g, &Image::closed(s)));
    }

    #[test]
    fn solidity_is_symmetric_under_complement() {
        let g = grid(5);
        let shapes = [
            CellSet::from_cells(&g, &[Cell::new(2, 2)]).unwrap(),
            CellSet::from_pred(&g, |c| c.row == 0),
            CellSet::from_cells(&g, &[Cell::new(0, 0), Cell::new(1, 1)]).unwrap(),
            CellSet::empty(&g),
            CellSet::full(&g),
        ];
        for cells in shapes {
            for kind in [Kind::Open, Kind::Closed] {
                let img = Image::new(cells.clone(), kind);
                assert_eq!(is_solid(&g, &img), is_solid(&g, &img.complement()));
            }
        }
    }

    #[test]
    fn erode_examples() {
        let g = grid(5);
        let full = CellSet::full(&g);
        let interior =
            CellSet::from_pred(&g, |c| c.row >= 1 && c.col >= 1 && c.row <= 3 && c.col <= 3);
        assert_eq!(erode(&g, &full, 1), interior);
        assert_eq!(erode(&g, &full, 0), full);
        assert!(erode(&g, &CellSet::empty(&g), 3).is_empty());
        let single = CellSet::from_cells(&g, &[Cell::new(2, 2)]).unwrap();
        assert!(erode(&g, &single, 1).is_empty());
    }

    #[test]
    fn complement_involution() {
        let g = grid(5);
        let s = CellSet::from_pred(&g, |c| (c.row + c.col) % 3 == 0);
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn mask_round_trip() {
        let g = grid(3);
        let img =
            Image::open(CellSet::from_cells(&g, &[Cell::new(0, 1), Cell::new(2, 2)]).unwrap());
        let text = img.to_mask();
        assert!(text.starts_with("kind: open\n"));
        assert_eq!(Image::from_mask(&g, &text).unwrap(), img);
    }

    #[test]
    fn descriptor_round_trip() {
        let g = grid(65);
        assert_eq!(g.descriptor(), "n=65, adjacency=8/4");
        let parsed = Grid::parse_descriptor(&g.descriptor()).unwrap();
        assert_eq!(*parsed, *g);
    }

    #[test]
    fn snapping_goes_lower_left_on_boundaries() {
        let g = grid(5);
        // interior point
        assert_eq!(g.snap_point(0.5, 0.5).unwrap(), Cell::new(2, 2));
        // x exactly on a cell edge snaps to the left cell; y on an edge snaps
        // to the smaller-y cell, i.e. the row below in mask orientation
        assert_eq!(g.snap_point(0.4, 0.5).unwrap(), Cell::new(2, 1));
        assert_eq!(g.snap_point(0.5, 0.4).unwrap(), Cell::new(3, 2));
        assert_eq!(g.snap_point(0.0, 0.0).unwrap(), Cell::new(4, 0));
        assert_eq!(g.snap_point(1.0, 1.0).unwrap(), Cell::new(0, 4));
    }

    #[test]
    fn geometry_center_and_border() {
        let g = grid(5);
        let geo = DistinguishedGeometry::for_grid(&g, &[(0.25, 0.25), (0.75, 0.25)]).unwrap();
        assert_eq!(geo.center, Cell::new(2, 2));
        assert!(!geo.border.contains(geo.center));
        assert_eq!(geo.border.len(), 16);
        assert_eq!(geo.marked.len(), 2);
        // p = (1/4,1/4) lands in the lower-left quadrant
        assert_eq!(geo.marked[0], Cell::new(3, 1));
    }
}
