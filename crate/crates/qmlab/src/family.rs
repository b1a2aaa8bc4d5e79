//! Template shapes and the standard test families.
//!
//! Checks across the crate run over a deterministic family of images:
//! rings, arcs, strips, disks, lenses around marked points, and seeded solid
//! blobs. The same shapes feed the counterexample search and the scene
//! templates of the command-line front end.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::func::GridFunction;
use crate::grid::{
    connected_components, dilate, erode_within, sets_adjacent, Cell, CellSet,
    DistinguishedGeometry, Grid, Image, Kind,
};
use crate::measure::DisjointPair;
use std::sync::Arc;

/// The outermost cell ring.
pub fn border_ring(grid: &Grid) -> CellSet {
    let (rows, cols) = (grid.rows(), grid.cols());
    CellSet::from_pred(grid, |c| {
        c.row == 0 || c.col == 0 || c.row == rows - 1 || c.col == cols - 1
    })
}

/// Cells within `w` rings of the grid edge (`w = 1` is the border ring).
pub fn thick_ring(grid: &Grid, w: u16) -> CellSet {
    let (rows, cols) = (grid.rows(), grid.cols());
    CellSet::from_pred(grid, |c| {
        c.row < w || c.col < w || c.row >= rows - w || c.col >= cols - w
    })
}

/// Everything strictly inside the border ring.
pub fn inner_square(grid: &Grid) -> CellSet {
    border_ring(grid).complement()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Half of the border ring, split at the middle column. The left arc takes
/// columns up to and including the middle.
pub fn half_ring(grid: &Grid, side: Side) -> CellSet {
    let m = grid.cols() / 2;
    let ring = border_ring(grid);
    CellSet::from_pred(grid, |c| {
        ring.contains(c)
            && match side {
                Side::Left => c.col <= m,
                Side::Right => c.col > m,
            }
    })
}

/// Half of a `w`-thick ring, overlapping the other half at the middle column.
pub fn thick_half_ring(grid: &Grid, side: Side, w: u16) -> CellSet {
    let m = grid.cols() / 2;
    let ring = thick_ring(grid, w);
    CellSet::from_pred(grid, |c| {
        ring.contains(c)
            && match side {
                Side::Left => c.col <= m,
                Side::Right => c.col >= m,
            }
    })
}

/// Vertical strip of half-width `w` through the center column, full height.
pub fn vertical_strip(grid: &Grid, w: u16) -> CellSet {
    let m = grid.cols() / 2;
    CellSet::from_pred(grid, |c| c.col.abs_diff(m) <= w)
}

/// Horizontal strip of half-width `w` through the center row, full width.
pub fn horizontal_strip(grid: &Grid, w: u16) -> CellSet {
    let m = grid.rows() / 2;
    CellSet::from_pred(grid, |c| c.row.abs_diff(m) <= w)
}

/// Euclidean disk of the given radius (in cells) around a cell.
pub fn disk(grid: &Grid, center: Cell, radius: f64) -> CellSet {
    CellSet::from_pred(grid, |c| {
        let dr = c.row as f64 - center.row as f64;
        let dc = c.col as f64 - center.col as f64;
        (dr * dr + dc * dc).sqrt() <= radius
    })
}

/// Axis-aligned rectangle spanning the two cells inclusively, dilated by
/// `pad` Chebyshev steps and clipped to the grid.
pub fn lens(grid: &Grid, a: Cell, b: Cell, pad: u16) -> CellSet {
    let r0 = a.row.min(b.row).saturating_sub(pad);
    let r1 = (a.row.max(b.row) + pad).min(grid.rows() - 1);
    let c0 = a.col.min(b.col).saturating_sub(pad);
    let c1 = (a.col.max(b.col) + pad).min(grid.cols() - 1);
    CellSet::from_pred(grid, |c| {
        c.row >= r0 && c.row <= r1 && c.col >= c0 && c.col <= c1
    })
}

/// A rectangle padded around one cell.
pub fn blot(grid: &Grid, at: Cell, pad: u16) -> CellSet {
    lens(grid, at, at, pad)
}

/// Grow a random connected blob from a seeded start, then absorb any
/// interior holes so both the blob and its complement are connected.
pub fn random_solid_blob(grid: &Grid, rng: &mut ChaCha8Rng, target_size: usize) -> CellSet {
    let start = Cell::new(rng.gen_range(0..grid.rows()), rng.gen_range(0..grid.cols()));
    let mut blob = CellSet::from_pred(grid, |c| c == start);
    let mut frontier: Vec<Cell> = vec![start];
    while blob.len() < target_size && !frontier.is_empty() {
        let idx = rng.gen_range(0..frontier.len());
        let cell = frontier.swap_remove(idx);
        for (dr, dc) in [(-1i32, 0i32), (1, 0), (0, -1), (0, 1)] {
            let nr = cell.row as i32 + dr;
            let nc = cell.col as i32 + dc;
            if nr < 0 || nr >= grid.rows() as i32 || nc < 0 || nc >= grid.cols() as i32 {
                continue;
            }
            let n = Cell::new(nr as u16, nc as u16);
            if !blob.contains(n) && rng.gen_bool(0.7) {
                blob.insert(n);
                frontier.push(n);
            }
        }
    }
    fill_holes(grid, &blob)
}

/// Absorb complement components that do not touch the grid edge.
pub fn fill_holes(grid: &Grid, s: &CellSet) -> CellSet {
    let mut out = s.clone();
    for comp in connected_components(&s.complement(), grid.complement_adjacency()) {
        let touches_edge = comp.iter().any(|c| {
            c.row == 0 || c.col == 0 || c.row == grid.rows() - 1 || c.col == grid.cols() - 1
        });
        if !touches_edge {
            out = out.union(&comp);
        }
    }
    out
}

/// Template candidate pairs for the non-subadditivity search, shipped in a
/// fixed canonical order: the half-ring arcs first, then open thick arcs,
/// then rectangles around marked-point pairs.
pub fn witness_template_pairs(
    grid: &Grid,
    geometry: &DistinguishedGeometry,
) -> Vec<(Image, Image)> {
    let mut out = Vec::new();
    out.push((
        Image::closed(half_ring(grid, Side::Left)),
        Image::closed(half_ring(grid, Side::Right)),
    ));
    let w = 2.min(grid.rows() / 3).max(1);
    out.push((
        Image::open(thick_half_ring(grid, Side::Left, w)),
        Image::open(thick_half_ring(grid, Side::Right, w)),
    ));
    let pad = (grid.rows() / 16).max(1);
    for i in 0..geometry.marked.len() {
        for j in (i + 1)..geometry.marked.len() {
            let p = geometry.marked[i];
            let q = geometry.marked[j];
            let mid = Cell::new((p.row + q.row) / 2, (p.col + q.col) / 2);
            let a = lens(grid, p, mid, pad);
            let b = lens(grid, q, mid, pad);
            out.push((Image::closed(a.clone()), Image::closed(b.clone())));
            out.push((Image::open(a), Image::open(b)));
        }
    }
    out
}

/// The standard deterministic test family used by axiom and property checks.
#[derive(Debug, Clone)]
pub struct TestFamily {
    /// Mixed open and closed images, evaluable under the shipped measures.
    pub images: Vec<Image>,
    /// Disjoint pairs whose unions are images.
    pub disjoint_pairs: Vec<DisjointPair>,
    /// Pairs (a, b) with a a subset of b, same kind.
    pub nested_pairs: Vec<(Image, Image)>,
    /// Increasing chains of open images.
    pub open_chains: Vec<Vec<Image>>,
    /// Open images for regularity-style checks.
    pub open_sets: Vec<Image>,
}

pub fn standard_family(grid: &Grid, geometry: &DistinguishedGeometry, seed: u64) -> TestFamily {
    let full = CellSet::full(grid);
    let empty = CellSet::empty(grid);
    let ring = border_ring(grid);
    let inner = inner_square(grid);
    let ring2 = thick_ring(grid, 2.min(grid.rows() / 3).max(1));
    let ring3 = thick_ring(grid, 3.min(grid.rows() / 3).max(1));
    let left = half_ring(grid, Side::Left);
    let right = half_ring(grid, Side::Right);
    let center = geometry.center;
    let center_cell = blot(grid, center, 0);
    let q = grid.rows() / 4;
    let off = Cell::new(q.max(1), q.max(1));
    let off_disk = disk(grid, off, (grid.rows() as f64 / 8.0).max(1.0));
    let vstrip = vertical_strip(grid, grid.cols() / 16);
    let hstrip = horizontal_strip(grid, grid.rows() / 16);

    let mut images: Vec<Image> = Vec::new();
    for kind in [Kind::Closed, Kind::Open] {
        images.push(Image::new(empty.clone(), kind));
        images.push(Image::new(full.clone(), kind));
    }
    images.push(Image::closed(ring.clone()));
    images.push(Image::open(ring.clone()));
    images.push(Image::open(inner.clone()));
    images.push(Image::closed(inner.clone()));
    images.push(Image::closed(left.clone()));
    images.push(Image::closed(right.clone()));
    images.push(Image::open(thick_half_ring(
        grid,
        Side::Left,
        2.min(grid.rows() / 3).max(1),
    )));
    images.push(Image::open(thick_half_ring(
        grid,
        Side::Right,
        2.min(grid.rows() / 3).max(1),
    )));
    images.push(Image::closed(ring2.clone()));
    images.push(Image::open(ring2.clone()));
    images.push(Image::closed(ring3.clone()));
    images.push(Image::open(ring3.complement()));
    images.push(Image::closed(center_cell.clone()));
    images.push(Image::open(blot(grid, center, 1.min(grid.rows() / 4))));
    images.push(Image::closed(off_disk.clone()));
    images.push(Image::open(off_disk.clone()));
    images.push(Image::closed(vstrip.clone()));
    images.push(Image::open(vstrip.clone()));
    images.push(Image::closed(hstrip.clone()));
    images.push(Image::open(hstrip.clone()));
    for (i, &p) in geometry.marked.iter().enumerate() {
        let pad = (grid.rows() / 10).max(1);
        images.push(Image::closed(blot(grid, p, pad)));
        images.push(Image::open(blot(grid, p, pad)));
        for &qc in geometry.marked.iter().skip(i + 1) {
            images.push(Image::closed(lens(grid, p, qc, (grid.rows() / 12).max(1))));
            images.push(Image::open(lens(grid, p, qc, (grid.rows() / 12).max(1))));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blob_size = (grid.cell_count() / 8).max(3);
    for _ in 0..12 {
        let blob = random_solid_blob(grid, &mut rng, blob_size);
        images.push(Image::closed(blob.clone()));
        images.push(Image::open(blob));
    }

    // pairs must be separated (not merely cell-disjoint): touching sets
    // model continuum sets sharing a boundary, where additivity is silent
    let mut disjoint_pairs = vec![
        DisjointPair::new(
            Image::closed(full.clone()),
            Image::closed(empty.clone()),
            Kind::Closed,
        ),
        DisjointPair::new(
            Image::open(empty.clone()),
            Image::open(inner.clone()),
            Kind::Open,
        ),
        DisjointPair::new(
            Image::closed(ring.clone()),
            Image::closed(center_cell.clone()),
            Kind::Closed,
        ),
    ];
    {
        // two border arcs with a two-column gap at top and bottom
        let m = grid.cols() / 2;
        let right_trim = CellSet::from_pred(grid, |c| ring.contains(c) && c.col >= m + 2);
        if !right_trim.is_empty() {
            disjoint_pairs.push(DisjointPair::new(
                Image::closed(left.clone()),
                Image::closed(right_trim),
                Kind::Closed,
            ));
        }
        let inner_blob = blot(grid, geometry.center, (grid.rows() / 8).max(1));
        if !sets_adjacent(&ring, &inner_blob, grid.region_adjacency()) {
            disjoint_pairs.push(DisjointPair::new(
                Image::closed(ring.clone()),
                Image::closed(inner_blob),
                Kind::Closed,
            ));
        }
    }
    if geometry.marked.len() >= 2 {
        let a = blot(grid, geometry.marked[0], (grid.rows() / 16).max(1));
        let b = blot(grid, geometry.marked[1], (grid.rows() / 16).max(1));
        if !sets_adjacent(&a, &b, grid.region_adjacency()) {
            disjoint_pairs.push(DisjointPair::new(
                Image::closed(a.clone()),
                Image::closed(b.clone()),
                Kind::Closed,
            ));
            let wider = dilate(grid, &a, 1);
            if !sets_adjacent(&wider, &b, grid.complement_adjacency()) {
                disjoint_pairs.push(DisjointPair::new(
                    Image::open(wider),
                    Image::open(b),
                    Kind::Open,
                ));
            }
        }
    }

    let mut nested_pairs = vec![
        (Image::closed(ring.clone()), Image::closed(ring2.clone())),
        (Image::closed(ring2.clone()), Image::closed(ring3.clone())),
        (Image::open(ring.clone()), Image::open(ring2.clone())),
        (
            Image::closed(center_cell.clone()),
            Image::closed(vstrip.clone()),
        ),
        (
            Image::closed(vstrip.clone()),
            Image::closed(vstrip.union(&hstrip)),
        ),
        (Image::open(empty.clone()), Image::open(inner.clone())),
        (Image::closed(off_disk.clone()), Image::closed(full.clone())),
    ];
    for &p in &geometry.marked {
        nested_pairs.push((
            Image::closed(blot(grid, p, 1)),
            Image::closed(blot(grid, p, (grid.rows() / 8).max(2))),
        ));
    }

    let mut chain = Vec::new();
    let max_pad = (grid.rows() / 2).saturating_sub(2);
    let mut pads = vec![0, grid.rows() / 8, grid.rows() / 4, max_pad];
    pads.sort_unstable();
    pads.dedup();
    for pad in pads {
        chain.push(Image::open(blot(grid, center, pad.min(max_pad))));
    }
    chain.push(Image::open(inner.clone()));
    chain.push(Image::open(full.clone()));
    let ring_chain: Vec<Image> = (1..=3u16)
        .map(|w| Image::open(thick_ring(grid, w.min(grid.rows() / 3).max(1))))
        .collect();
    let open_chains = vec![chain, ring_chain];

    let open_sets = vec![
        Image::open(full.clone()),
        Image::open(inner.clone()),
        Image::open(ring2.clone()),
        Image::open(off_disk.clone()),
        Image::open(blot(grid, center, (grid.rows() / 8).max(1))),
    ];

    TestFamily {
        images,
        disjoint_pairs,
        nested_pairs,
        open_chains,
        open_sets,
    }
}

/// Open pair family for the point-mass characterization: template opens plus
/// punctured grids around a cell sample, so a genuine point mass pins its
/// own cell as the intersection of the induced measure-one closed sets.
pub fn characterization_pairs(
    grid: &Grid,
    geometry: &DistinguishedGeometry,
) -> Vec<(Image, Image)> {
    let w = 2.min(grid.rows() / 3).max(1);
    let mut out = vec![
        (
            Image::open(thick_half_ring(grid, Side::Left, w)),
            Image::open(thick_half_ring(grid, Side::Right, w)),
        ),
        (
            Image::open(inner_square(grid)),
            Image::open(thick_ring(grid, w)),
        ),
    ];
    // overlapping half-lenses: the union is a connected open set holding
    // two marked points while each half holds just one
    let pad = (grid.rows() / 12).max(1);
    for i in 0..geometry.marked.len() {
        for j in (i + 1)..geometry.marked.len() {
            let p = geometry.marked[i];
            let q = geometry.marked[j];
            let mid = Cell::new((p.row + q.row) / 2, (p.col + q.col) / 2);
            out.push((
                Image::open(lens(grid, p, mid, pad)),
                Image::open(lens(grid, q, mid, pad)),
            ));
        }
    }
    let mut sample: Vec<Cell> = vec![geometry.center];
    sample.extend(geometry.marked.iter().copied());
    sample.push(Cell::new(0, 0));
    sample.push(Cell::new(grid.rows() / 3, grid.cols() / 2));
    sample.sort();
    sample.dedup();
    for pair in sample.windows(2) {
        let a = CellSet::from_pred(grid, |c| c != pair[0]);
        let b = CellSet::from_pred(grid, |c| c != pair[1]);
        out.push((Image::open(a), Image::open(b)));
    }
    out
}

/// Plateau function subordinate to an open set: exactly 1 on the deep
/// erosion, ramp values on the shallow collar, 0 outside the support
/// erosion. Returns `None` when the deep erosion is empty.
pub fn plateau(
    grid: &Arc<Grid>,
    u: &Image,
    support_depth: u32,
    full_depth: u32,
    name: impl Into<String>,
) -> Option<GridFunction> {
    debug_assert!(u.kind == Kind::Open);
    debug_assert!(full_depth >= support_depth);
    let support = erode_within(grid, &u.cells, support_depth);
    let core = erode_within(grid, &u.cells, full_depth);
    if core.is_empty() {
        return None;
    }
    // three steps: 1 on the core, 1/2 on the collar, 0 outside the support
    let mut values = vec![0.0; grid.cell_count()];
    for cell in support.iter() {
        values[grid.index(cell)] = 0.5;
    }
    for cell in core.iter() {
        values[grid.index(cell)] = 1.0;
    }
    GridFunction::new(grid.clone(), values, name).ok()
}
