//! Quasi-measures on a grid: 0-1 rules on solid sets extended to all images.
//!
//! A rule assigns 0 or 1 to every solid set. A closed connected set F gets
//! `1 - sum(rule(U_j))` over the solid open components U_j of its complement,
//! disjoint unions of closed sets add, and an open set gets the complement
//! value `1 - eval(complement)`. Every intermediate value is asserted to stay
//! in range; a failed assertion signals a connectivity artifact and surfaces
//! as an error instead of a clamped number.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family;
use crate::grid::{
    connected_components, erode, is_solid, sets_adjacent, Cell, CellSet, DistinguishedGeometry,
    Grid, Image, Kind,
};
use crate::map::CellMap;
use crate::transform::ImageTransformation;
use crate::value::Value;

/// A 0-1 rule on solid sets, the seed of the extension chain.
#[derive(Debug, Clone)]
pub enum SolidRule {
    /// 1 iff the set contains the border, or intersects the border and
    /// contains the center cell.
    AarnesSquare {
        geometry: Arc<DistinguishedGeometry>,
    },
    /// 1 iff the set holds at least two of the three marked points: the
    /// indicator `1_(1/2,1]` of the ordinary 3-point measure.
    ThreePoint {
        geometry: Arc<DistinguishedGeometry>,
    },
    /// Point mass at one cell.
    DiracAt(Cell),
}

impl SolidRule {
    fn value_on(&self, cells: &CellSet) -> bool {
        match self {
            SolidRule::AarnesSquare { geometry } => {
                geometry.border.is_subset(cells)
                    || (!cells.intersection(&geometry.border).is_empty()
                        && cells.contains(geometry.center))
            }
            SolidRule::ThreePoint { geometry } => {
                geometry
                    .marked
                    .iter()
                    .filter(|p| cells.contains(**p))
                    .count()
                    >= 2
            }
            SolidRule::DiracAt(cell) => cells.contains(*cell),
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Simple(SolidRule),
    Pushforward {
        inner: Box<QuasiMeasure>,
        map: Arc<CellMap>,
    },
    Mixture {
        weights: Vec<Value>,
        parts: Vec<QuasiMeasure>,
    },
    Pullback {
        transform: Box<ImageTransformation>,
        outer: Box<QuasiMeasure>,
    },
}

/// An evaluatable quasi-measure specification.
#[derive(Debug, Clone)]
pub struct QuasiMeasure {
    grid: Arc<Grid>,
    repr: Repr,
    label: String,
}

impl QuasiMeasure {
    pub fn aarnes(grid: Arc<Grid>, geometry: Arc<DistinguishedGeometry>) -> Result<Self> {
        if !geometry.border.matches_grid(&grid) {
            return Err(Error::SpaceMismatch(
                "geometry built for another grid".into(),
            ));
        }
        Ok(QuasiMeasure {
            grid,
            repr: Repr::Simple(SolidRule::AarnesSquare { geometry }),
            label: "aarnes".into(),
        })
    }

    pub fn three_point(grid: Arc<Grid>, geometry: Arc<DistinguishedGeometry>) -> Result<Self> {
        if !geometry.border.matches_grid(&grid) {
            return Err(Error::SpaceMismatch(
                "geometry built for another grid".into(),
            ));
        }
        if geometry.marked.len() != 3 {
            return Err(Error::PreconditionViolation(format!(
                "three-point measure needs 3 marked points, geometry has {}",
                geometry.marked.len()
            )));
        }
        Ok(QuasiMeasure {
            grid,
            repr: Repr::Simple(SolidRule::ThreePoint { geometry }),
            label: "three_point".into(),
        })
    }

    pub fn dirac(grid: Arc<Grid>, at: Cell) -> Result<Self> {
        if !grid.contains(at) {
            return Err(Error::InvalidGrid(format!("cell {at} out of bounds")));
        }
        Ok(QuasiMeasure {
            grid,
            repr: Repr::Simple(SolidRule::DiracAt(at)),
            label: format!("dirac:{}:{}", at.row, at.col),
        })
    }

    /// Convex mixture. Weights must be nonnegative and sum to 1 within
    /// 1e-12; they are then carried exactly as dyadic rationals.
    pub fn mixture(weights: &[f64], parts: Vec<QuasiMeasure>) -> Result<Self> {
        if weights.len() != parts.len() || parts.is_empty() {
            return Err(Error::PreconditionViolation(
                "mixture needs matching nonempty weights and parts".into(),
            ));
        }
        let grid = parts[0].grid.clone();
        if parts.iter().any(|p| p.grid != grid) {
            return Err(Error::SpaceMismatch(
                "mixture parts on different grids".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::PreconditionViolation("weights must be >= 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::PreconditionViolation(format!(
                "mixture weights sum to {total}, need 1"
            )));
        }
        let weights = weights
            .iter()
            .map(|w| Value::from_f64_exact(*w).expect("finite weight"))
            .collect();
        Ok(QuasiMeasure {
            grid,
            repr: Repr::Mixture { weights, parts },
            label: "mixture".into(),
        })
    }

    /// The image measure under a cell map `f`: `A -> inner(f^-1(A))`.
    pub fn pushforward(inner: QuasiMeasure, map: Arc<CellMap>) -> Result<Self> {
        if map.from_grid() != &inner.grid {
            return Err(Error::SpaceMismatch(
                "pushforward map must start on the inner measure's grid".into(),
            ));
        }
        let label = format!("push({})", inner.label);
        Ok(QuasiMeasure {
            grid: map.to_grid().clone(),
            repr: Repr::Pushforward {
                inner: Box::new(inner),
                map,
            },
            label,
        })
    }

    /// `A -> outer(q(A))` for an image transformation `q` into the grid of
    /// `outer`. This is the adjoint pullback.
    pub(crate) fn pulled_back(transform: ImageTransformation, outer: QuasiMeasure) -> Self {
        let label = format!("pullback({})", outer.label);
        QuasiMeasure {
            grid: transform.source_grid().clone(),
            repr: Repr::Pullback {
                transform: Box::new(transform),
                outer: Box::new(outer),
            },
            label,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn geometry(&self) -> Option<&Arc<DistinguishedGeometry>> {
        match &self.repr {
            Repr::Simple(SolidRule::AarnesSquare { geometry })
            | Repr::Simple(SolidRule::ThreePoint { geometry }) => Some(geometry),
            _ => None,
        }
    }

    fn is_mixture(&self) -> bool {
        matches!(self.repr, Repr::Mixture { .. })
    }

    /// Evaluate the measure on an image.
    pub fn eval(&self, image: &Image) -> Result<Value> {
        if !image.cells.matches_grid(&self.grid) {
            return Err(Error::SpaceMismatch(format!(
                "image shape {}x{} does not match measure grid {}x{}",
                image.cells.rows(),
                image.cells.cols(),
                self.grid.rows(),
                self.grid.cols()
            )));
        }
        match &self.repr {
            Repr::Simple(rule) => {
                if let SolidRule::DiracAt(cell) = rule {
                    // membership is exactly what the extension chain yields
                    // for a point mass, on any grid shape
                    return Ok(if image.cells.contains(*cell) {
                        Value::one()
                    } else {
                        Value::zero()
                    });
                }
                match image.kind {
                    Kind::Closed => self.closed_value(rule, &image.cells),
                    Kind::Open => {
                        Ok(Value::one() - self.closed_value(rule, &image.cells.complement())?)
                    }
                }
            }
            Repr::Pushforward { inner, map } => {
                inner.eval(&Image::new(map.preimage_cells(&image.cells), image.kind))
            }
            Repr::Mixture { weights, parts } => {
                let mut acc = Value::zero();
                for (w, part) in weights.iter().zip(parts) {
                    acc += w.clone() * part.eval(image)?;
                }
                Ok(acc)
            }
            Repr::Pullback { transform, outer } => outer.eval(&transform.apply(image)?),
        }
    }

    /// Extension-chain value of a closed cell set: per region component,
    /// one minus the rule values of the solid open complement components.
    fn closed_value(&self, rule: &SolidRule, cells: &CellSet) -> Result<Value> {
        let comps = connected_components(cells, self.grid.region_adjacency());
        let mut total: i64 = 0;
        for comp in &comps {
            let holes = connected_components(&comp.complement(), self.grid.complement_adjacency());
            let mut v: i64 = 1;
            for hole in &holes {
                if !is_solid(&self.grid, &Image::open(hole.clone())) {
                    return Err(Error::InvariantViolation(format!(
                        "complement component of a closed component is not solid \
                         ({} cells); connectivity-convention artifact",
                        hole.len()
                    )));
                }
                if rule.value_on(hole) {
                    v -= 1;
                }
            }
            if v != 0 && v != 1 {
                return Err(Error::InvariantViolation(format!(
                    "component value {v} escapes {{0,1}}"
                )));
            }
            total += v;
        }
        if !(0..=1).contains(&total) {
            return Err(Error::InvariantViolation(format!(
                "closed-set value {total} escapes [0,1]"
            )));
        }
        Ok(Value::from_int(total))
    }
}

/// True iff the measure takes only the values 0 and 1 on every image in the
/// family. An empty family is vacuously simple.
pub fn is_simple(m: &QuasiMeasure, family: &[Image]) -> Result<bool> {
    for image in family {
        if !m.eval(image)?.is_zero_or_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A disjoint pair together with the kind claimed for its union.
#[derive(Debug, Clone)]
pub struct DisjointPair {
    pub a: Image,
    pub b: Image,
    pub union_kind: Kind,
}

impl DisjointPair {
    pub fn new(a: Image, b: Image, union_kind: Kind) -> Self {
        DisjointPair { a, b, union_kind }
    }

    pub fn union(&self) -> Image {
        Image::new(self.a.cells.union(&self.b.cells), self.union_kind)
    }
}

#[derive(Debug, Clone)]
pub struct AdditivityOutcome {
    pub pair_index: usize,
    pub value_a: Value,
    pub value_b: Value,
    pub value_union: Value,
    pub additive: bool,
}

#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub outcomes: Vec<AdditivityOutcome>,
}

impl AdditivityReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.additive)
    }

    pub fn failures(&self) -> Vec<&AdditivityOutcome> {
        self.outcomes.iter().filter(|o| !o.additive).collect()
    }
}

fn union_kind_ok(image: &Image, union_kind: Kind) -> bool {
    // the empty set and the full grid are clopen, any tag works
    image.cells.is_empty() || image.cells.is_full() || image.kind == union_kind
}

/// Check `eval(A + B) = eval(A) + eval(B)` over disjoint pairs. Exact
/// comparison; mixtures get a 1e-12 allowance for float-specified weights.
pub fn check_additivity(m: &QuasiMeasure, pairs: &[DisjointPair]) -> Result<AdditivityReport> {
    let mut outcomes = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        if !pair.a.cells.is_disjoint(&pair.b.cells) {
            return Err(Error::MalformedPair(format!("pair {i} overlaps")));
        }
        // adjacent cell sets model sets that touch along a boundary, so the
        // union is not a disjoint union of images
        if sets_adjacent(
            &pair.a.cells,
            &pair.b.cells,
            m.grid().kind_adjacency(pair.union_kind),
        ) {
            return Err(Error::MalformedPair(format!(
                "pair {i} touches under the union adjacency"
            )));
        }
        if !union_kind_ok(&pair.a, pair.union_kind) || !union_kind_ok(&pair.b, pair.union_kind) {
            return Err(Error::MalformedPair(format!(
                "pair {i}: union of a {} and a {} set is not representable as a {} image",
                pair.a.kind.label(),
                pair.b.kind.label(),
                pair.union_kind.label()
            )));
        }
        let value_a = m.eval(&pair.a)?;
        let value_b = m.eval(&pair.b)?;
        let value_union = m.eval(&pair.union())?;
        let delta = value_union.clone() - (value_a.clone() + value_b.clone());
        let additive = if m.is_mixture() {
            delta.abs().to_f64() <= 1e-12
        } else {
            delta.is_zero()
        };
        outcomes.push(AdditivityOutcome {
            pair_index: i,
            value_a,
            value_b,
            value_union,
            additive,
        });
    }
    Ok(AdditivityReport { outcomes })
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub open_value: Value,
    pub witnesses: Vec<(u32, Value)>,
    pub passed: bool,
}

impl RegularityReport {
    pub fn best(&self) -> Option<&(u32, Value)> {
        self.witnesses.iter().max_by(|a, b| a.1.cmp(&b.1))
    }
}

/// Witness-based compact-regularity check: erode the open set at the given
/// depths, evaluate the closed witnesses, and compare the best against the
/// open value. Sound but not complete.
pub fn check_regularity(
    m: &QuasiMeasure,
    u: &Image,
    witness_depths: &[u32],
) -> Result<RegularityReport> {
    if u.kind != Kind::Open {
        return Err(Error::PreconditionViolation(
            "regularity check needs an open image".into(),
        ));
    }
    let open_value = m.eval(u)?;
    let mut witnesses = Vec::with_capacity(witness_depths.len());
    for &d in witness_depths {
        let k = erode(m.grid(), &u.cells, d);
        let v = m.eval(&Image::closed(k))?;
        witnesses.push((d, v));
    }
    let best = witnesses
        .iter()
        .map(|(_, v)| v.clone())
        .max()
        .unwrap_or_else(Value::zero);
    let passed = best == open_value;
    Ok(RegularityReport {
        open_value,
        witnesses,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct NonSubadditiveWitness {
    pub a: Image,
    pub b: Image,
    pub union: Image,
    pub value_a: Value,
    pub value_b: Value,
    pub value_union: Value,
    pub candidates_tried: u64,
}

/// Search for images with `eval(A u B) > eval(A) + eval(B)`. Template pairs
/// (half rings, thick arcs, rectangles around marked points) come first in a
/// fixed order, then seeded random solid blob pairs. Deterministic per seed;
/// candidates whose evaluation errors are skipped.
pub fn find_nonsubadditive_witness(
    m: &QuasiMeasure,
    budget: u64,
    seed: u64,
) -> Option<NonSubadditiveWitness> {
    let grid = m.grid().clone();
    if !grid.is_square() {
        return None;
    }
    let geometry = match m.geometry() {
        Some(g) => g.clone(),
        None => Arc::new(DistinguishedGeometry::for_grid(&grid, &[]).ok()?),
    };
    let mut tried: u64 = 0;
    let check = |a: Image, b: Image, tried: u64| -> Option<NonSubadditiveWitness> {
        if a.kind != b.kind {
            return None;
        }
        let union = Image::new(a.cells.union(&b.cells), a.kind);
        let value_a = m.eval(&a).ok()?;
        let value_b = m.eval(&b).ok()?;
        let value_union = m.eval(&union).ok()?;
        if value_union > value_a.clone() + value_b.clone() {
            Some(NonSubadditiveWitness {
                a,
                b,
                union,
                value_a,
                value_b,
                value_union,
                candidates_tried: tried,
            })
        } else {
            None
        }
    };

    for (a, b) in family::witness_template_pairs(&grid, &geometry) {
        if tried >= budget {
            return None;
        }
        tried += 1;
        if let Some(w) = check(a, b, tried) {
            return Some(w);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while tried < budget {
        tried += 1;
        let size = (grid.cell_count() / 6).max(4);
        let a = family::random_solid_blob(&grid, &mut rng, size);
        let b = family::random_solid_blob(&grid, &mut rng, size);
        if let Some(w) = check(Image::closed(a), Image::closed(b), tried) {
            return Some(w);
        }
    }
    None
}

/// Outcome of testing the point-mass characterization: a subadditivity
/// violation, a recovered candidate point, or an inconclusive family.
#[derive(Debug, Clone)]
pub enum DiracCharacterization {
    ViolatingPair {
        a: Image,
        b: Image,
        value_a: Value,
        value_b: Value,
        value_union: Value,
    },
    Candidate {
        cells: CellSet,
        value: Value,
    },
    Inconclusive {
        reason: String,
    },
}

/// If the measure is subadditive on the supplied open pairs it must be a
/// point mass: the candidate point is the intersection of the closed sets of
/// measure one induced by the family. Otherwise the first violating pair is
/// reported.
pub fn dirac_characterization_check(
    m: &QuasiMeasure,
    pair_family: &[(Image, Image)],
) -> Result<DiracCharacterization> {
    let mut closed_ones: Vec<CellSet> = Vec::new();
    for (i, (a, b)) in pair_family.iter().enumerate() {
        if a.kind != Kind::Open || b.kind != Kind::Open {
            return Err(Error::PreconditionViolation(format!(
                "pair {i} must consist of open images"
            )));
        }
        let value_a = m.eval(a)?;
        let value_b = m.eval(b)?;
        if !value_a.is_zero_or_one() || !value_b.is_zero_or_one() {
            return Err(Error::PreconditionViolation(format!(
                "measure is not simple on pair {i}"
            )));
        }
        let union = Image::open(a.cells.union(&b.cells));
        let value_union = m.eval(&union)?;
        if value_union > value_a.clone() + value_b.clone() {
            return Ok(DiracCharacterization::ViolatingPair {
                a: a.clone(),
                b: b.clone(),
                value_a,
                value_b,
                value_union,
            });
        }
        for (img, v) in [(a, &value_a), (b, &value_b), (&union, &value_union)] {
            if v.is_zero() {
                closed_ones.push(img.cells.complement());
            }
        }
    }
    let grid = m.grid();
    let mut intersection = CellSet::full(grid);
    for f in &closed_ones {
        intersection = intersection.intersection(f);
    }
    if intersection.is_empty() {
        return Ok(DiracCharacterization::Inconclusive {
            reason: "intersection of measure-one closed sets is empty".into(),
        });
    }
    let value = m.eval(&Image::closed(intersection.clone()))?;
    if !value.is_one() {
        return Ok(DiracCharacterization::Inconclusive {
            reason: format!("candidate set has measure {value}, family too small"),
        });
    }
    Ok(DiracCharacterization::Candidate {
        cells: intersection,
        value,
    })
}
