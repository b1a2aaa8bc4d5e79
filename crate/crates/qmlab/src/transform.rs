//! Image transformations between grids and their induced structure: the
//! adjoint pullback of quasi-measures, the induced function on the target,
//! composition, factorization through a finite sample of simple measures,
//! and reconstruction from a quasi-homomorphism.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::func::GridFunction;
use crate::grid::{erode, Cell, CellSet, Grid, Image, Kind};
use crate::map::CellMap;
use crate::measure::{self, DisjointPair, QuasiMeasure};
use crate::value::Value;

/// A finite list of labeled simple quasi-measures standing in for the space
/// of all simple quasi-measures, which is never enumerated.
#[derive(Debug, Clone)]
pub struct StarSample {
    members: Vec<(String, QuasiMeasure)>,
}

impl StarSample {
    pub fn new(members: Vec<(String, QuasiMeasure)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::PreconditionViolation("empty sample".into()));
        }
        let grid = members[0].1.grid().clone();
        if members.iter().any(|(_, m)| m.grid() != &grid) {
            return Err(Error::SpaceMismatch(
                "sample members on different grids".into(),
            ));
        }
        let mut labels: Vec<&str> = members.iter().map(|(l, _)| l.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != members.len() {
            return Err(Error::PreconditionViolation(
                "sample labels must be distinct".into(),
            ));
        }
        Ok(StarSample { members })
    }

    /// Every point mass on the grid, labeled `dirac:row:col`.
    pub fn dirac_sample(grid: &Arc<Grid>) -> Result<Self> {
        let members = grid
            .cells()
            .map(|c| {
                QuasiMeasure::dirac(grid.clone(), c)
                    .map(|m| (format!("dirac:{}:{}", c.row, c.col), m))
            })
            .collect::<Result<Vec<_>>>()?;
        StarSample::new(members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(String, QuasiMeasure)] {
        &self.members
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.members[0].1.grid()
    }

    /// Check that every member is simple over the family.
    pub fn validate_simple(&self, family: &[Image]) -> Result<()> {
        for (label, m) in &self.members {
            if !measure::is_simple(m, family)? {
                return Err(Error::InvariantViolation(format!(
                    "sample member `{label}` is not simple on the test family"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone)]
enum Repr {
    /// `A -> f^-1(A)` for a cell map f from the target into the source.
    Preimage(Arc<CellMap>),
    /// Full target when sigma(A) = 1, empty when sigma(A) = 0.
    FromSimple { sigma: Box<QuasiMeasure> },
    /// `A -> {members assigning A value 1}` over a discrete target.
    StarRestricted { sample: Arc<StarSample> },
    Composite {
        first: Box<ImageTransformation>,
        second: Box<ImageTransformation>,
    },
    /// Built from a quasi-homomorphism: open sets are unions of the
    /// positivity sets of the functional over subordinate basis members.
    FromFunctional {
        basis: Arc<Vec<GridFunction>>,
        /// indices of basis members usable as subordinates (values in [0,1])
        subordinate: Arc<Vec<bool>>,
        /// support of each basis member, on the source grid
        supports: Arc<Vec<CellSet>>,
        /// positivity set of r(k) on the target, per basis member
        positives: Arc<Vec<CellSet>>,
    },
    /// Negative-control fixture: maps every image to the empty set and
    /// deliberately fails the full-space axiom.
    ConstantEmpty,
}

impl fmt::Debug for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repr::Preimage(_) => write!(f, "Preimage"),
            Repr::FromSimple { .. } => write!(f, "FromSimple"),
            Repr::StarRestricted { sample } => write!(f, "StarRestricted({})", sample.len()),
            Repr::Composite { .. } => write!(f, "Composite"),
            Repr::FromFunctional { basis, .. } => write!(f, "FromFunctional({})", basis.len()),
            Repr::ConstantEmpty => write!(f, "ConstantEmpty"),
        }
    }
}

/// An evaluatable map of images between two grids.
#[derive(Debug, Clone)]
pub struct ImageTransformation {
    source: Arc<Grid>,
    target: Arc<Grid>,
    repr: Repr,
    label: String,
}

impl ImageTransformation {
    /// The preimage transformation of a cell map: images in the map's
    /// codomain pull back to its domain.
    pub fn preimage(map: Arc<CellMap>) -> Self {
        ImageTransformation {
            source: map.to_grid().clone(),
            target: map.from_grid().clone(),
            label: "preimage".into(),
            repr: Repr::Preimage(map),
        }
    }

    pub fn identity(grid: Arc<Grid>) -> Self {
        ImageTransformation::preimage(Arc::new(CellMap::identity(grid))).with_label("identity")
    }

    /// The transformation of a simple measure: everything or nothing.
    pub fn from_simple(sigma: QuasiMeasure, target: Arc<Grid>) -> Self {
        ImageTransformation {
            source: sigma.grid().clone(),
            target,
            label: format!("from_simple({})", sigma.label()),
            repr: Repr::FromSimple {
                sigma: Box::new(sigma),
            },
        }
    }

    /// Restrict the canonical star transformation to a finite sample; the
    /// target is a discrete space with one point per member.
    pub fn star_restricted(sample: Arc<StarSample>) -> Result<Self> {
        let target = Grid::discrete(sample.len() as u16)?;
        Ok(ImageTransformation {
            source: sample.grid().clone(),
            target,
            label: "star_restricted".into(),
            repr: Repr::StarRestricted { sample },
        })
    }

    /// Deliberately broken map used as a negative control in axiom checks.
    pub fn constant_empty(source: Arc<Grid>, target: Arc<Grid>) -> Self {
        ImageTransformation {
            source,
            target,
            label: "constant_empty".into(),
            repr: Repr::ConstantEmpty,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source_grid(&self) -> &Arc<Grid> {
        &self.source
    }

    pub fn target_grid(&self) -> &Arc<Grid> {
        &self.target
    }

    /// Map an image of the source grid to an image of the target grid.
    pub fn apply(&self, image: &Image) -> Result<Image> {
        if !image.cells.matches_grid(&self.source) {
            return Err(Error::SpaceMismatch(format!(
                "image shape {}x{} does not match transformation source {}x{}",
                image.cells.rows(),
                image.cells.cols(),
                self.source.rows(),
                self.source.cols()
            )));
        }
        match &self.repr {
            Repr::Preimage(map) => Ok(Image::new(map.preimage_cells(&image.cells), image.kind)),
            Repr::FromSimple { sigma } => {
                let v = sigma.eval(image)?;
                if v.is_one() {
                    Ok(Image::full(&self.target, image.kind))
                } else if v.is_zero() {
                    Ok(Image::empty(&self.target, image.kind))
                } else {
                    Err(Error::InvariantViolation(format!(
                        "from_simple measure returned {v}, not 0 or 1"
                    )))
                }
            }
            Repr::StarRestricted { sample } => {
                let mut cells = CellSet::empty(&self.target);
                for (i, (label, member)) in sample.members().iter().enumerate() {
                    let v = member.eval(image)?;
                    if v.is_one() {
                        cells.insert(Cell::new(0, i as u16));
                    } else if !v.is_zero() {
                        return Err(Error::InvariantViolation(format!(
                            "sample member `{label}` returned {v}, not 0 or 1"
                        )));
                    }
                }
                Ok(Image::new(cells, image.kind))
            }
            Repr::Composite { first, second } => second.apply(&first.apply(image)?),
            Repr::FromFunctional {
                basis,
                subordinate,
                supports,
                positives,
            } => match image.kind {
                Kind::Open => {
                    let mut cells = CellSet::empty(&self.target);
                    for i in 0..basis.len() {
                        if subordinate[i] && supports[i].is_subset(&image.cells) {
                            cells = cells.union(&positives[i]);
                        }
                    }
                    Ok(Image::open(cells))
                }
                Kind::Closed => Ok(self.apply(&image.complement())?.complement()),
            },
            Repr::ConstantEmpty => Ok(Image::empty(&self.target, image.kind)),
        }
    }
}

/// Composition `p` after `q` (`q` is applied first).
pub fn compose(p: &ImageTransformation, q: &ImageTransformation) -> Result<ImageTransformation> {
    if q.target != p.source {
        return Err(Error::SpaceMismatch(format!(
            "cannot compose: `{}` ends on {}x{}, `{}` starts on {}x{}",
            q.label,
            q.target.rows(),
            q.target.cols(),
            p.label,
            p.source.rows(),
            p.source.cols()
        )));
    }
    Ok(ImageTransformation {
        source: q.source.clone(),
        target: p.target.clone(),
        label: format!("{}*{}", p.label, q.label),
        repr: Repr::Composite {
            first: Box::new(q.clone()),
            second: Box::new(p.clone()),
        },
    })
}

/// Pull a quasi-measure on the target back to the source: `A -> mu(q(A))`.
/// Simple measures pull back to simple measures.
pub fn pullback(q: &ImageTransformation, mu: &QuasiMeasure) -> Result<QuasiMeasure> {
    if mu.grid() != &q.target {
        return Err(Error::SpaceMismatch(
            "pullback needs a measure on the transformation target".into(),
        ));
    }
    Ok(QuasiMeasure::pulled_back(q.clone(), mu.clone()))
}

/// The induced function on the target: pointwise the value of the pulled
/// back point mass, computed as the first sublevel of `a` whose image under
/// `q` contains the target point.
pub fn induced_function(q: &ImageTransformation, a: &GridFunction) -> Result<GridFunction> {
    if a.grid() != &q.source {
        return Err(Error::SpaceMismatch(format!(
            "function `{}` does not live on the transformation source",
            a.name()
        )));
    }
    let values = a.distinct_values();
    let mut out = vec![f64::NAN; q.target.cell_count()];
    let mut filled = 0usize;
    for &t in &values {
        let image = q.apply(&a.sublevel(t))?;
        for cell in image.cells.iter() {
            let idx = q.target.index(cell);
            if out[idx].is_nan() {
                out[idx] = t;
                filled += 1;
            }
        }
        if filled == out.len() {
            break;
        }
    }
    if filled != out.len() {
        return Err(Error::InvariantViolation(
            "image of the full sublevel does not cover the target".into(),
        ));
    }
    GridFunction::new(q.target.clone(), out, format!("q({})", a.name()))
}

/// Change of variables across a transformation: integrating `a` against the
/// pullback equals integrating the induced function against the original.
pub fn change_of_variables_transform_check(
    q: &ImageTransformation,
    mu: &QuasiMeasure,
    a: &GridFunction,
) -> Result<crate::integral::DiscrepancyReport> {
    let lhs = crate::integral::integrate(&pullback(q, mu)?, a)?;
    let rhs = crate::integral::integrate(mu, &induced_function(q, a)?)?;
    let discrepancy = (lhs - rhs).abs();
    Ok(crate::integral::DiscrepancyReport {
        lhs,
        rhs,
        discrepancy,
        passed: discrepancy <= 1e-9,
    })
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub full_space_ok: bool,
    pub openness_ok: bool,
    pub additivity_failures: usize,
    pub regularity_failures: usize,
    pub passed: bool,
}

/// Check the four transformation axioms: the full space maps onto the
/// target, open images stay open, disjoint unions split, and closed subsets
/// of the image of an open set are covered by the image of an eroded closed
/// witness inside it.
pub fn check_axioms(
    q: &ImageTransformation,
    disjoint_pairs: &[DisjointPair],
    open_sets: &[Image],
    witness_depths: &[u32],
) -> Result<AxiomReport> {
    let full_space_ok = {
        let open = q.apply(&Image::full(&q.source, Kind::Open))?;
        let closed = q.apply(&Image::full(&q.source, Kind::Closed))?;
        open.cells.is_full() && closed.cells.is_full() && open.kind == Kind::Open
    };

    let mut openness_ok = true;
    for u in open_sets {
        if u.kind != Kind::Open {
            return Err(Error::PreconditionViolation(
                "open_sets must be open".into(),
            ));
        }
        if q.apply(u)?.kind != Kind::Open {
            openness_ok = false;
        }
    }

    let mut additivity_failures = 0usize;
    for pair in disjoint_pairs {
        if !pair.a.cells.is_disjoint(&pair.b.cells)
            || crate::grid::sets_adjacent(
                &pair.a.cells,
                &pair.b.cells,
                q.source.kind_adjacency(pair.union_kind),
            )
        {
            return Err(Error::MalformedPair("pair overlaps or touches".into()));
        }
        let qa = q.apply(&pair.a)?;
        let qb = q.apply(&pair.b)?;
        let qu = q.apply(&pair.union())?;
        if !qa.cells.is_disjoint(&qb.cells) || qa.cells.union(&qb.cells) != qu.cells {
            additivity_failures += 1;
        }
    }

    let mut regularity_failures = 0usize;
    for u in open_sets {
        let out = q.apply(u)?;
        for &dk in witness_depths {
            let k = erode(&q.target, &out.cells, dk);
            let mut covered = false;
            for &dl in witness_depths {
                let l = Image::closed(erode(&q.source, &u.cells, dl));
                if k.is_subset(&q.apply(&l)?.cells) {
                    covered = true;
                    break;
                }
            }
            if !covered {
                regularity_failures += 1;
            }
        }
    }

    let passed =
        full_space_ok && openness_ok && additivity_failures == 0 && regularity_failures == 0;
    Ok(AxiomReport {
        full_space_ok,
        openness_ok,
        additivity_failures,
        regularity_failures,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct DerivedPropertiesReport {
    pub complement_ok: bool,
    pub monotone_ok: bool,
    pub disjointness_ok: bool,
    pub continuity_ok: bool,
    pub passed: bool,
}

/// Consequences of the axioms: commutation with complements, monotonicity,
/// preservation of disjointness, and continuity along increasing open
/// chains.
pub fn derived_properties_check(
    q: &ImageTransformation,
    images: &[Image],
    nested_pairs: &[(Image, Image)],
    disjoint_pairs: &[DisjointPair],
    open_chains: &[Vec<Image>],
) -> Result<DerivedPropertiesReport> {
    let mut complement_ok = true;
    for a in images {
        if q.apply(&a.complement())? != q.apply(a)?.complement() {
            complement_ok = false;
        }
    }

    let mut monotone_ok = true;
    for (a, b) in nested_pairs {
        if !a.cells.is_subset(&b.cells) {
            return Err(Error::PreconditionViolation(
                "nested pair is not nested".into(),
            ));
        }
        if !q.apply(a)?.cells.is_subset(&q.apply(b)?.cells) {
            monotone_ok = false;
        }
    }

    let mut disjointness_ok = true;
    for pair in disjoint_pairs {
        if !q
            .apply(&pair.a)?
            .cells
            .is_disjoint(&q.apply(&pair.b)?.cells)
        {
            disjointness_ok = false;
        }
    }

    let mut continuity_ok = true;
    for chain in open_chains {
        let mut prev: Option<CellSet> = None;
        for u in chain {
            let out = q.apply(u)?.cells;
            if let Some(p) = &prev {
                if !p.is_subset(&out) {
                    continuity_ok = false;
                }
            }
            prev = Some(out);
        }
        if let (Some(last), Some(final_u)) = (prev, chain.last()) {
            if last != q.apply(final_u)?.cells {
                continuity_ok = false;
            }
        }
    }

    let passed = complement_ok && monotone_ok && disjointness_ok && continuity_ok;
    Ok(DerivedPropertiesReport {
        complement_ok,
        monotone_ok,
        disjointness_ok,
        continuity_ok,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct FactorizationReport {
    /// label of the matched sample member per target cell, in cell order
    pub assignments: Vec<Option<String>>,
    pub uncovered: Vec<Cell>,
    pub residual_mismatches: usize,
    pub passed: bool,
}

impl FactorizationReport {
    pub fn assignment(&self, grid: &Grid, cell: Cell) -> Option<&str> {
        self.assignments[grid.index(cell)].as_deref()
    }
}

/// Factor `q` through the star map of a finite sample: each target point is
/// matched to the sample member that agrees with its pulled-back point mass
/// on the whole family, then `q(A) = {y : sample[w(y)](A) = 1}` is verified
/// extensionally. Points no member explains are reported as uncovered, not
/// as a failure of the factorization itself.
pub fn factorize(
    q: &ImageTransformation,
    sample: &StarSample,
    family: &[Image],
) -> Result<FactorizationReport> {
    if sample.grid() != &q.source {
        return Err(Error::SpaceMismatch(
            "sample members must live on the transformation source".into(),
        ));
    }
    if family.is_empty() {
        return Err(Error::PreconditionViolation("empty test family".into()));
    }
    let words = family.len().div_ceil(64);

    let applied: Vec<CellSet> = family
        .iter()
        .map(|img| Ok(q.apply(img)?.cells))
        .collect::<Result<_>>()?;

    let mut member_prints: Vec<Vec<u64>> = Vec::with_capacity(sample.len());
    for (label, m) in sample.members() {
        let mut print = vec![0u64; words];
        for (i, img) in family.iter().enumerate() {
            let v = m.eval(img)?;
            if v.is_one() {
                print[i / 64] |= 1 << (i % 64);
            } else if !v.is_zero() {
                return Err(Error::PreconditionViolation(format!(
                    "sample member `{label}` is not simple on the family"
                )));
            }
        }
        member_prints.push(print);
    }
    let mut by_print: HashMap<&[u64], usize> = HashMap::new();
    for (i, p) in member_prints.iter().enumerate() {
        by_print.entry(p.as_slice()).or_insert(i);
    }

    let target = q.target_grid();
    let mut assignments: Vec<Option<String>> = vec![None; target.cell_count()];
    let mut uncovered = Vec::new();
    let mut prints: Vec<Vec<u64>> = vec![vec![0u64; words]; target.cell_count()];
    for (i, cells) in applied.iter().enumerate() {
        for cell in cells.iter() {
            prints[target.index(cell)][i / 64] |= 1 << (i % 64);
        }
    }
    let mut matched: Vec<Option<usize>> = vec![None; target.cell_count()];
    for (idx, print) in prints.iter().enumerate() {
        match by_print.get(print.as_slice()) {
            Some(&m) => {
                matched[idx] = Some(m);
                assignments[idx] = Some(sample.members()[m].0.clone());
            }
            None => uncovered.push(target.cell_at(idx)),
        }
    }

    let mut residual_mismatches = 0usize;
    for (i, cells) in applied.iter().enumerate() {
        for (idx, m) in matched.iter().enumerate() {
            if let Some(m) = m {
                let lhs = cells.contains(target.cell_at(idx));
                let rhs = member_prints[*m][i / 64] >> (i % 64) & 1 == 1;
                if lhs != rhs {
                    residual_mismatches += 1;
                }
            }
        }
    }

    let passed = uncovered.is_empty() && residual_mismatches == 0;
    Ok(FactorizationReport {
        assignments,
        uncovered,
        residual_mismatches,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub max_discrepancy: f64,
    pub passed: bool,
}

/// Rebuild an image transformation from a quasi-homomorphism `r`: an open
/// set maps to the union of the positivity sets of `r` over subordinate
/// basis functions (support inside the set, values between 0 and 1), and
/// closed sets follow by complement. The functional is pre-checked for
/// normalization and multiplicativity, and the round trip
/// `r -> q -> induced` is verified on the basis.
pub fn reconstruct_from_homomorphism(
    r: &dyn Fn(&GridFunction) -> Result<GridFunction>,
    function_basis: &[GridFunction],
    source: &Arc<Grid>,
    target: &Arc<Grid>,
) -> Result<(ImageTransformation, ReconstructionReport)> {
    if function_basis.is_empty() {
        return Err(Error::PreconditionViolation("empty function basis".into()));
    }
    if function_basis.iter().any(|f| f.grid() != source) {
        return Err(Error::SpaceMismatch(
            "basis must live on the source grid".into(),
        ));
    }

    let ones = GridFunction::constant(source.clone(), 1.0)?;
    let r_ones = r(&ones)?;
    if r_ones.grid() != target {
        return Err(Error::SpaceMismatch(
            "functional lands on the wrong grid".into(),
        ));
    }
    if r_ones.values().iter().any(|v| (v - 1.0).abs() > 1e-9) {
        return Err(Error::NotAQuasiHomomorphism(
            "normalization fails: r(1) is not the constant 1".into(),
        ));
    }
    for a in function_basis {
        let ra = r(a)?;
        let raa = r(&a.mul(a)?)?;
        for (x, y) in raa.values().iter().zip(ra.values()) {
            if (x - y * y).abs() > 1e-9 {
                return Err(Error::NotAQuasiHomomorphism(format!(
                    "multiplicativity fails on `{}`: r(a*a) != r(a)^2",
                    a.name()
                )));
            }
        }
    }

    let mut subordinate = Vec::with_capacity(function_basis.len());
    let mut supports = Vec::with_capacity(function_basis.len());
    let mut positives = Vec::with_capacity(function_basis.len());
    for k in function_basis {
        subordinate.push(k.min() >= 0.0 && k.max() <= 1.0);
        supports.push(k.support());
        let rk = r(k)?;
        positives.push(CellSet::from_pred(target, |c| rk.value(c) > 0.0));
    }

    let q = ImageTransformation {
        source: source.clone(),
        target: target.clone(),
        label: "reconstructed".into(),
        repr: Repr::FromFunctional {
            basis: Arc::new(function_basis.to_vec()),
            subordinate: Arc::new(subordinate),
            supports: Arc::new(supports),
            positives: Arc::new(positives),
        },
    };

    let mut max_discrepancy = 0.0f64;
    for a in function_basis {
        let induced = induced_function(&q, a)?;
        let ra = r(a)?;
        for (x, y) in induced.values().iter().zip(ra.values()) {
            max_discrepancy = max_discrepancy.max((x - y).abs());
        }
    }
    let passed = max_discrepancy <= 1e-9;
    Ok((
        q,
        ReconstructionReport {
            max_discrepancy,
            passed,
        },
    ))
}

/// Extend a basis with the clamped level ramps of each member, one per
/// adjacent pair of distinct values. A ramp is positive exactly above its
/// level, so the reconstructed transformation can resolve every sampled
/// superlevel set.
pub fn enrich_basis_with_level_ramps(basis: &[GridFunction]) -> Result<Vec<GridFunction>> {
    let mut out: Vec<GridFunction> = basis.to_vec();
    for a in basis {
        let values = a.distinct_values();
        for w in values.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let ramp = a.map(format!("{}>{}", a.name(), lo), move |v| {
                ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
            })?;
            out.push(ramp);
        }
    }
    Ok(out)
}

/// The value of a pulled-back point mass, `[y in q(A)]`, as an exact 0/1.
pub fn point_mass_pullback_value(q: &ImageTransformation, y: Cell, image: &Image) -> Result<Value> {
    Ok(if q.apply(image)?.cells.contains(y) {
        Value::one()
    } else {
        Value::zero()
    })
}
