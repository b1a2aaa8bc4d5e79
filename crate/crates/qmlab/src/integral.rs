//! Integration against quasi-measures via the distribution on the line.
//!
//! Sweeping the sorted distinct values of a sampled function through the
//! measure of its sublevel sets yields a right-continuous nondecreasing
//! distribution; the positive increments are the atoms of the pushforward
//! and the integral is their first moment. The pushforward of a grid
//! function is purely atomic, so no interpolation happens between jumps.

use crate::error::{Error, Result};
use crate::family::plateau;
use crate::func::GridFunction;
use crate::grid::{erode_within, Image, Kind};
use crate::measure::QuasiMeasure;
use crate::value::Value;

/// Cells with value <= t, tagged closed.
pub fn sublevel(a: &GridFunction, t: f64) -> Image {
    a.sublevel(t)
}

/// The set of distinct sampled values: finite, hence closed.
pub fn spectrum(a: &GridFunction) -> Vec<f64> {
    a.distinct_values()
}

/// Atomic distribution on the line: sorted jump positions with positive
/// masses summing to one.
#[derive(Debug, Clone)]
pub struct PushforwardDistribution {
    jumps: Vec<(f64, Value)>,
}

impl PushforwardDistribution {
    pub fn jumps(&self) -> &[(f64, Value)] {
        &self.jumps
    }

    pub fn total_mass(&self) -> Value {
        let mut acc = Value::zero();
        for (_, m) in &self.jumps {
            acc += m.clone();
        }
        acc
    }

    /// First moment, summed in ascending jump order.
    pub fn mean(&self) -> f64 {
        self.jumps.iter().map(|(t, m)| t * m.to_f64()).sum()
    }

    /// Right-continuous distribution function.
    pub fn cdf(&self, t: f64) -> Value {
        let mut acc = Value::zero();
        for (x, m) in &self.jumps {
            if *x <= t {
                acc += m.clone();
            }
        }
        acc
    }
}

/// Sweep the sorted distinct values of `a`, evaluating the measure of each
/// sublevel set; the positive increments form the pushforward distribution.
pub fn pushforward_distribution(
    m: &QuasiMeasure,
    a: &GridFunction,
) -> Result<PushforwardDistribution> {
    if m.grid() != a.grid() {
        return Err(Error::SpaceMismatch(format!(
            "function `{}` lives on another grid",
            a.name()
        )));
    }
    let values = a.distinct_values();
    let mut jumps = Vec::new();
    let mut prev = Value::zero();
    for &t in &values {
        let f = m.eval(&a.sublevel(t))?;
        if f < prev {
            return Err(Error::InvariantViolation(format!(
                "distribution function decreases at t={t}: {f} < {prev}"
            )));
        }
        let mass = f.clone() - prev.clone();
        if !mass.is_zero() {
            jumps.push((t, mass));
        }
        prev = f;
    }
    if !prev.is_one() {
        return Err(Error::InvariantViolation(format!(
            "distribution reaches {prev} at the top value, expected 1"
        )));
    }
    Ok(PushforwardDistribution { jumps })
}

/// The integral of `a` against `m`: the first moment of the pushforward.
pub fn integrate(m: &QuasiMeasure, a: &GridFunction) -> Result<f64> {
    Ok(pushforward_distribution(m, a)?.mean())
}

/// Value of a simple measure on a function: the unique jump of the
/// pushforward, located by binary search over the sorted distinct values.
pub fn simple_value(sigma: &QuasiMeasure, a: &GridFunction) -> Result<f64> {
    if sigma.grid() != a.grid() {
        return Err(Error::SpaceMismatch(format!(
            "function `{}` lives on another grid",
            a.name()
        )));
    }
    let values = a.distinct_values();
    let probe = |t: f64| -> Result<bool> {
        let v = sigma.eval(&a.sublevel(t))?;
        if v.is_zero() {
            Ok(false)
        } else if v.is_one() {
            Ok(true)
        } else {
            Err(Error::InvariantViolation(format!(
                "measure is not simple on the sublevel family of `{}`: value {v} at t={t}",
                a.name()
            )))
        }
    };
    let mut lo = 0usize;
    let mut hi = values.len() - 1;
    if !probe(values[hi])? {
        return Err(Error::InvariantViolation(
            "distribution never reaches 1 on the sampled values".into(),
        ));
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if probe(values[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(values[lo])
}

/// Staircase splitting of `a <= b` into clamped pieces.
#[derive(Debug, Clone)]
pub struct StaircaseDecomposition {
    pub pieces: Vec<(GridFunction, GridFunction)>,
    pub delta: f64,
    pub n: usize,
    pub shift: f64,
    pub partition: Vec<f64>,
}

impl StaircaseDecomposition {
    pub fn sum_a(&self) -> Result<GridFunction> {
        sum_functions(self.pieces.iter().map(|(a, _)| a), "sum_a")
    }

    pub fn sum_b(&self) -> Result<GridFunction> {
        sum_functions(self.pieces.iter().map(|(_, b)| b), "sum_b")
    }
}

fn sum_functions<'a>(
    mut it: impl Iterator<Item = &'a GridFunction>,
    name: &str,
) -> Result<GridFunction> {
    let first = it
        .next()
        .ok_or_else(|| Error::PreconditionViolation("empty piece list".into()))?;
    let mut acc = first.clone();
    for f in it {
        acc = acc.add(f)?;
    }
    Ok(acc.with_name(name))
}

fn clamp_piece(x: f64, lo: f64, hi: f64) -> f64 {
    (x - lo).clamp(0.0, hi - lo)
}

/// Decompose `a <= b` with the canonical shift `max(0, -min(a))` and a
/// uniform partition slightly finer than `delta`.
pub fn staircase(a: &GridFunction, b: &GridFunction, delta: f64) -> Result<StaircaseDecomposition> {
    let shift = (-a.min()).max(0.0);
    staircase_with_shift(a, b, delta, shift, None)
}

/// Decomposition with an explicit shift (and optionally an explicit piece
/// count, which must keep every partition step at most `delta`).
pub fn staircase_with_shift(
    a: &GridFunction,
    b: &GridFunction,
    delta: f64,
    shift: f64,
    pieces: Option<usize>,
) -> Result<StaircaseDecomposition> {
    if delta <= 0.0 {
        return Err(Error::PreconditionViolation(
            "delta must be positive".into(),
        ));
    }
    if a.grid() != b.grid() {
        return Err(Error::SpaceMismatch("staircase needs one grid".into()));
    }
    if a.values().iter().zip(b.values()).any(|(x, y)| x > y) {
        return Err(Error::PreconditionViolation(
            "staircase needs a <= b pointwise".into(),
        ));
    }
    if a.min() + shift < 0.0 {
        return Err(Error::PreconditionViolation(format!(
            "shift {shift} leaves a + shift negative"
        )));
    }
    let a_tilde = a.map("a~", |v| v + shift)?;
    let b_tilde = b.map("b~", |v| v + shift + delta)?;
    let beta = b_tilde.max_norm();
    let n = match pieces {
        Some(n) => {
            if n == 0 || beta / n as f64 > delta {
                return Err(Error::PreconditionViolation(format!(
                    "{n} pieces leave partition steps above delta"
                )));
            }
            n
        }
        // slightly undershoot delta so steps stay strictly below it
        None => (beta / (delta * (1.0 - 1e-9))).ceil().max(1.0) as usize,
    };
    let partition: Vec<f64> = (0..=n).map(|i| i as f64 * beta / n as f64).collect();
    let shift_a = shift / n as f64;
    let shift_b = (shift + delta) / n as f64;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let lo = partition[i - 1];
        let hi = partition[i];
        let a_i = a_tilde.map(format!("a_{i}"), |v| clamp_piece(v, lo, hi) - shift_a)?;
        let b_i = b_tilde.map(format!("b_{i}"), |v| clamp_piece(v, lo, hi) - shift_b)?;
        out.push((a_i, b_i));
    }
    Ok(StaircaseDecomposition {
        pieces: out,
        delta,
        n,
        shift,
        partition,
    })
}

/// Verify the four staircase postconditions: both sum identities within the
/// stated accumulation tolerance, the pointwise bound `a_i <= b_i + delta/n`,
/// and the exact proof identity `a~_i * (step - b~_i) = 0`.
pub fn verify_staircase(
    dec: &StaircaseDecomposition,
    a: &GridFunction,
    b: &GridFunction,
    tol: f64,
) -> Result<()> {
    let sum_a = dec.sum_a()?;
    for (x, y) in sum_a.values().iter().zip(a.values()) {
        if (x - y).abs() > tol {
            return Err(Error::InvariantViolation(format!(
                "sum of a-pieces off by {}",
                (x - y).abs()
            )));
        }
    }
    let sum_b = dec.sum_b()?;
    for (x, y) in sum_b.values().iter().zip(b.values()) {
        if (x - y).abs() > tol {
            return Err(Error::InvariantViolation(format!(
                "sum of b-pieces off by {}",
                (x - y).abs()
            )));
        }
    }
    let slack = dec.delta / dec.n as f64;
    for (i, (a_i, b_i)) in dec.pieces.iter().enumerate() {
        for (x, y) in a_i.values().iter().zip(b_i.values()) {
            if *x > y + slack + tol {
                return Err(Error::InvariantViolation(format!(
                    "piece {i} violates a_i <= b_i + delta/n by {}",
                    x - (y + slack)
                )));
            }
        }
    }
    let a_tilde = a.map("a~", |v| v + dec.shift)?;
    let b_tilde = b.map("b~", |v| v + dec.shift + dec.delta)?;
    for i in 1..=dec.n {
        let lo = dec.partition[i - 1];
        let hi = dec.partition[i];
        let step = hi - lo;
        for (x, y) in a_tilde.values().iter().zip(b_tilde.values()) {
            let ai = clamp_piece(*x, lo, hi);
            let bi = clamp_piece(*y, lo, hi);
            if ai * (step - bi) != 0.0 {
                return Err(Error::InvariantViolation(format!(
                    "proof identity fails on piece {i}: {} * {}",
                    ai,
                    step - bi
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct DiscrepancyReport {
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
    pub passed: bool,
}

/// Change of variables: the integral of `phi(a)` equals the `phi`-moment of
/// the pushforward of `a`.
pub fn change_of_variables_check(
    m: &QuasiMeasure,
    a: &GridFunction,
    phi: impl Fn(f64) -> f64,
) -> Result<DiscrepancyReport> {
    let lhs = integrate(m, &a.map("phi(a)", &phi)?)?;
    let dist = pushforward_distribution(m, a)?;
    let rhs: f64 = dist
        .jumps()
        .iter()
        .map(|(t, mass)| phi(*t) * mass.to_f64())
        .sum();
    let discrepancy = (lhs - rhs).abs();
    Ok(DiscrepancyReport {
        lhs,
        rhs,
        discrepancy,
        passed: discrepancy <= 1e-9,
    })
}

#[derive(Debug, Clone)]
pub struct QuasiLinearityReport {
    pub additivity_discrepancy: f64,
    pub positive_ok: bool,
    pub normalization_ok: bool,
    pub passed: bool,
}

/// Both `phi(a)` and `psi(a)` live in the singly generated algebra of `a`,
/// so the integral must add them; positivity and normalization ride along.
pub fn quasi_linearity_check(
    m: &QuasiMeasure,
    a: &GridFunction,
    phi: impl Fn(f64) -> f64,
    psi: impl Fn(f64) -> f64,
) -> Result<QuasiLinearityReport> {
    let fa = a.map("phi(a)", &phi)?;
    let ga = a.map("psi(a)", &psi)?;
    let sum = fa.add(&ga)?;
    let lhs = integrate(m, &sum)?;
    let rhs = integrate(m, &fa)? + integrate(m, &ga)?;
    let additivity_discrepancy = (lhs - rhs).abs();

    let positive_ok = if fa.min() >= 0.0 {
        integrate(m, &fa)? >= 0.0
    } else {
        true
    };
    let ones = GridFunction::constant(a.grid().clone(), 1.0)?;
    let normalization_ok = integrate(m, &ones)? == 1.0;
    let passed = additivity_discrepancy <= 1e-9 && positive_ok && normalization_ok;
    Ok(QuasiLinearityReport {
        additivity_discrepancy,
        positive_ok,
        normalization_ok,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct RieszRoundtripOutcome {
    pub open_value: Value,
    pub best_integral: f64,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct RieszRoundtripReport {
    pub outcomes: Vec<RieszRoundtripOutcome>,
    pub passed: bool,
}

/// Witness-based Riesz round trip: for each open set, the best integral of
/// the supplied subordinate functions must reach the measure of the set.
/// Subordinates must vanish off the depth-1 erosion and equal 1 on the
/// depth-2 erosion, with erosion measured against the in-grid complement
/// (the square is compact, so supports may touch its border); this is
/// validated before integrating.
pub fn riesz_roundtrip_check(
    m: &QuasiMeasure,
    open_family: &[Image],
    subordinates: &[Vec<GridFunction>],
) -> Result<RieszRoundtripReport> {
    if open_family.len() != subordinates.len() {
        return Err(Error::PreconditionViolation(
            "one subordinate list per open set".into(),
        ));
    }
    let grid = m.grid();
    let mut outcomes = Vec::with_capacity(open_family.len());
    for (u, ks) in open_family.iter().zip(subordinates) {
        if u.kind != Kind::Open {
            return Err(Error::PreconditionViolation("family must be open".into()));
        }
        let support = erode_within(grid, &u.cells, 1);
        let core = erode_within(grid, &u.cells, 2);
        let open_value = m.eval(u)?;
        let mut best = 0.0f64;
        for k in ks {
            if k.min() < 0.0 || k.max() > 1.0 {
                return Err(Error::PreconditionViolation(format!(
                    "subordinate `{}` must take values in [0,1]",
                    k.name()
                )));
            }
            if !k.support().is_subset(&support) {
                return Err(Error::PreconditionViolation(format!(
                    "subordinate `{}` does not vanish off the depth-1 erosion",
                    k.name()
                )));
            }
            if core.iter().any(|c| k.value(c) != 1.0) {
                return Err(Error::PreconditionViolation(format!(
                    "subordinate `{}` is not 1 on the depth-2 erosion",
                    k.name()
                )));
            }
            best = best.max(integrate(m, k)?);
        }
        let passed = (best - open_value.to_f64()).abs() <= 1e-9;
        outcomes.push(RieszRoundtripOutcome {
            open_value,
            best_integral: best,
            passed,
        });
    }
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(RieszRoundtripReport { outcomes, passed })
}

/// Default three-step plateau subordinates for a family of open sets.
pub fn default_subordinates(m: &QuasiMeasure, open_family: &[Image]) -> Vec<Vec<GridFunction>> {
    open_family
        .iter()
        .enumerate()
        .map(|(i, u)| {
            plateau(m.grid(), u, 1, 2, format!("k{i}"))
                .into_iter()
                .collect()
        })
        .collect()
}
