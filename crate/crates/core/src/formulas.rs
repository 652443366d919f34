//! Closed-form class counts for diasters and stem structures.
//!
//! Every function refuses inputs outside the range its count is known to
//! hold for, returning [`CountBasis::NotCovered`] (or an error for
//! malformed parameters) so that callers fall back to enumeration.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{FamilySpec, PartKind, StemPart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountBasis {
    /// `ab + a + b + 1` for a diaster with unequal sides.
    DiasterUnequal,
    /// `(a² + 3a + 2) / 2` for a diaster with equal sides.
    DiasterEqual,
    /// Diaster count carried over to a stem structure.
    StemTransfer,
    /// Direct count of feasible (central label, left count) lattice points.
    LatticeSum,
    /// Star, beachball or daisy: one class.
    SingleClass,
    NotCovered,
}

impl CountBasis {
    pub fn name(self) -> &'static str {
        match self {
            CountBasis::DiasterUnequal => "diaster-unequal",
            CountBasis::DiasterEqual => "diaster-equal",
            CountBasis::StemTransfer => "stem-transfer",
            CountBasis::LatticeSum => "lattice-sum",
            CountBasis::SingleClass => "single-class",
            CountBasis::NotCovered => "not-covered",
        }
    }
}

impl fmt::Display for CountBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CountResult {
    /// `None` exactly when `basis` is [`CountBasis::NotCovered`].
    pub value: Option<u64>,
    pub basis: CountBasis,
}

impl CountResult {
    fn known(value: u64, basis: CountBasis) -> Self {
        Self {
            value: Some(value),
            basis,
        }
    }

    pub fn not_covered() -> Self {
        Self {
            value: None,
            basis: CountBasis::NotCovered,
        }
    }

    pub fn is_covered(&self) -> bool {
        self.value.is_some()
    }
}

impl fmt::Display for CountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("not-covered"),
        }
    }
}

fn require_edges(a: usize, b: usize) -> Result<()> {
    if a + b == 0 {
        return Err(Error::OutsideFormulaDomain(
            "diaster:0,0 (no peripheral edges)".into(),
        ));
    }
    Ok(())
}

fn equal_sides(a: u64) -> Result<u64> {
    let numerator = a * a + 3 * a + 2;
    if !numerator.is_multiple_of(2) {
        return Err(Error::Internal(format!("a² + 3a + 2 = {numerator} is odd")));
    }
    Ok(numerator / 2)
}

/// Number of isotemporal classes of `D(a, b)`.
///
/// With one side empty the graph is a star, whose extra symmetry moves the
/// central edge; that case is reported as not covered.
pub fn diaster_formula(a: usize, b: usize) -> Result<CountResult> {
    require_edges(a, b)?;
    if a == 0 || b == 0 {
        return Ok(CountResult::not_covered());
    }
    let (a, b) = (a as u64, b as u64);
    if a == b {
        Ok(CountResult::known(
            equal_sides(a)?,
            CountBasis::DiasterEqual,
        ))
    } else {
        Ok(CountResult::known(
            a * b + a + b + 1,
            CountBasis::DiasterUnequal,
        ))
    }
}

/// Counts feasible (central label `t`, left-below count `k`) lattice points.
///
/// For unequal sides this is every `t` in `1..=a+b+1` and every `k` with
/// `k <= a`, `k <= t-1` and `t-1-k <= b`. For equal sides mirror images are
/// identified, leaving `⌊(t-1)/2⌋ + 1` points while `t <= a+1` and
/// `⌊(2a+1-t)/2⌋ + 1` after.
pub fn lattice_count(a: usize, b: usize) -> Result<CountResult> {
    require_edges(a, b)?;
    let (a, b) = (a.min(b), a.max(b));
    let total = if a == b {
        (1..=2 * a + 1)
            .map(|t| {
                if t <= a + 1 {
                    (t - 1) / 2 + 1
                } else {
                    (2 * a + 1 - t) / 2 + 1
                }
            })
            .sum::<usize>()
    } else {
        (1..=a + b + 1)
            .map(|t| (0..=a.min(t - 1)).filter(|&k| t - 1 - k <= b).count())
            .sum::<usize>()
    };
    Ok(CountResult::known(total as u64, CountBasis::LatticeSum))
}

/// Class count for a stem structure joining two parts by a central edge.
///
/// Equal-sized parts of different kinds have no mirror symmetry across the
/// central edge and are not covered. A one-edge beachball is a one-edge star.
pub fn stem_formula(left: StemPart, right: StemPart) -> Result<CountResult> {
    if left.size == 0 || right.size == 0 {
        return Err(Error::OutsideFormulaDomain(format!(
            "stem:{left}/{right} (parts need size >= 1)"
        )));
    }
    let (a, b) = (left.size as u64, right.size as u64);
    if a != b {
        Ok(CountResult::known(
            a * b + a + b + 1,
            CountBasis::StemTransfer,
        ))
    } else if shape(left) == shape(right) {
        Ok(CountResult::known(
            equal_sides(a)?,
            CountBasis::StemTransfer,
        ))
    } else {
        Ok(CountResult::not_covered())
    }
}

fn shape(part: StemPart) -> PartKind {
    match part.kind {
        PartKind::Beachball if part.size == 1 => PartKind::Star,
        kind => kind,
    }
}

pub fn trivial_family_count(spec: &FamilySpec) -> Result<CountResult> {
    spec.validate()?;
    match spec {
        FamilySpec::Star(_) | FamilySpec::Beachball(_) | FamilySpec::Daisy(_) => {
            Ok(CountResult::known(1, CountBasis::SingleClass))
        }
        other => Err(Error::OutsideFormulaDomain(format!(
            "{other} (only star, beachball and daisy have a single class)"
        ))),
    }
}

/// Closed-form count for any family, `NotCovered` where none applies.
pub fn formula_count(spec: &FamilySpec) -> Result<CountResult> {
    spec.validate()?;
    match *spec {
        FamilySpec::Diaster(a, b) => diaster_formula(a, b),
        FamilySpec::Star(_) | FamilySpec::Beachball(_) | FamilySpec::Daisy(_) => {
            trivial_family_count(spec)
        }
        FamilySpec::Stem(l, r) => stem_formula(l, r),
        FamilySpec::Cycle(_) => Ok(CountResult::not_covered()),
    }
}

/// Lattice count where it applies: diasters and star/star stems with both sides non-empty.
pub fn lattice_for(spec: &FamilySpec) -> Result<Option<CountResult>> {
    spec.validate()?;
    match *spec {
        FamilySpec::Diaster(a, b) if a > 0 && b > 0 => lattice_count(a, b).map(Some),
        FamilySpec::Stem(l, r) if l.kind == PartKind::Star && r.kind == PartKind::Star => {
            lattice_count(l.size, r.size).map(Some)
        }
        _ => Ok(None),
    }
}
