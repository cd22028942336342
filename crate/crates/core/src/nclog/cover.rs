//! Covers by normal crossing charts and the semistability cocycle tests.
//!
//! A cover records log systems per chart, transitions on pairwise overlaps,
//! and optionally triple-overlap data.  The verdict of interest is
//! [`dss_verdict`]: the cover glues to a log structure of semistable type
//! exactly when every pairwise unit product telescopes to `1` and every
//! declared triple composes coherently.  The weaker per-overlap check of the
//! product against the double-locus ideal is exposed through
//! [`CocycleMode::ModD`], and the raw product arithmetic through
//! [`unit_product`] and [`cocycle_defect`] for callers that bring their own
//! unit tuples.

use crate::par;

use super::ring::{NCPoly, NCRing};
use super::system::{verify_transition, LogSystem, Transition};
use super::NCError;

/// Transition data on the intersection of two charts, expressed in the
/// overlap's own ring: the two pulled-back systems and the transition that
/// relates them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub pair: (usize, usize),
    pub ring: NCRing,
    pub left: Vec<NCPoly>,
    pub right: Vec<NCPoly>,
    pub transition: Transition,
}

/// Composition data on a triple intersection: the three pairwise transitions
/// and the third chart's system, all in the triple overlap's ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOverlap {
    pub charts: (usize, usize, usize),
    pub ring: NCRing,
    /// `ζ` of the third chart on the triple overlap.
    pub third: Vec<NCPoly>,
    /// Transition from the first chart to the second.
    pub left_mid: Transition,
    /// Transition from the second chart to the third.
    pub mid_right: Transition,
    /// Transition from the first chart straight to the third.
    pub left_right: Transition,
}

/// A cover: charts with log systems, pairwise overlaps, declared triples.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCCover {
    pub charts: Vec<LogSystem>,
    pub overlaps: Vec<Overlap>,
    pub triples: Vec<TripleOverlap>,
}

impl NCCover {
    /// Check every structural invariant of the cover.
    ///
    /// Charts must validate as log systems; every overlap's transition must
    /// relate its two tuples exactly; when both orientations of a pair are
    /// declared over one ring they must be mutually inverse; triples must
    /// reference charts in range and carry permutations with genuine units.
    pub fn validate(&self) -> Result<(), NCError> {
        for chart in &self.charts {
            chart.validate()?;
        }
        for overlap in &self.overlaps {
            let (a, b) = overlap.pair;
            for index in [a, b] {
                if index >= self.charts.len() {
                    return Err(NCError::ChartIndexOutOfRange { index });
                }
            }
            verify_transition(
                &overlap.ring,
                &overlap.left,
                &overlap.right,
                &overlap.transition,
            )?;
        }
        for overlap in &self.overlaps {
            let (a, b) = overlap.pair;
            if let Some(mirror) = self
                .overlaps
                .iter()
                .find(|o| o.pair == (b, a) && o.ring == overlap.ring)
            {
                if overlap.transition.inverse(&overlap.ring)? != mirror.transition {
                    return Err(NCError::AsymmetricPair { pair: (a, b) });
                }
            }
        }
        for triple in &self.triples {
            let (a, b, c) = triple.charts;
            for index in [a, b, c] {
                if index >= self.charts.len() {
                    return Err(NCError::ChartIndexOutOfRange { index });
                }
            }
            if triple.third.len() != triple.ring.width() {
                return Err(NCError::WrongArity {
                    expected: triple.ring.width(),
                    found: triple.third.len(),
                });
            }
            for t in [&triple.left_mid, &triple.mid_right, &triple.left_right] {
                check_permutation_and_units(&triple.ring, t)?;
            }
        }
        Ok(())
    }
}

fn check_permutation_and_units(ring: &NCRing, t: &Transition) -> Result<(), NCError> {
    let len = ring.width();
    if t.sigma.len() != len || t.units.len() != len {
        return Err(NCError::WrongArity {
            expected: len,
            found: t.sigma.len().max(t.units.len()),
        });
    }
    let mut seen = vec![false; len];
    for &j in &t.sigma {
        if j >= len || seen[j] {
            return Err(NCError::NotAPermutation);
        }
        seen[j] = true;
    }
    for (index, u) in t.units.iter().enumerate() {
        if !ring.is_unit(u) {
            return Err(NCError::UnitExpected { index });
        }
    }
    Ok(())
}

/// The exact product of a tuple of ring elements.
pub fn unit_product(ring: &NCRing, units: &[NCPoly]) -> NCPoly {
    ring.product(units)
}

/// The cocycle defect `∏ units − 1`; zero exactly on a strict cocycle.
pub fn cocycle_defect(ring: &NCRing, units: &[NCPoly]) -> NCPoly {
    ring.sub(&unit_product(ring, units), &ring.one())
}

/// Which equality the pairwise test demands of the unit product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleMode {
    /// The product must be exactly `1`.
    Strict,
    /// The product must be `1` modulo the double-locus ideal.
    ModD,
}

/// Per-overlap outcome of a cocycle check; `product` is the full unit
/// product, the residual witness whenever the check fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapVerdict {
    pub pair: (usize, usize),
    pub passed: bool,
    pub product: NCPoly,
}

fn check_one_overlap(overlap: &Overlap, mode: CocycleMode) -> OverlapVerdict {
    let product = unit_product(&overlap.ring, &overlap.transition.units);
    let passed = match mode {
        CocycleMode::Strict => product == overlap.ring.one(),
        CocycleMode::ModD => {
            let defect = overlap.ring.sub(&product, &overlap.ring.one());
            overlap.ring.in_double_ideal(&defect)
        }
    };
    OverlapVerdict {
        pair: overlap.pair,
        passed,
        product,
    }
}

/// Run the pairwise cocycle test on every overlap of a validated cover.
pub fn cocycle_check(cover: &NCCover, mode: CocycleMode) -> Result<Vec<OverlapVerdict>, NCError> {
    cover.validate()?;
    Ok(par::map_indexed(cover.overlaps.len(), |i| {
        check_one_overlap(&cover.overlaps[i], mode)
    }))
}

/// Sequential twin of [`cocycle_check`]; identical output.
pub fn cocycle_check_seq(
    cover: &NCCover,
    mode: CocycleMode,
) -> Result<Vec<OverlapVerdict>, NCError> {
    cover.validate()?;
    Ok(par::map_indexed_seq(cover.overlaps.len(), |i| {
        check_one_overlap(&cover.overlaps[i], mode)
    }))
}

/// Outcome of a triple composition test: the entries where composing the two
/// short transitions disagrees with the direct one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleVerdict {
    pub charts: (usize, usize, usize),
    pub failures: Vec<usize>,
}

impl TripleVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check one triple: composing the first two transitions must agree with the
/// direct transition entrywise.
///
/// For entries up to the crossing depth the permutations and units must match
/// on the nose.  Beyond the depth, agreement is class equality in the glued
/// chart monoid: either the same entry with the same unit, or both referenced
/// `ζ` entries are units and the two unit products coincide.
pub fn check_triple(triple: &TripleOverlap) -> Result<TripleVerdict, NCError> {
    let ring = &triple.ring;
    check_permutation_and_units(ring, &triple.left_mid)?;
    check_permutation_and_units(ring, &triple.mid_right)?;
    check_permutation_and_units(ring, &triple.left_right)?;
    if triple.third.len() != ring.width() {
        return Err(NCError::WrongArity {
            expected: ring.width(),
            found: triple.third.len(),
        });
    }
    let sigma = &triple.left_mid.sigma;
    let u = &triple.left_mid.units;
    let tau = &triple.mid_right.sigma;
    let v = &triple.mid_right.units;
    let rho = &triple.left_right.sigma;
    let w = &triple.left_right.units;

    let mut failures = Vec::new();
    for i in 0..ring.width() {
        let composed_index = tau[sigma[i]];
        let direct_index = rho[i];
        let composed_unit = ring.mul(&u[i], &v[sigma[i]]);
        let exact = composed_index == direct_index && composed_unit == w[i];
        let ok = if i <= ring.d() {
            exact
        } else {
            exact || {
                let a = &triple.third[composed_index];
                let b = &triple.third[direct_index];
                ring.is_unit(a)
                    && ring.is_unit(b)
                    && ring.mul(&composed_unit, a) == ring.mul(&w[i], b)
            }
        };
        if !ok {
            failures.push(i);
        }
    }
    Ok(TripleVerdict {
        charts: triple.charts,
        failures,
    })
}

/// Find and check the declared triple for the given chart indices.
pub fn triple_cocycle_check(
    cover: &NCCover,
    charts: (usize, usize, usize),
) -> Result<TripleVerdict, NCError> {
    let triple = cover
        .triples
        .iter()
        .find(|t| t.charts == charts)
        .ok_or(NCError::MissingTriple { charts })?;
    check_triple(triple)
}

/// The semistability verdict for a validated cover: every pairwise strict
/// cocycle passes and every declared triple composes coherently.
pub fn dss_verdict(cover: &NCCover) -> Result<bool, NCError> {
    let pairwise = cocycle_check(cover, CocycleMode::Strict)?;
    if !pairwise.iter().all(|v| v.passed) {
        return Ok(false);
    }
    for triple in &cover.triples {
        if !check_triple(triple)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}
