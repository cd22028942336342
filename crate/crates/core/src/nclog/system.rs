//! Log systems on a normal crossing chart and transitions between them.
//!
//! A log system is a tuple `ζ_0,…,ζ_n`: every entry is either a unit times a
//! single crossing variable (each crossing variable carried exactly once) or
//! a unit outright.  Two systems over the same ring are related by a
//! transition — a permutation `σ` and units `u` with `ζ_i = u_i · ζ'_{σ(i)}`
//! — which [`find_transition`] computes canonically by matching entries on
//! the crossing variable they carry and re-verifying the relation exactly.

use super::ring::{NCPoly, NCRing};
use super::NCError;

/// A candidate log structure chart: a ring and one `ζ` entry per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSystem {
    pub ring: NCRing,
    pub zeta: Vec<NCPoly>,
}

/// The shape of a single log system entry.
#[derive(Clone, Debug, PartialEq, Eq)]
enum EntryShape {
    /// A unit of the ring.
    Unit(NCPoly),
    /// `unit · z_carrier` for a crossing variable.
    Crossing { carrier: usize, unit: NCPoly },
}

/// Classify one entry as a unit or a unit times a single crossing variable.
fn classify(ring: &NCRing, f: &NCPoly) -> Option<EntryShape> {
    if ring.is_unit(f) {
        return Some(EntryShape::Unit(f.clone()));
    }
    if f.term_count() != 1 {
        return None;
    }
    let (mono, coeff) = f.terms().next().expect("one term");
    let mut carrier = None;
    for (var, &e) in mono.iter().enumerate() {
        if ring.inverted().contains(&var) {
            continue;
        }
        match (var <= ring.d(), e) {
            (_, 0) => {}
            (true, 1) if carrier.is_none() => carrier = Some(var),
            _ => return None,
        }
    }
    let carrier = carrier?;
    let mut unit_mono = mono.to_vec();
    unit_mono[carrier] = 0;
    let unit = ring
        .poly(&[(coeff.clone(), unit_mono)])
        .expect("stripping the carrier keeps the monomial valid");
    Some(EntryShape::Crossing { carrier, unit })
}

/// The extracted data of a valid log system: per-entry units, and for each
/// entry up to the crossing depth the variable it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedSystem {
    pub units: Vec<NCPoly>,
    pub carriers: Vec<usize>,
}

impl LogSystem {
    pub fn new(ring: NCRing, zeta: Vec<NCPoly>) -> Result<LogSystem, NCError> {
        if zeta.len() != ring.width() {
            return Err(NCError::WrongArity {
                expected: ring.width(),
                found: zeta.len(),
            });
        }
        Ok(LogSystem { ring, zeta })
    }

    /// Check the log system conditions and extract the units.
    ///
    /// Entries `0..=d` must each be a unit times a single crossing variable,
    /// all carried variables distinct; entries beyond the crossing depth must
    /// be units.  The first offending index is reported.
    pub fn validate(&self) -> Result<ValidatedSystem, NCError> {
        let d = self.ring.d();
        let mut units = Vec::with_capacity(self.zeta.len());
        let mut carriers = Vec::with_capacity(d + 1);
        for (index, entry) in self.zeta.iter().enumerate() {
            match classify(&self.ring, entry) {
                Some(EntryShape::Crossing { carrier, unit }) if index <= d => {
                    if carriers.contains(&carrier) {
                        return Err(NCError::DuplicateCarrier { index });
                    }
                    carriers.push(carrier);
                    units.push(unit);
                }
                Some(EntryShape::Unit(unit)) if index > d => units.push(unit),
                _ => return Err(NCError::InvalidSystemEntry { index }),
            }
        }
        Ok(ValidatedSystem { units, carriers })
    }
}

/// A permutation and units relating two log systems entrywise:
/// `left_i = units_i · right_{sigma(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub sigma: Vec<usize>,
    pub units: Vec<NCPoly>,
}

impl Transition {
    /// The identity transition on tuples of the given length.
    pub fn identity(ring: &NCRing) -> Transition {
        Transition {
            sigma: (0..ring.width()).collect(),
            units: vec![ring.one(); ring.width()],
        }
    }

    /// The transition read in the opposite direction:
    /// `right_i = units'_i · left_{sigma⁻¹(i)}`.
    pub fn inverse(&self, ring: &NCRing) -> Result<Transition, NCError> {
        let len = self.sigma.len();
        let mut sigma_inv = vec![usize::MAX; len];
        for (i, &j) in self.sigma.iter().enumerate() {
            if j >= len || sigma_inv[j] != usize::MAX {
                return Err(NCError::NotAPermutation);
            }
            sigma_inv[j] = i;
        }
        let mut units = Vec::with_capacity(len);
        for &source in &sigma_inv {
            let inv = ring
                .unit_inverse(&self.units[source])
                .ok_or(NCError::UnitExpected { index: source })?;
            units.push(inv);
        }
        Ok(Transition {
            sigma: sigma_inv,
            units,
        })
    }
}

/// Verify that a transition exactly relates two tuples over the ring:
/// `sigma` is a permutation, every unit is a unit, and
/// `left_i = units_i · right_{sigma(i)}` holds termwise.
pub fn verify_transition(
    ring: &NCRing,
    left: &[NCPoly],
    right: &[NCPoly],
    transition: &Transition,
) -> Result<(), NCError> {
    let len = ring.width();
    if left.len() != len || right.len() != len {
        return Err(NCError::WrongArity {
            expected: len,
            found: left.len().max(right.len()),
        });
    }
    if transition.sigma.len() != len || transition.units.len() != len {
        return Err(NCError::WrongArity {
            expected: len,
            found: transition.sigma.len().max(transition.units.len()),
        });
    }
    let mut seen = vec![false; len];
    for &j in &transition.sigma {
        if j >= len || seen[j] {
            return Err(NCError::NotAPermutation);
        }
        seen[j] = true;
    }
    for (index, unit) in transition.units.iter().enumerate() {
        if !ring.is_unit(unit) {
            return Err(NCError::UnitExpected { index });
        }
    }
    for i in 0..len {
        let rhs = ring.mul(&transition.units[i], &right[transition.sigma[i]]);
        if left[i] != rhs {
            return Err(NCError::RelationFails { index: i });
        }
    }
    Ok(())
}

/// Find the canonical transition from `left` to `right` over a common ring.
///
/// Entries carrying a crossing variable are matched to entries carrying the
/// same variable (in order among duplicates); unit entries are matched in
/// order.  The units come out by exact monomial division and the relation is
/// re-verified before returning.
pub fn find_transition(left: &LogSystem, right: &LogSystem) -> Result<Transition, NCError> {
    if left.ring != right.ring {
        return Err(NCError::MixedRings);
    }
    let ring = &left.ring;
    if left.zeta.len() != ring.width() || right.zeta.len() != ring.width() {
        return Err(NCError::WrongArity {
            expected: ring.width(),
            found: left.zeta.len().max(right.zeta.len()),
        });
    }

    let shapes_of = |zeta: &[NCPoly]| -> Result<Vec<EntryShape>, NCError> {
        zeta.iter()
            .enumerate()
            .map(|(index, f)| classify(ring, f).ok_or(NCError::MalformedEntry { index }))
            .collect()
    };
    let left_shapes = shapes_of(&left.zeta)?;
    let right_shapes = shapes_of(&right.zeta)?;

    let mut sigma = vec![usize::MAX; ring.width()];
    let mut units = vec![ring.zero(); ring.width()];
    let mut taken = vec![false; ring.width()];
    for (i, shape) in left_shapes.iter().enumerate() {
        let matched = right_shapes.iter().enumerate().position(|(j, other)| {
            !taken[j]
                && match (shape, other) {
                    (EntryShape::Unit(_), EntryShape::Unit(_)) => true,
                    (
                        EntryShape::Crossing { carrier: a, .. },
                        EntryShape::Crossing { carrier: b, .. },
                    ) => a == b,
                    _ => false,
                }
        });
        let Some(j) = matched else {
            return Err(NCError::CarrierMismatch);
        };
        taken[j] = true;
        sigma[i] = j;
        let (left_unit, right_unit) = match (&left_shapes[i], &right_shapes[j]) {
            (EntryShape::Unit(a), EntryShape::Unit(b)) => (a, b),
            (EntryShape::Crossing { unit: a, .. }, EntryShape::Crossing { unit: b, .. }) => (a, b),
            _ => unreachable!("matching preserves shapes"),
        };
        let inv = ring
            .unit_inverse(right_unit)
            .ok_or(NCError::Internal("extracted unit lost its certificate"))?;
        units[i] = ring.mul(left_unit, &inv);
    }

    let transition = Transition { sigma, units };
    verify_transition(ring, &left.zeta, &right.zeta, &transition)?;
    Ok(transition)
}
