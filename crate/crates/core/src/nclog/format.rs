//! Serialization for covers: charts, overlaps, and triple-overlap data.
//!
//! Polynomials serialize as lists of `{coeffs, exponents}` terms.  A cover
//! document carries an optional coefficient field (exact rationals by
//! default, or `{ "prime": p }`), the charts, and optional overlap/triple
//! sections.  Overlaps and triples may omit their ring and tuples: an
//! omitted ring defaults to the first referenced chart's ring, omitted
//! tuples default to the referenced charts' systems (optionally transported
//! along a variable renaming), and omitted triple transitions are resolved
//! from the cover's stored overlaps, inverting a mirrored pair if that is
//! the orientation on file.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::cover::{NCCover, Overlap, TripleOverlap};
use super::ring::{FieldSpec, NCPoly, NCRing};
use super::system::{LogSystem, Transition};
use super::NCError;

/// Exact rational scalar: an integer when it fits, a `"p/q"` string
/// otherwise.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RatDto {
    Integer(i64),
    Text(String),
}

impl RatDto {
    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_integer() {
            if let Some(v) = q.numer().to_i64() {
                return RatDto::Integer(v);
            }
        }
        RatDto::Text(q.to_string())
    }

    pub fn to_rational(&self) -> Result<BigRational, NCError> {
        match self {
            RatDto::Integer(v) => Ok(BigRational::from(BigInt::from(*v))),
            RatDto::Text(s) => s
                .parse::<BigRational>()
                .map_err(|_| NCError::BadCoefficient(s.clone())),
        }
    }
}

/// One term of a polynomial.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDto {
    #[serde(alias = "coeff")]
    pub coeffs: RatDto,
    pub exponents: Vec<i64>,
}

/// A polynomial: a list of terms.
pub type PolyDto = Vec<TermDto>;

pub fn poly_to_dto(p: &NCPoly) -> PolyDto {
    p.terms()
        .map(|(exps, coeff)| TermDto {
            coeffs: RatDto::from_rational(coeff),
            exponents: exps.to_vec(),
        })
        .collect()
}

pub fn dto_to_poly(ring: &NCRing, dto: &[TermDto]) -> Result<NCPoly, NCError> {
    let terms = dto
        .iter()
        .map(|t| Ok((t.coeffs.to_rational()?, t.exponents.clone())))
        .collect::<Result<Vec<_>, NCError>>()?;
    ring.poly(&terms)
}

/// Coefficient field: the string `"rational"` or `{ "prime": p }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldDto {
    Name(String),
    Prime { prime: u64 },
}

impl FieldDto {
    pub fn from_field(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => FieldDto::Name("rational".to_string()),
            FieldSpec::Prime(p) => FieldDto::Prime { prime: p },
        }
    }

    pub fn to_field(&self) -> Result<FieldSpec, NCError> {
        match self {
            FieldDto::Name(s) if s == "rational" => Ok(FieldSpec::Rational),
            FieldDto::Name(s) => Err(NCError::BadCoefficient(s.clone())),
            FieldDto::Prime { prime } => Ok(FieldSpec::Prime(*prime)),
        }
    }
}

/// Shape of a coordinate ring: variable count `n` (giving `n + 1`
/// variables), crossing depth `d`, inverted variable indices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingDto {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<usize>,
}

impl RingDto {
    pub fn from_ring(ring: &NCRing) -> Self {
        RingDto {
            n: ring.n(),
            d: ring.d(),
            inverted: ring.inverted().iter().copied().collect(),
        }
    }

    pub fn to_ring(&self, field: FieldSpec) -> Result<NCRing, NCError> {
        NCRing::new(self.n, self.d, field, self.inverted.iter().copied().collect())
    }
}

/// One chart: its ring shape and the log system tuple.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChartDto {
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<usize>,
    pub zeta: Vec<PolyDto>,
}

impl ChartDto {
    pub fn from_system(system: &LogSystem) -> Self {
        ChartDto {
            n: system.ring.n(),
            d: system.ring.d(),
            inverted: system.ring.inverted().iter().copied().collect(),
            zeta: system.zeta.iter().map(poly_to_dto).collect(),
        }
    }

    pub fn to_system(&self, field: FieldSpec) -> Result<LogSystem, NCError> {
        let ring = NCRing::new(
            self.n,
            self.d,
            field,
            self.inverted.iter().copied().collect(),
        )?;
        let zeta = self
            .zeta
            .iter()
            .map(|p| dto_to_poly(&ring, p))
            .collect::<Result<Vec<_>, _>>()?;
        LogSystem::new(ring, zeta)
    }
}

/// A transition: permutation and unit tuple.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransitionDto {
    pub sigma: Vec<usize>,
    pub units: Vec<PolyDto>,
}

impl TransitionDto {
    pub fn from_transition(t: &Transition) -> Self {
        TransitionDto {
            sigma: t.sigma.clone(),
            units: t.units.iter().map(poly_to_dto).collect(),
        }
    }

    pub fn to_transition(&self, ring: &NCRing) -> Result<Transition, NCError> {
        Ok(Transition {
            sigma: self.sigma.clone(),
            units: self
                .units
                .iter()
                .map(|p| dto_to_poly(ring, p))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }
}

/// Pairwise overlap data; `ring`, `left`, and `right` are optional and
/// default to the first chart of the pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OverlapDto {
    pub pair: [usize; 2],
    pub sigma: Vec<usize>,
    pub units: Vec<PolyDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rename_left: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rename_right: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<PolyDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<PolyDto>>,
}

/// Triple overlap data; omitted transitions are resolved from the cover's
/// stored overlaps.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TripleDto {
    pub charts: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub third: Option<Vec<PolyDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_mid: Option<TransitionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mid_right: Option<TransitionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_right: Option<TransitionDto>,
}

/// The whole cover document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoverDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDto>,
    pub charts: Vec<ChartDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overlaps: Vec<OverlapDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<TripleDto>,
}

/// Transport a polynomial along an injective variable renaming into a
/// possibly wider ring.
fn rename_poly(target: &NCRing, rename: &[usize], p: &NCPoly) -> Result<NCPoly, NCError> {
    let mut terms = Vec::new();
    for (exps, coeff) in p.terms() {
        if exps.len() != rename.len() {
            return Err(NCError::WrongArity {
                expected: rename.len(),
                found: exps.len(),
            });
        }
        let mut new_exps = vec![0i64; target.width()];
        for (i, &e) in exps.iter().enumerate() {
            new_exps[rename[i]] += e;
        }
        terms.push((coeff.clone(), new_exps));
    }
    target.poly(&terms)
}

/// Transport a full tuple along a renaming; target positions outside the
/// renaming's image become the unit entry `1`.
fn rename_tuple(
    target: &NCRing,
    rename: &[usize],
    zeta: &[NCPoly],
) -> Result<Vec<NCPoly>, NCError> {
    if rename.len() != zeta.len() {
        return Err(NCError::WrongArity {
            expected: zeta.len(),
            found: rename.len(),
        });
    }
    let mut seen = vec![false; target.width()];
    for (index, &j) in rename.iter().enumerate() {
        if j >= target.width() || seen[j] {
            return Err(NCError::BadRenaming { index });
        }
        seen[j] = true;
    }
    let mut out = vec![target.one(); target.width()];
    for (i, p) in zeta.iter().enumerate() {
        out[rename[i]] = rename_poly(target, rename, p)?;
    }
    Ok(out)
}

/// Re-read a tuple of polynomials in another ring of the same width,
/// re-normalizing coefficients and re-checking exponent validity.
fn reinterpret_tuple(target: &NCRing, zeta: &[NCPoly]) -> Result<Vec<NCPoly>, NCError> {
    if zeta.len() != target.width() {
        return Err(NCError::WrongArity {
            expected: target.width(),
            found: zeta.len(),
        });
    }
    zeta.iter()
        .map(|p| {
            let terms: Vec<_> = p
                .terms()
                .map(|(e, c)| (c.clone(), e.to_vec()))
                .collect();
            target.poly(&terms)
        })
        .collect()
}

fn reinterpret_transition(target: &NCRing, t: &Transition) -> Result<Transition, NCError> {
    if t.sigma.len() != target.width() {
        return Err(NCError::WrongArity {
            expected: target.width(),
            found: t.sigma.len(),
        });
    }
    Ok(Transition {
        sigma: t.sigma.clone(),
        units: reinterpret_tuple(target, &t.units)?,
    })
}

fn resolve_side(
    ring: &NCRing,
    chart: &LogSystem,
    explicit: &Option<Vec<PolyDto>>,
    rename: &Option<Vec<usize>>,
) -> Result<Vec<NCPoly>, NCError> {
    if let Some(polys) = explicit {
        return polys.iter().map(|p| dto_to_poly(ring, p)).collect();
    }
    if let Some(r) = rename {
        return rename_tuple(ring, r, &chart.zeta);
    }
    reinterpret_tuple(ring, &chart.zeta)
}

fn resolve_transition(
    ring: &NCRing,
    overlaps: &[Overlap],
    pair: (usize, usize),
    explicit: &Option<TransitionDto>,
) -> Result<Transition, NCError> {
    if let Some(t) = explicit {
        return t.to_transition(ring);
    }
    if let Some(o) = overlaps.iter().find(|o| o.pair == pair) {
        return reinterpret_transition(ring, &o.transition);
    }
    if let Some(o) = overlaps.iter().find(|o| o.pair == (pair.1, pair.0)) {
        let t = reinterpret_transition(ring, &o.transition)?;
        return t.inverse(ring);
    }
    Err(NCError::MissingOverlap { pair })
}

impl CoverDto {
    /// Emit a fully explicit document for a cover.
    pub fn from_cover(cover: &NCCover) -> Self {
        let field = cover
            .charts
            .first()
            .map(|c| c.ring.field())
            .unwrap_or(FieldSpec::Rational);
        CoverDto {
            field: Some(FieldDto::from_field(field)),
            charts: cover.charts.iter().map(ChartDto::from_system).collect(),
            overlaps: cover
                .overlaps
                .iter()
                .map(|o| OverlapDto {
                    pair: [o.pair.0, o.pair.1],
                    sigma: o.transition.sigma.clone(),
                    units: o.transition.units.iter().map(poly_to_dto).collect(),
                    ring: Some(RingDto::from_ring(&o.ring)),
                    rename_left: None,
                    rename_right: None,
                    left: Some(o.left.iter().map(poly_to_dto).collect()),
                    right: Some(o.right.iter().map(poly_to_dto).collect()),
                })
                .collect(),
            triples: cover
                .triples
                .iter()
                .map(|t| TripleDto {
                    charts: [t.charts.0, t.charts.1, t.charts.2],
                    ring: Some(RingDto::from_ring(&t.ring)),
                    third: Some(t.third.iter().map(poly_to_dto).collect()),
                    left_mid: Some(TransitionDto::from_transition(&t.left_mid)),
                    mid_right: Some(TransitionDto::from_transition(&t.mid_right)),
                    left_right: Some(TransitionDto::from_transition(&t.left_right)),
                })
                .collect(),
        }
    }

    /// Build the cover, applying all the defaulting rules.
    pub fn to_cover(&self) -> Result<NCCover, NCError> {
        let field = match &self.field {
            None => FieldSpec::Rational,
            Some(f) => f.to_field()?,
        };
        let charts = self
            .charts
            .iter()
            .map(|c| c.to_system(field))
            .collect::<Result<Vec<_>, _>>()?;
        let mut overlaps = Vec::new();
        for o in &self.overlaps {
            let (a, b) = (o.pair[0], o.pair[1]);
            for index in [a, b] {
                if index >= charts.len() {
                    return Err(NCError::ChartIndexOutOfRange { index });
                }
            }
            let ring = match &o.ring {
                Some(r) => r.to_ring(field)?,
                None => charts[a].ring.clone(),
            };
            let left = resolve_side(&ring, &charts[a], &o.left, &o.rename_left)?;
            let right = resolve_side(&ring, &charts[b], &o.right, &o.rename_right)?;
            let transition = Transition {
                sigma: o.sigma.clone(),
                units: o
                    .units
                    .iter()
                    .map(|p| dto_to_poly(&ring, p))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            overlaps.push(Overlap {
                pair: (a, b),
                ring,
                left,
                right,
                transition,
            });
        }
        let mut triples = Vec::new();
        for t in &self.triples {
            let (a, b, c) = (t.charts[0], t.charts[1], t.charts[2]);
            for index in [a, b, c] {
                if index >= charts.len() {
                    return Err(NCError::ChartIndexOutOfRange { index });
                }
            }
            let ring = match &t.ring {
                Some(r) => r.to_ring(field)?,
                None => charts[a].ring.clone(),
            };
            let third = match &t.third {
                Some(polys) => polys
                    .iter()
                    .map(|p| dto_to_poly(&ring, p))
                    .collect::<Result<Vec<_>, _>>()?,
                None => reinterpret_tuple(&ring, &charts[c].zeta)?,
            };
            let left_mid = resolve_transition(&ring, &overlaps, (a, b), &t.left_mid)?;
            let mid_right = resolve_transition(&ring, &overlaps, (b, c), &t.mid_right)?;
            let left_right = resolve_transition(&ring, &overlaps, (a, c), &t.left_right)?;
            triples.push(TripleOverlap {
                charts: (a, b, c),
                ring,
                third,
                left_mid,
                mid_right,
                left_right,
            });
        }
        Ok(NCCover {
            charts,
            overlaps,
            triples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nclog::system::find_transition;

    fn swap_cover() -> NCCover {
        let ring = NCRing::new(2, 1, FieldSpec::Rational, Default::default()).unwrap();
        let left = LogSystem::new(
            ring.clone(),
            vec![ring.var(0).unwrap(), ring.var(1).unwrap(), ring.one()],
        )
        .unwrap();
        let right = LogSystem::new(
            ring.clone(),
            vec![ring.var(1).unwrap(), ring.var(0).unwrap(), ring.one()],
        )
        .unwrap();
        let transition = find_transition(&left, &right).unwrap();
        NCCover {
            charts: vec![left.clone(), right.clone()],
            overlaps: vec![Overlap {
                pair: (0, 1),
                ring,
                left: left.zeta,
                right: right.zeta,
                transition,
            }],
            triples: vec![],
        }
    }

    #[test]
    fn covers_round_trip_through_the_document_form() {
        let cover = swap_cover();
        let dto = CoverDto::from_cover(&cover);
        let text = serde_json::to_string_pretty(&dto).unwrap();
        let back: CoverDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_cover().unwrap(), cover);
        // Canonical re-serialization is stable.
        assert_eq!(
            serde_json::to_string_pretty(&CoverDto::from_cover(&back.to_cover().unwrap()))
                .unwrap(),
            text
        );
    }

    #[test]
    fn minimal_documents_default_everything() {
        let text = r#"{
            "charts": [
                {"n": 2, "d": 1, "zeta": [
                    [{"coeffs": 1, "exponents": [1, 0, 0]}],
                    [{"coeffs": 1, "exponents": [0, 1, 0]}],
                    [{"coeffs": 1, "exponents": [0, 0, 0]}]
                ]},
                {"n": 2, "d": 1, "zeta": [
                    [{"coeffs": 1, "exponents": [0, 1, 0]}],
                    [{"coeffs": 1, "exponents": [1, 0, 0]}],
                    [{"coeffs": 1, "exponents": [0, 0, 0]}]
                ]}
            ],
            "overlaps": [
                {"pair": [0, 1], "sigma": [1, 0, 2], "units": [
                    [{"coeffs": 1, "exponents": [0, 0, 0]}],
                    [{"coeffs": 1, "exponents": [0, 0, 0]}],
                    [{"coeffs": 1, "exponents": [0, 0, 0]}]
                ]}
            ]
        }"#;
        let dto: CoverDto = serde_json::from_str(text).unwrap();
        let cover = dto.to_cover().unwrap();
        assert_eq!(cover, swap_cover());
        assert_eq!(cover.charts[0].ring.field(), FieldSpec::Rational);
    }

    #[test]
    fn fraction_coefficients_parse_from_strings() {
        let ring = NCRing::new(1, 0, FieldSpec::Rational, Default::default()).unwrap();
        let dto: PolyDto = serde_json::from_str(
            r#"[{"coeffs": "1/2", "exponents": [0, 0]}, {"coeff": 3, "exponents": [0, 1]}]"#,
        )
        .unwrap();
        let p = dto_to_poly(&ring, &dto).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let expected = ring
            .poly(&[(half, vec![0, 0]), (BigRational::from(BigInt::from(3)), vec![0, 1])])
            .unwrap();
        assert_eq!(p, expected);
        // Emission uses strings only for non-integers.
        let emitted = poly_to_dto(&p);
        assert_eq!(emitted[0].coeffs, RatDto::Text("1/2".to_string()));
        assert_eq!(emitted[1].coeffs, RatDto::Integer(3));
    }

    #[test]
    fn prime_fields_are_declared_at_top_level() {
        let text = r#"{
            "field": {"prime": 5},
            "charts": [
                {"n": 1, "d": 1, "zeta": [
                    [{"coeffs": 7, "exponents": [1, 0]}],
                    [{"coeffs": 1, "exponents": [0, 1]}]
                ]}
            ]
        }"#;
        let dto: CoverDto = serde_json::from_str(text).unwrap();
        let cover = dto.to_cover().unwrap();
        assert_eq!(cover.charts[0].ring.field(), FieldSpec::Prime(5));
        // 7 ≡ 2 (mod 5) in the stored coefficient.
        let entry = &cover.charts[0].zeta[0];
        let (_, coeff) = entry.terms().next().unwrap();
        assert_eq!(coeff, &BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn omitted_triple_transitions_come_from_the_overlaps() {
        let cover = swap_cover();
        let mut dto = CoverDto::from_cover(&cover);
        // Declare a degenerate triple (0, 1, 0): left_mid from (0,1),
        // mid_right from (1,0) — only the mirror is on file, so it is
        // inverted — and left_right from (0,0) must be explicit.
        dto.triples.push(TripleDto {
            charts: [0, 1, 0],
            ring: None,
            third: None,
            left_mid: None,
            mid_right: None,
            left_right: Some(TransitionDto {
                sigma: vec![0, 1, 2],
                units: vec![
                    vec![TermDto {
                        coeffs: RatDto::Integer(1),
                        exponents: vec![0, 0, 0],
                    }];
                    3
                ],
            }),
        });
        let built = dto.to_cover().unwrap();
        let triple = &built.triples[0];
        assert_eq!(triple.left_mid, cover.overlaps[0].transition);
        assert_eq!(
            triple.mid_right,
            cover.overlaps[0]
                .transition
                .inverse(&cover.overlaps[0].ring)
                .unwrap()
        );
        assert!(crate::nclog::cover::check_triple(triple).unwrap().passed());
    }

    #[test]
    fn missing_overlaps_for_triples_are_reported() {
        let cover = swap_cover();
        let mut dto = CoverDto::from_cover(&cover);
        dto.triples.push(TripleDto {
            charts: [1, 0, 1],
            ring: None,
            third: None,
            left_mid: None,
            mid_right: None,
            left_right: None,
        });
        // (1, 0) resolves by inverting the stored (0, 1); the first gap is
        // (0, 1)'s own lookup for mid_right — that succeeds too; left_right
        // wants (1, 1) which is nowhere on file.
        assert_eq!(
            dto.to_cover().unwrap_err(),
            NCError::MissingOverlap { pair: (1, 1) }
        );
    }

    #[test]
    fn renamings_embed_charts_into_wider_overlap_rings() {
        // A 2-variable chart (n = 1) embedded into a 3-variable overlap ring
        // with its variables sent to positions 0 and 2.
        let field = FieldSpec::Rational;
        let small = NCRing::new(1, 0, field, Default::default()).unwrap();
        let chart = LogSystem::new(
            small.clone(),
            vec![small.var(0).unwrap(), small.one()],
        )
        .unwrap();
        let wide = NCRing::new(2, 0, field, Default::default()).unwrap();
        let renamed = rename_tuple(&wide, &[0, 2], &chart.zeta).unwrap();
        assert_eq!(renamed.len(), 3);
        assert_eq!(renamed[0], wide.var(0).unwrap());
        assert_eq!(renamed[1], wide.one());
        assert_eq!(renamed[2], wide.one());

        let bad = rename_tuple(&wide, &[0, 0], &chart.zeta).unwrap_err();
        assert_eq!(bad, NCError::BadRenaming { index: 1 });
    }

    #[test]
    fn unknown_field_names_are_rejected() {
        let dto = FieldDto::Name("real".to_string());
        assert_eq!(
            dto.to_field().unwrap_err(),
            NCError::BadCoefficient("real".to_string())
        );
    }
}
