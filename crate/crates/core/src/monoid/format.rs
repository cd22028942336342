//! On-disk JSON shapes for ambient groups, elements, and monoids.
//!
//! Integers are written as JSON numbers when they fit in an i64 and as
//! decimal strings otherwise, so files stay readable without ever losing
//! exactness. Parsing accepts both forms everywhere an integer is expected.

use super::{AffineMonoid, FgAbelianGroup, GroupElement, MonoidError};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An exact integer that serializes as a JSON number when it fits in i64
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Int {
        Int(x)
    }
}

impl From<i64> for Int {
    fn from(x: i64) -> Int {
        Int(BigInt::from(x))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Int, D::Error> {
        deserializer.deserialize_any(IntVisitor)
    }
}

/// Ambient group descriptor: free rank plus torsion orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientDto {
    pub free_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Int>,
}

impl AmbientDto {
    pub fn from_group(group: &FgAbelianGroup) -> AmbientDto {
        AmbientDto {
            free_rank: group.free_rank(),
            torsion: group.torsion_orders().iter().cloned().map(Int).collect(),
        }
    }

    pub fn to_group(&self) -> Result<FgAbelianGroup, MonoidError> {
        FgAbelianGroup::new(
            self.free_rank,
            self.torsion.iter().map(|x| x.0.clone()).collect(),
        )
    }
}

/// A monoid as stored on disk: the ambient group and a generator list, one
/// coordinate row per generator (free coordinates first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDto {
    pub ambient: AmbientDto,
    #[serde(default)]
    pub generators: Vec<Vec<Int>>,
}

impl MonoidDto {
    pub fn from_monoid(monoid: &AffineMonoid) -> MonoidDto {
        MonoidDto {
            ambient: AmbientDto::from_group(monoid.ambient()),
            generators: monoid
                .generators()
                .iter()
                .map(|g| g.coords().iter().cloned().map(Int).collect())
                .collect(),
        }
    }

    pub fn to_monoid(&self) -> Result<AffineMonoid, MonoidError> {
        let ambient = self.ambient.to_group()?;
        let gens = self
            .generators
            .iter()
            .map(|row| element_from_ints(&ambient, row))
            .collect::<Result<Vec<_>, _>>()?;
        AffineMonoid::new(ambient, gens)
    }
}

/// Builds an element from a parsed coordinate row.
pub fn element_from_ints(
    ambient: &FgAbelianGroup,
    coords: &[Int],
) -> Result<GroupElement, MonoidError> {
    ambient.element(coords.iter().map(|x| x.0.clone()).collect())
}
