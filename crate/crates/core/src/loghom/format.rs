//! JSON wire format for monoid homomorphisms.

use serde::{Deserialize, Serialize};

use crate::intlin::IntMatrix;
use crate::monoid::format::{Int, MonoidDto};
use crate::monoid::MonoidError;

use super::hom::{HomError, MonoidHom};

/// A homomorphism as source, target, and the matrix rows acting on ambient
/// coordinates (one row per target coordinate).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomDto {
    pub source: MonoidDto,
    pub target: MonoidDto,
    #[serde(default)]
    pub matrix: Vec<Vec<Int>>,
}

impl HomDto {
    pub fn from_hom(hom: &MonoidHom) -> HomDto {
        let m = hom.matrix();
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| Int(m[(i, j)].clone())).collect())
            .collect();
        HomDto {
            source: MonoidDto::from_monoid(hom.source()),
            target: MonoidDto::from_monoid(hom.target()),
            matrix,
        }
    }

    pub fn to_hom(&self) -> Result<MonoidHom, HomError> {
        let source = self.source.to_monoid()?;
        let target = self.target.to_monoid()?;
        let rows = self.matrix.len();
        let cols = self.matrix.first().map_or(0, |r| r.len());
        for row in &self.matrix {
            if row.len() != cols {
                return Err(HomError::Monoid(MonoidError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                }));
            }
        }
        let matrix = IntMatrix::from_fn(rows, cols, |i, j| self.matrix[i][j].0.clone());
        MonoidHom::new(source, target, matrix)
    }
}
