//! Input loading, element parsing, and the shared error/output types.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use logsmooth::loghom::format::HomDto;
use logsmooth::loghom::{HomError, MonoidHom};
use logsmooth::monoid::format::{Int, MonoidDto};
use logsmooth::monoid::{AffineMonoid, MonoidError, DEFAULT_SEARCH_BOUND};
use logsmooth::nclog::NCError;
use logsmooth::IntMatrix;

/// Anything that prevents producing a verdict: unreadable files, malformed
/// documents, precondition violations.  Always exits with status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<MonoidError> for CliError {
    fn from(e: MonoidError) -> CliError {
        CliError(e.to_string())
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> CliError {
        CliError(e.to_string())
    }
}

impl From<NCError> for CliError {
    fn from(e: NCError) -> CliError {
        CliError(e.to_string())
    }
}

/// Result of a successful dispatch: the verdict polarity, the
/// human-readable report, and the machine-readable one.
pub struct CmdOutput {
    pub affirmative: bool,
    pub human: String,
    pub json: serde_json::Value,
}

impl CmdOutput {
    pub fn new<R: Serialize>(
        affirmative: bool,
        human: String,
        report: &R,
    ) -> Result<CmdOutput, CliError> {
        let json = serde_json::to_value(report)
            .map_err(|e| CliError(format!("cannot encode report: {e}")))?;
        Ok(CmdOutput {
            affirmative,
            human,
            json,
        })
    }

    /// Pretty JSON with sorted keys (the value map is ordered).
    pub fn json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("JSON value always serializes")
    }
}

/// Read and deserialize a JSON document, citing the path and the line/column
/// of any parse failure.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Matrix file: either a bare array of rows or `{"matrix": [[…], …]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixDoc {
    Bare(Vec<Vec<Int>>),
    Tagged { matrix: Vec<Vec<Int>> },
}

pub fn load_matrix(path: &Path) -> Result<IntMatrix, CliError> {
    let rows = match load_json::<MatrixDoc>(path)? {
        MatrixDoc::Bare(rows) | MatrixDoc::Tagged { matrix: rows } => rows,
    };
    let cols = rows.first().map_or(0, Vec::len);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError(format!(
                "{}: row {i} has {} entries, expected {cols}",
                path.display(),
                row.len()
            )));
        }
    }
    Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| {
        rows[i][j].0.clone()
    }))
}

pub fn load_monoid(path: &Path) -> Result<AffineMonoid, CliError> {
    let dto: MonoidDto = load_json(path)?;
    dto.to_monoid()
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn load_hom(path: &Path) -> Result<MonoidHom, CliError> {
    let dto: HomDto = load_json(path)?;
    dto.to_hom()
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Two homomorphisms out of one shared source monoid.
#[derive(Serialize, Deserialize)]
pub struct HomPairDto {
    pub left: HomDto,
    pub right: HomDto,
}

pub fn load_hom_pair(path: &Path) -> Result<(MonoidHom, MonoidHom), CliError> {
    let dto: HomPairDto = load_json(path)?;
    let context = |e: HomError| CliError(format!("{}: {e}", path.display()));
    Ok((dto.left.to_hom().map_err(context)?, dto.right.to_hom().map_err(context)?))
}

/// Parse element coordinates: comma- or space-separated decimal integers,
/// with optional surrounding brackets.
pub fn parse_coords(text: &str) -> Result<Vec<BigInt>, CliError> {
    let trimmed = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split([',', ' '])
        .filter(|piece| !piece.trim().is_empty())
        .map(|piece| {
            piece
                .trim()
                .parse::<BigInt>()
                .map_err(|_| CliError(format!("not a decimal integer: {:?}", piece.trim())))
        })
        .collect()
}

/// The box search bound, overridable through `LOGSMOOTH_BOUND`.
pub fn search_bound() -> Result<u32, CliError> {
    match std::env::var("LOGSMOOTH_BOUND") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEARCH_BOUND),
        Err(e) => Err(CliError(format!("LOGSMOOTH_BOUND: {e}"))),
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .map_err(|_| CliError(format!("LOGSMOOTH_BOUND must be a non-negative integer, got {s:?}"))),
    }
}

/// Render coordinates as `[a, b, c]` in decimal.
pub fn fmt_coords(coords: &[BigInt]) -> String {
    let inner = coords
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("[{inner}]")
}

pub fn ints(values: &[BigInt]) -> Vec<Int> {
    values.iter().cloned().map(Int).collect()
}

pub fn matrix_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| ints(&m.row(i))).collect()
}
