//! Machine-readable report shapes, one per verb.
//!
//! Every report re-parses from its own JSON output and re-serializes to an
//! identical document; integers are decimal and exact throughout.

use serde::{Deserialize, Serialize};

use logsmooth::monoid::format::{Int, MonoidDto};
use logsmooth::nclog::format::PolyDto;

#[derive(Serialize, Deserialize)]
pub struct SnfReport {
    pub cols: usize,
    pub invariant_factors: Vec<Int>,
    pub rank: usize,
    pub rows: usize,
    pub s: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    pub u_inv: Vec<Vec<Int>>,
    pub v: Vec<Vec<Int>>,
}

#[derive(Serialize, Deserialize)]
pub struct MemberReport {
    pub element: Vec<Int>,
    pub member: bool,
}

#[derive(Serialize, Deserialize)]
pub struct SaturateReport {
    pub already_saturated: bool,
    pub saturation: MonoidDto,
}

#[derive(Serialize, Deserialize)]
pub struct SaturatedInReport {
    pub multiplier: Option<Int>,
    pub multiplier_bound: Option<u32>,
    pub reason: Option<String>,
    pub saturated: bool,
    pub search_bound: Option<u32>,
    pub witness: Option<Vec<Int>>,
}

#[derive(Serialize, Deserialize)]
pub struct HilbertReport {
    pub basis: Vec<Vec<Int>>,
    pub count: usize,
}

#[derive(Serialize, Deserialize)]
pub struct SmoothReport {
    pub characteristic: u64,
    pub cokernel_free_rank: usize,
    pub cokernel_torsion: Vec<Int>,
    pub kernel_free_rank: usize,
    pub kernel_torsion: Vec<Int>,
    pub log_etale: bool,
    pub log_smooth: bool,
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct OmegaReport {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

#[derive(Serialize, Deserialize)]
pub struct PushoutReport {
    pub left_matrix: Vec<Vec<Int>>,
    pub monoid: MonoidDto,
    pub rank_additivity: Option<bool>,
    pub right_matrix: Vec<Vec<Int>>,
}

#[derive(Serialize, Deserialize)]
pub struct FsFiberReport {
    pub left_matrix: Vec<Vec<Int>>,
    pub monoid: MonoidDto,
    pub right_matrix: Vec<Vec<Int>>,
    pub saturated: bool,
}

#[derive(Serialize, Deserialize)]
pub struct OverlapReport {
    pub note: Option<String>,
    pub pair: [usize; 2],
    pub passed: bool,
    pub product: PolyDto,
}

#[derive(Serialize, Deserialize)]
pub struct TripleReport {
    pub charts: [usize; 3],
    pub failures: Vec<usize>,
    pub passed: bool,
}

#[derive(Serialize, Deserialize)]
pub struct DssReport {
    pub mode: String,
    pub note: Option<String>,
    pub overlaps: Vec<OverlapReport>,
    pub triples: Vec<TripleReport>,
    pub verdict: bool,
}
