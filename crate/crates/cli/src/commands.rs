//! One handler per verb: load the input, run the library, shape the report.

use std::fmt::Write as _;
use std::path::Path;

use logsmooth::loghom::{
    amalgamated_sum, fs_fiber_chart, rank_additivity_check, smoothness_report, HomError,
    Pushout,
};
use logsmooth::monoid::format::{Int, MonoidDto};
use logsmooth::monoid::{
    hilbert_basis, AffineMonoid, ProvedReason, SaturatedInVerdict, DEFAULT_MULTIPLIER_BOUND,
};
use logsmooth::nclog::format::poly_to_dto;
use logsmooth::nclog::{check_triple, cocycle_check, is_prime, CocycleMode};
use logsmooth::smith;

use crate::io::{
    fmt_coords, ints, load_hom, load_hom_pair, load_json, load_matrix, load_monoid,
    matrix_rows, parse_coords, search_bound, CliError, CmdOutput,
};
use crate::reports::*;
use crate::Mode;

pub fn snf(path: &Path) -> Result<CmdOutput, CliError> {
    let matrix = load_matrix(path)?;
    let nf = smith(&matrix);
    let report = SnfReport {
        cols: matrix.cols(),
        invariant_factors: ints(&nf.invariant_factors),
        rank: nf.rank,
        rows: matrix.rows(),
        s: matrix_rows(&nf.s),
        u: matrix_rows(&nf.u),
        u_inv: matrix_rows(&nf.u_inv),
        v: matrix_rows(&nf.v),
    };
    let human = format!(
        "invariant factors: {}\nrank: {}\n",
        fmt_coords(&nf.invariant_factors),
        nf.rank
    );
    CmdOutput::new(true, human, &report)
}

pub fn member(element: &str, path: &Path) -> Result<CmdOutput, CliError> {
    let monoid = load_monoid(path)?;
    let coords = parse_coords(element)?;
    let el = monoid.ambient().element(coords)?;
    let inside = monoid.member(&el)?;
    let report = MemberReport {
        element: ints(el.coords()),
        member: inside,
    };
    let human = format!(
        "element: {}\nmember: {}\n",
        fmt_coords(el.coords()),
        if inside { "yes" } else { "no" }
    );
    CmdOutput::new(inside, human, &report)
}

fn describe_monoid(monoid: &AffineMonoid) -> String {
    let ambient = monoid.ambient();
    let mut text = format!(
        "ambient: free rank {}, torsion {}\ngenerators ({}):\n",
        ambient.free_rank(),
        fmt_coords(ambient.torsion_orders()),
        monoid.generators().len()
    );
    for g in monoid.generators() {
        let _ = writeln!(text, "  {}", fmt_coords(g.coords()));
    }
    text
}

pub fn saturate(path: &Path, container: Option<&Path>) -> Result<CmdOutput, CliError> {
    let monoid = load_monoid(path)?;
    let Some(container_path) = container else {
        let sat = monoid.saturate()?;
        let already = monoid.equals_monoid(&sat)?;
        let report = SaturateReport {
            already_saturated: already,
            saturation: MonoidDto::from_monoid(&sat),
        };
        let human = format!(
            "already saturated: {}\nsaturation:\n{}",
            if already { "yes" } else { "no" },
            describe_monoid(&sat)
        );
        return CmdOutput::new(true, human, &report);
    };
    let big = load_monoid(container_path)?;
    let bound = search_bound()?;
    let verdict = monoid.is_saturated_in(&big, bound, DEFAULT_MULTIPLIER_BOUND)?;
    let (report, human, affirmative) = match verdict {
        SaturatedInVerdict::ProvedTrue { reason } => {
            let (slug, text) = match reason {
                ProvedReason::ContainerCoincides => (
                    "container-coincides",
                    "the container generates the same monoid",
                ),
                ProvedReason::DivisibleHullInside => (
                    "divisible-hull-inside",
                    "the divisible hull already lies inside the monoid",
                ),
            };
            (
                SaturatedInReport {
                    multiplier: None,
                    multiplier_bound: None,
                    reason: Some(slug.to_string()),
                    saturated: true,
                    search_bound: None,
                    witness: None,
                },
                format!("saturated in container: yes (proved: {text})\n"),
                true,
            )
        }
        SaturatedInVerdict::TrueWithinBound {
            search_bound,
            multiplier_bound,
        } => (
            SaturatedInReport {
                multiplier: None,
                multiplier_bound: Some(multiplier_bound),
                reason: None,
                saturated: true,
                search_bound: Some(search_bound),
                witness: None,
            },
            format!(
                "saturated in container: no counterexample within search bound {search_bound} \
                 (multipliers up to {multiplier_bound})\n"
            ),
            true,
        ),
        SaturatedInVerdict::False {
            witness,
            multiplier,
        } => (
            SaturatedInReport {
                multiplier: Some(Int(multiplier.clone())),
                multiplier_bound: None,
                reason: None,
                saturated: false,
                search_bound: None,
                witness: Some(ints(witness.coords())),
            },
            format!(
                "saturated in container: no\nwitness: {} (multiplier {multiplier} puts it \
                 inside, the element itself is missing)\n",
                fmt_coords(witness.coords())
            ),
            false,
        ),
    };
    CmdOutput::new(affirmative, human, &report)
}

pub fn hilbert(path: &Path) -> Result<CmdOutput, CliError> {
    let monoid = load_monoid(path)?;
    let basis = hilbert_basis(monoid.ambient(), monoid.generators())?;
    let report = HilbertReport {
        basis: basis.iter().map(|g| ints(g.coords())).collect(),
        count: basis.len(),
    };
    let mut human = format!("hilbert basis ({} elements):\n", basis.len());
    for g in &basis {
        let _ = writeln!(human, "  {}", fmt_coords(g.coords()));
    }
    CmdOutput::new(true, human, &report)
}

pub fn check_smooth(characteristic: u64, path: &Path) -> Result<CmdOutput, CliError> {
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(CliError(format!(
            "characteristic must be 0 or a prime, got {characteristic}"
        )));
    }
    let hom = load_hom(path)?;
    let analysis = smoothness_report(&hom)?;
    let smooth = analysis.is_log_smooth(characteristic);
    let etale = analysis.is_log_etale(characteristic);
    let witness = if smooth {
        None
    } else if !analysis.kernel_is_finite() {
        Some(format!(
            "kernel has positive rank {}",
            analysis.kernel_free_rank
        ))
    } else {
        let order = analysis
            .torsion_obstruction()
            .expect("finite kernel has an obstruction order");
        Some(format!("torsion order {order} not invertible"))
    };
    let report = SmoothReport {
        characteristic,
        cokernel_free_rank: analysis.cokernel_free_rank,
        cokernel_torsion: ints(&analysis.cokernel_torsion),
        kernel_free_rank: analysis.kernel_free_rank,
        kernel_torsion: ints(&analysis.kernel_torsion),
        log_etale: etale,
        log_smooth: smooth,
        witness: witness.clone(),
    };
    let mut human = format!(
        "kernel: free rank {}, torsion {}\ncokernel: free rank {}, torsion {}\n",
        analysis.kernel_free_rank,
        fmt_coords(&analysis.kernel_torsion),
        analysis.cokernel_free_rank,
        fmt_coords(&analysis.cokernel_torsion),
    );
    match &witness {
        None => {
            let _ = writeln!(
                human,
                "log smooth at characteristic {characteristic}: yes"
            );
            let _ = writeln!(
                human,
                "log etale at characteristic {characteristic}: {}",
                if etale { "yes" } else { "no" }
            );
        }
        Some(reason) => {
            let _ = writeln!(
                human,
                "log smooth at characteristic {characteristic}: no — {reason}"
            );
        }
    }
    CmdOutput::new(smooth, human, &report)
}

pub fn omega(path: &Path) -> Result<CmdOutput, CliError> {
    let hom = load_hom(path)?;
    let analysis = smoothness_report(&hom)?;
    let (free_rank, torsion) = analysis.differential_invariants();
    let report = OmegaReport {
        free_rank,
        torsion: ints(torsion),
    };
    let human = format!(
        "differential invariants: free rank {free_rank}, torsion {}\n",
        fmt_coords(torsion)
    );
    CmdOutput::new(true, human, &report)
}

fn pushout_matrices(push: &Pushout) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    (
        matrix_rows(push.left.matrix()),
        matrix_rows(push.right.matrix()),
    )
}

pub fn pushout(path: &Path) -> Result<CmdOutput, CliError> {
    let (left, right) = load_hom_pair(path)?;
    let push = amalgamated_sum(&left, &right)?;
    let additivity = match rank_additivity_check(&left, &right) {
        Ok(holds) => Some(holds),
        Err(HomError::NotInjective) => None,
        Err(e) => return Err(e.into()),
    };
    let (left_matrix, right_matrix) = pushout_matrices(&push);
    let report = PushoutReport {
        left_matrix,
        monoid: MonoidDto::from_monoid(&push.monoid),
        rank_additivity: additivity,
        right_matrix,
    };
    let human = format!(
        "pushout:\n{}rank additivity: {}\n",
        describe_monoid(&push.monoid),
        match additivity {
            Some(true) => "holds",
            Some(false) => "VIOLATED",
            None => "not checked (no leg is injective on groups)",
        }
    );
    CmdOutput::new(additivity != Some(false), human, &report)
}

pub fn fsfiber(path: &Path) -> Result<CmdOutput, CliError> {
    let (left, right) = load_hom_pair(path)?;
    let chart = fs_fiber_chart(&left, &right)?;
    let saturated = chart.monoid.is_saturated()?;
    let (left_matrix, right_matrix) = pushout_matrices(&chart);
    let report = FsFiberReport {
        left_matrix,
        monoid: MonoidDto::from_monoid(&chart.monoid),
        right_matrix,
        saturated,
    };
    let human = format!(
        "saturated fiber chart:\n{}saturated: {}\n",
        describe_monoid(&chart.monoid),
        if saturated { "yes" } else { "no" }
    );
    CmdOutput::new(saturated, human, &report)
}

pub fn dss_check(path: &Path, mode: Mode, triples: bool) -> Result<CmdOutput, CliError> {
    let cover = load_json::<logsmooth::nclog::format::CoverDto>(path)?
        .to_cover()
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let cocycle_mode = match mode {
        Mode::Strict => CocycleMode::Strict,
        Mode::ModD => CocycleMode::ModD,
    };
    let verdicts = cocycle_check(&cover, cocycle_mode)?;
    let mut human = String::new();
    let mut all_passed = true;
    let mut overlap_reports = Vec::with_capacity(verdicts.len());
    for (verdict, overlap) in verdicts.iter().zip(&cover.overlaps) {
        let one = overlap.ring.one();
        let strict_one = verdict.product == one;
        let note = if verdict.passed && mode == Mode::ModD && !strict_one {
            Some("mod-D pass, strict normalization not attempted".to_string())
        } else {
            None
        };
        let (a, b) = verdict.pair;
        if verdict.passed {
            match &note {
                Some(text) => {
                    let _ = writeln!(human, "overlap ({a}, {b}): {text}");
                }
                None => {
                    let _ = writeln!(human, "overlap ({a}, {b}): pass");
                }
            }
        } else {
            all_passed = false;
            let _ = writeln!(
                human,
                "overlap ({a}, {b}): FAIL — residual {}",
                verdict.product
            );
        }
        overlap_reports.push(OverlapReport {
            note,
            pair: [a, b],
            passed: verdict.passed,
            product: poly_to_dto(&verdict.product),
        });
    }
    let mut triple_reports = Vec::new();
    if triples {
        for triple in &cover.triples {
            let verdict = check_triple(triple)?;
            let (a, b, c) = verdict.charts;
            if verdict.passed() {
                let _ = writeln!(human, "triple ({a}, {b}, {c}): pass");
            } else {
                all_passed = false;
                let _ = writeln!(
                    human,
                    "triple ({a}, {b}, {c}): FAIL at entries {:?}",
                    verdict.failures
                );
            }
            let passed = verdict.failures.is_empty();
            triple_reports.push(TripleReport {
                charts: [a, b, c],
                failures: verdict.failures,
                passed,
            });
        }
    }
    let _ = writeln!(
        human,
        "verdict: {}",
        if all_passed { "pass" } else { "fail" }
    );
    let note = if mode == Mode::ModD && all_passed {
        let text = "mod-D pass, strict normalization not attempted";
        let _ = writeln!(human, "note: {text}");
        Some(text.to_string())
    } else {
        None
    };
    let report = DssReport {
        mode: match mode {
            Mode::Strict => "strict".to_string(),
            Mode::ModD => "mod-d".to_string(),
        },
        note,
        overlaps: overlap_reports,
        triples: triple_reports,
        verdict: all_passed,
    };
    CmdOutput::new(all_passed, human, &report)
}
