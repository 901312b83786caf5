use std::path::Path;

use pentagram_core::corrugated::AxisAlignedM;
use pentagram_core::format::Instance;
use pentagram_core::lifting::{lift_check, AffineFlat, Families, LiftKind, LiftOptions, LiftReport, LiftSource};
use pentagram_core::linalg::{add, Vector};
use pentagram_core::mirror::AxisAlignedMirrorPair;
use pentagram_core::pentagram2d::AxisAligned2;
use pentagram_core::proj::join_points;
use pentagram_core::rational::format_rational;
use pentagram_core::ProjPoint;
use clap::ValueEnum;
use serde_json::json;

use super::read_instance;
use crate::error::{CliError, Status};
use crate::LiftCheck;

pub fn source_of(instance: &Instance) -> Result<LiftSource, CliError> {
    Ok(match instance {
        Instance::Polygon2(p) => LiftSource::Planar(AxisAligned2::from_polygon(p)?),
        Instance::PolygonM(p) => LiftSource::Corrugated(AxisAlignedM::from_polygon(p)?),
        Instance::Mirror(p) => LiftSource::Mirror(AxisAlignedMirrorPair::new(p.clone())?),
        Instance::Pair1(_) => return Err(CliError::usage("lifting needs a P2, Pm or P2-mirror instance")),
    })
}

fn vec_text(v: &[pentagram_core::Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn kind_text(k: LiftKind) -> String {
    match k {
        LiftKind::Canonical => "canonical".into(),
        LiftKind::Random { seed, attempt } => format!("random (seed {seed}, attempt {attempt})"),
        LiftKind::Given => "given".into(),
    }
}

/// `base + t direction`, and for lines of the plane also the equation.
pub fn line_text(f: &AffineFlat) -> String {
    let mut s = format!("{} + t {}", vec_text(f.base()), f.basis().iter().map(|b| vec_text(b)).collect::<Vec<_>>().join(" + s "));
    if f.ambient() == 2 && f.dim() == 1 {
        let a = ProjPoint::affine(f.base());
        let b = ProjPoint::affine(&add(f.base(), &f.basis()[0]));
        if let Ok(l) = join_points(&a, &b) {
            let c = l.coeffs();
            s.push_str(&format!("  [{}x + {}y + {} = 0]", c[0], c[1], c[2]).replace("+ -", "- "));
        }
    }
    s
}

fn matrix_json(m: &[Vector]) -> serde_json::Value {
    json!(m.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn passed(check: LiftCheck, r: &LiftReport) -> bool {
    r.families.iter().all(|f| match check {
        LiftCheck::GeneralPosition => f.general_position,
        LiftCheck::Centroid => f.centroid.passed(),
        LiftCheck::Mating => r.mating.passed(),
        LiftCheck::FullySliced => {
            f.fully_sliced && f.recurrence && f.prism_independence && f.slices_match_mating && f.slices_closed_under_mating
        }
        LiftCheck::CollapseLine => f.general_position && f.fully_sliced && f.collapse.passed(),
    })
}

fn report_json(check: LiftCheck, r: &LiftReport, ok: bool) -> serde_json::Value {
    let families: Vec<serde_json::Value> = r
        .families
        .iter()
        .map(|f| {
            json!({
                "start": f.start,
                "lift": kind_text(f.kind),
                "heights": matrix_json(&f.heights),
                "normals": matrix_json(&f.normals),
                "normal_rank": f.normal_rank,
                "checks": {
                    "general_position": f.general_position,
                    "prisms_axis_parallel": f.prisms_axis_parallel,
                    "centroid": f.centroid.passed(),
                    "skeleton_recurrence": f.recurrence,
                    "fully_sliced": f.fully_sliced,
                    "slices_match_mating": f.slices_match_mating,
                    "slices_closed_under_mating": f.slices_closed_under_mating,
                    "prism_independence": f.prism_independence,
                    "collapse_line": f.collapse.passed(),
                },
                "centroid": f.centroid.projected.to_text(),
                "expected_centroid": f.centroid.expected.to_text(),
                "collapse_line": line_text(&f.collapse.projected),
            })
        })
        .collect();
    json!({
        "check": check.to_possible_value().expect("no skipped variants").get_name(),
        "variant": r.variant.name(),
        "n": r.n,
        "passed": ok,
        "mating": {
            "passed": r.mating.passed(),
            "stages_ok": r.mating.stages_ok,
            "unions": r.mating.unions,
        },
        "families": families,
    })
}

pub fn run(check: LiftCheck, input: &Path, seed: u64, all_families: bool, json_out: bool) -> Result<Status, CliError> {
    let src = source_of(&read_instance(input)?)?;
    let opts = LiftOptions {
        families: if all_families { Families::All } else { Families::Sampled(seed) },
        seed,
        attempts: 8,
    };
    let report = lift_check(&src, src.variant(), &opts)?;
    let ok = passed(check, &report);
    if json_out {
        println!("{}", serde_json::to_string_pretty(&report_json(check, &report, ok)).expect("plain JSON values"));
        return Ok(Status::from_bool(ok));
    }
    println!("variant: {}, n = {}", report.variant.name(), report.n);
    for (fi, f) in report.families.iter().enumerate() {
        if report.families.len() > 1 {
            println!("family starting at sequence {}:", f.start);
        }
        match check {
            LiftCheck::GeneralPosition => {
                println!("lift: {}", kind_text(f.kind));
                for (i, nrm) in f.normals.iter().enumerate() {
                    println!("normal {}: {}", 2 * i + 1, vec_text(nrm));
                }
                println!("normal rank: {} of {}", f.normal_rank, f.normals.len());
                println!("general position: {}", f.general_position);
            }
            LiftCheck::Centroid => {
                println!("common centroid: {}", f.centroid.centroids_equal);
                println!("projected centroid: {}", f.centroid.projected);
                println!("expected: {}", f.centroid.expected);
            }
            LiftCheck::Mating => {
                for (g, ok) in report.mating.stages_ok[fi].iter().enumerate() {
                    println!("stage {}: matches orbit: {ok}", g + 1);
                }
                let pts: Vec<String> = report.mating.finals[fi].points().iter().map(ProjPoint::to_text).collect();
                println!("final sequence: {}", pts.join(" "));
            }
            LiftCheck::FullySliced => {
                println!("skeleton recurrence: {}", f.recurrence);
                println!("fully sliced: {}", f.fully_sliced);
                println!("slices match mating: {}", f.slices_match_mating);
                println!("slices closed under mating: {}", f.slices_closed_under_mating);
                println!("prism independence: {}", f.prism_independence);
            }
            LiftCheck::CollapseLine => {
                println!("line: {}", line_text(&f.collapse.projected));
                println!("final points on line: {}", f.collapse.final_points_on_line);
                println!("centroid on line: {}", f.collapse.projected_centroid_on_line);
            }
        }
    }
    println!("{}", if ok { "pass" } else { "FAIL" });
    Ok(Status::from_bool(ok))
}
