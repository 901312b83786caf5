use std::path::PathBuf;

use clap::Args;
use pentagram_core::corrugated::{collapse_orbit_m, AxisAlignedM};
use pentagram_core::format::Instance;
use pentagram_core::frieze::{random_a1, verify_frieze};
use pentagram_core::lifting::{lift_check, mating_orbit_check, Families, LiftOptions};
use pentagram_core::lower1d::{verify_lower_collapse, AxisAlignedPair1};
use pentagram_core::mirror::{verify_correspondence, verify_mirror_collapse, AxisAlignedMirrorPair};
use pentagram_core::pentagram2d::{collapse_orbit, AxisAligned2};
use pentagram_core::ProjPoint;
use rayon::prelude::*;
use serde::Serialize;

use super::frieze::parse_list;
use super::gen::generate;
use super::lift::source_of;
use super::read_instance;
use crate::error::{CliError, Status};
use crate::{MapKind, Theorem};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    /// Instance file; random trials are drawn when absent.
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Trial `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pub range: i64,
    /// First frieze row for T005.
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    /// Kind of random instance for the lifting checks.
    #[arg(long, value_enum)]
    pub map: Option<MapKind>,
    #[arg(long)]
    pub all_families: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub seed: Option<u64>,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct TrialResult {
    pub index: usize,
    pub seed: Option<u64>,
    pub passed: bool,
    pub degenerate: bool,
    pub values: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub results: Vec<TrialResult>,
}

struct Outcome {
    passed: bool,
    values: Vec<(String, String)>,
}

fn outcome(passed: bool, values: &[(&str, String)]) -> Outcome {
    Outcome {
        passed,
        values: values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    }
}

fn theorem_name(t: Theorem) -> &'static str {
    match t {
        Theorem::T002 => "T002",
        Theorem::T003 => "T003",
        Theorem::T005 => "T005",
        Theorem::T007 => "T007",
        Theorem::T008 => "T008",
        Theorem::L2Mating => "L2-mating",
        Theorem::L2Lifting => "L2-lifting",
        Theorem::L4Correspondence => "L4-correspondence",
    }
}

fn default_map(t: Theorem) -> MapKind {
    match t {
        Theorem::T002 | Theorem::L2Mating | Theorem::L2Lifting => MapKind::Pent2d,
        Theorem::T003 => MapKind::Corrugated,
        Theorem::T005 | Theorem::T008 => MapKind::Lower,
        Theorem::T007 => MapKind::Mirror,
        Theorem::L4Correspondence => MapKind::MirrorFree,
    }
}

fn wrong_kind(t: Theorem) -> CliError {
    CliError::usage(format!("{} does not apply to this kind of instance", theorem_name(t)))
}

/// The tuple `B` of a pair `(infinity, B)`.
fn lower_b(instance: &Instance, t: Theorem) -> Result<Vec<ProjPoint>, CliError> {
    match instance {
        Instance::Pair1(p) if p.x().iter().all(|x| !x.is_finite()) => Ok(p.y().to_vec()),
        Instance::Pair1(_) => Err(CliError::usage("the first tuple must be all infinity")),
        _ => Err(wrong_kind(t)),
    }
}

fn evaluate(t: Theorem, instance: &Instance, args: &VerifyArgs, seed: u64) -> Result<Outcome, CliError> {
    Ok(match t {
        Theorem::T002 => {
            let Instance::Polygon2(p) = instance else { return Err(wrong_kind(t)) };
            let r = collapse_orbit(&AxisAligned2::from_polygon(p)?)?;
            let ok = r.matched && r.two_line_stage.alternation && r.two_line_stage.through_centroid;
            outcome(ok, &[("collapse", r.collapse_point.to_text()), ("centroid", r.centroid.to_text())])
        }
        Theorem::T003 => {
            let Instance::PolygonM(p) = instance else { return Err(wrong_kind(t)) };
            let r = collapse_orbit_m(&AxisAlignedM::from_polygon(p)?)?;
            let ok = r.matched && r.certificates_ok();
            outcome(ok, &[("collapse", r.collapse_point.to_text()), ("centroid", r.centroid.to_text())])
        }
        Theorem::T005 => {
            let r = verify_frieze(&lower_b(instance, t)?)?;
            outcome(r.passed(), &[("value", r.value.to_text()), ("mean", r.mean.to_text())])
        }
        Theorem::T007 => {
            let Instance::Mirror(p) = instance else { return Err(wrong_kind(t)) };
            let r = verify_mirror_collapse(&AxisAlignedMirrorPair::new(p.clone())?)?;
            outcome(
                r.passed(),
                &[("collapse", r.collapse_point.to_text()), ("expected", r.expected_point.to_text())],
            )
        }
        Theorem::T008 => {
            let b = AxisAlignedPair1::from_points(&lower_b(instance, t)?)?;
            let r = verify_lower_collapse(&b)?;
            outcome(r.matched, &[("value", r.value.to_text()), ("mean", r.mean.to_text())])
        }
        Theorem::L2Mating | Theorem::L2Lifting => {
            let src = source_of(instance)?;
            let families = if args.all_families { Families::All } else { Families::Sampled(seed) };
            if t == Theorem::L2Mating {
                let r = mating_orbit_check(&src, src.variant(), families)?;
                let finals: Vec<String> = r.finals.iter().map(|f| f.points()[0].to_text()).collect();
                outcome(r.passed(), &[("variant", r.variant.name().to_string()), ("final", finals.join(" "))])
            } else {
                let opts = LiftOptions { families, seed, attempts: 8 };
                let r = lift_check(&src, src.variant(), &opts)?;
                let lines: Vec<String> = r.families.iter().map(|f| super::lift::line_text(&f.collapse.projected)).collect();
                outcome(r.passed(), &[("variant", r.variant.name().to_string()), ("collapse line", lines.join("; "))])
            }
        }
        Theorem::L4Correspondence => {
            let Instance::Mirror(p) = instance else { return Err(wrong_kind(t)) };
            let r = verify_correspondence(p, p.n() - 1)?;
            outcome(r.all_match, &[("steps", r.k.to_string())])
        }
    })
}

fn random_instance(args: &VerifyArgs, seed: u64) -> Result<Instance, CliError> {
    let t = args.theorem;
    let n = args.n.ok_or_else(|| CliError::usage("random trials need --n"))?;
    if t == Theorem::T005 {
        return Ok(Instance::Pair1(pentagram_core::lower1d::PairState1D::raw(
            vec![ProjPoint::infinity(); n],
            random_a1(n, seed, args.range)?,
        )));
    }
    let map = args.map.unwrap_or_else(|| default_map(t));
    generate(map, n, args.m, seed, args.range)
}

fn given_instance(args: &VerifyArgs) -> Result<Option<Instance>, CliError> {
    if let Some(a1) = &args.a1 {
        if args.theorem != Theorem::T005 {
            return Err(CliError::usage("--a1 only applies to T005"));
        }
        let a1 = parse_list(a1)?;
        return Ok(Some(Instance::Pair1(pentagram_core::lower1d::PairState1D::raw(
            vec![ProjPoint::infinity(); a1.len()],
            a1,
        ))));
    }
    match &args.input {
        Some(path) => Ok(Some(read_instance(path)?)),
        None if args.random => Ok(None),
        None => Err(CliError::usage("give --input, --a1 or --random")),
    }
}

fn trial_result(index: usize, seed: Option<u64>, r: Result<Outcome, CliError>) -> Result<TrialResult, CliError> {
    match r {
        Ok(o) => Ok(TrialResult {
            index,
            seed,
            passed: o.passed,
            degenerate: false,
            values: o.values,
        }),
        Err(CliError::Degenerate(msg)) => Ok(TrialResult {
            index,
            seed,
            passed: false,
            degenerate: true,
            values: vec![("error".into(), msg)],
        }),
        Err(e) => Err(e),
    }
}

pub fn run(args: &VerifyArgs) -> Result<Status, CliError> {
    let results: Vec<TrialResult> = match given_instance(args)? {
        Some(instance) => {
            // A single degenerate instance is an error, not a failed trial.
            let o = evaluate(args.theorem, &instance, args, args.seed)?;
            vec![trial_result(0, None, Ok(o))?]
        }
        None => (0..args.trials)
            .into_par_iter()
            .map(|i| {
                let seed = args.seed.wrapping_add(i as u64);
                let r = random_instance(args, seed).and_then(|inst| evaluate(args.theorem, &inst, args, seed));
                trial_result(i, Some(seed), r)
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    let failures: Vec<Failure> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| Failure {
            index: r.index,
            seed: r.seed,
            reason: if r.degenerate {
                format!("degenerate: {}", r.values[0].1)
            } else {
                "mismatch".to_string()
            },
        })
        .collect();
    let report = VerifyReport {
        theorem: theorem_name(args.theorem).to_string(),
        trials: results.len(),
        passes: results.iter().filter(|r| r.passed).count(),
        failures,
        results,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("plain JSON values"));
    } else {
        print_report(&report);
    }
    let mismatch = report.results.iter().any(|r| !r.passed && !r.degenerate);
    let degenerate = report.results.iter().any(|r| r.degenerate);
    if mismatch {
        Ok(Status::Fail)
    } else if degenerate {
        Err(CliError::Degenerate(format!(
            "{} of {} trials were degenerate",
            report.failures.len(),
            report.trials
        )))
    } else {
        Ok(Status::Pass)
    }
}

fn print_report(r: &VerifyReport) {
    for t in &r.results {
        let seed = t.seed.map(|s| format!(" (seed {s})")).unwrap_or_default();
        let verdict = match (t.passed, t.degenerate) {
            (true, _) => "pass",
            (false, true) => "degenerate",
            (false, false) => "FAIL",
        };
        let values: Vec<String> = t.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        println!("trial {}{seed}: {verdict}; {}", t.index, values.join("; "));
    }
    println!(
        "{}: {} trials, passes={}, failures={}",
        r.theorem,
        r.trials,
        r.passes,
        r.failures.len()
    );
}

