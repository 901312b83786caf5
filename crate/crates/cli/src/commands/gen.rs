use std::path::Path;

use pentagram_core::corrugated::random_axis_aligned_m;
use pentagram_core::format::Instance;
use pentagram_core::lower1d::{random_b, PairState1D};
use pentagram_core::mirror::{random_axis_aligned_mirror, random_mirror_pair};
use pentagram_core::pentagram2d::random_axis_aligned;

use crate::error::{CliError, Status};
use crate::MapKind;

pub fn generate(map: MapKind, n: usize, m: Option<usize>, seed: u64, range: i64) -> Result<Instance, CliError> {
    if map != MapKind::Corrugated && m.is_some() {
        return Err(CliError::usage("--m only applies to --map corrugated"));
    }
    Ok(match map {
        MapKind::Pent2d => Instance::Polygon2(random_axis_aligned(n, seed, range)?.polygon().clone()),
        MapKind::Corrugated => {
            let m = m.ok_or_else(|| CliError::usage("--map corrugated needs --m"))?;
            Instance::PolygonM(random_axis_aligned_m(m, n, seed, range)?.polygon().clone())
        }
        MapKind::Lower => Instance::Pair1(PairState1D::from_b(&random_b(n, seed, range)?)),
        MapKind::Mirror => Instance::Mirror(random_axis_aligned_mirror(n, seed, range)?.pair().clone()),
        MapKind::MirrorFree => Instance::Mirror(random_mirror_pair(n, seed, range)?),
    })
}

pub fn run(map: MapKind, n: usize, m: Option<usize>, seed: u64, range: i64, out: Option<&Path>) -> Result<Status, CliError> {
    let text = generate(map, n, m, seed, range)?.to_json()?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(Status::Pass)
}
