use std::path::Path;

use pentagram_core::corrugated::orbit_m;
use pentagram_core::format::Instance;
use pentagram_core::lower1d::t1_orbit;
use pentagram_core::mirror::mp_orbit;
use pentagram_core::pentagram2d::orbit;
use pentagram_core::ProjPoint;

use super::read_instance;
use crate::error::{CliError, Status};
use crate::svg::{Figure, Frame};

fn row(points: &[ProjPoint]) -> String {
    points.iter().map(ProjPoint::to_text).collect::<Vec<_>>().join(" ")
}

fn all_same(points: &[ProjPoint]) -> Option<&ProjPoint> {
    points.iter().all(|p| *p == points[0]).then(|| &points[0])
}

pub fn run(input: &Path, steps: usize, svg: Option<&Path>) -> Result<Status, CliError> {
    let instance = read_instance(input)?;
    let (frames, summary) = match &instance {
        Instance::Polygon2(p) => {
            let orb = orbit(p, steps)?;
            let frames: Vec<Frame> = orb.iter().map(|q| Frame::polygon(q.vertices())).collect();
            let last = orb.last().expect("nonempty").vertices();
            for (k, q) in orb.iter().enumerate() {
                println!("step {k}: {}", row(q.vertices()));
            }
            (frames, all_same(last).map(|c| format!("all vertices = {c}")))
        }
        Instance::PolygonM(p) => {
            let orb = orbit_m(p, steps)?;
            for (k, q) in orb.iter().enumerate() {
                println!("step {k}: {}", row(q.vertices()));
            }
            let frames = orb.iter().map(|q| Frame::polygon(q.vertices())).collect();
            let last = orb.last().expect("nonempty").vertices();
            (frames, all_same(last).map(|c| format!("all vertices = {c}")))
        }
        Instance::Pair1(s) => {
            let orb = t1_orbit(s, steps)?;
            for (k, q) in orb.iter().enumerate() {
                println!("step {k}: {}", row(q.y()));
            }
            let frames = orb.iter().map(|q| Frame::line_points(q.y())).collect();
            let last = orb.last().expect("nonempty").y();
            (frames, all_same(last).map(|c| format!("all entries = {c}")))
        }
        Instance::Mirror(s) => {
            let orb = mp_orbit(s, steps)?;
            for (k, q) in orb.iter().enumerate() {
                println!("step {k}: {}", row(q.points()));
            }
            let frames = orb.iter().map(|q| Frame::mirror(q.points(), &q.reflected())).collect();
            let last = orb.last().expect("nonempty").points();
            (frames, all_same(last).map(|c| format!("all points = {c}")))
        }
    };
    if let Some(line) = &summary {
        println!("{line}");
    }
    if let Some(path) = svg {
        std::fs::write(path, Figure::new(frames).render())?;
    }
    Ok(Status::Pass)
}
