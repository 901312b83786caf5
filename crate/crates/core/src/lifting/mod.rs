//! Sequences of n points, their parallel lifts to R^n, and the flats and
//! skeleta used to explain why the mating process reproduces the orbits of
//! the pentagram-type maps.
//!
//! Everything is exact. A [`LiftReport`] gathers every check on one instance.

mod flat;
mod joint;
mod sequences;
mod skeleton;

pub use flat::{AffineFlat, Chart};
pub use joint::{
    canonical_lift_l0, centroid_coincidence_check, chart_for, find_lift, general_position_check, hyperplane_normal,
    parallel_lift, CentroidReport, Joint, LiftKind, Polyjoint, Prism,
};
pub use sequences::{
    build_a_sequences, family_starts, mating, mating_chain, mating_orbit_check, star, w1_family, Families,
    LiftSource, MatingReport, NPoint, Tag, Variant,
};
pub use skeleton::{
    collapse_line_check, cyclic_skeleton, flat_h, prisms_near, projected_slice, skeleton_recurrence_check,
    slice_report, slices_check, CollapseLineReport, CyclicSkeleton, SliceReport,
};

use crate::corrugated::center_of_mass_m;
use crate::error::Result;
use crate::linalg::{rank_of, Vector};
use crate::mirror::expected_mirror_collapse;
use crate::pentagram2d::center_of_mass_affine;
use crate::proj::{meet_coplanar_lines, ProjPoint};
use crate::rational::mean;

/// The point the common centroid should project to.
pub fn predicted_centroid(src: &LiftSource) -> Result<ProjPoint> {
    match src.normalized() {
        LiftSource::Planar(p) => center_of_mass_affine(p.polygon()),
        LiftSource::Corrugated(p) => center_of_mass_m(p.polygon()),
        LiftSource::Mirror(p) => Ok(expected_mirror_collapse(p.n(), mean(&p.xs()))),
    }
}

/// Checks on the lift of one family of sequences.
#[derive(Debug, Clone)]
pub struct FamilyLift {
    pub start: usize,
    pub kind: LiftKind,
    pub heights: Vec<Vector>,
    pub normals: Vec<Vector>,
    pub normal_rank: usize,
    pub general_position: bool,
    pub prisms_axis_parallel: bool,
    pub centroid: CentroidReport,
    pub recurrence: bool,
    /// Every `H_{g,k}` slices every prism `T_h` with `|h - k| <= g`.
    pub fully_sliced: bool,
    /// The projected slices reproduce the mating chain, stage by stage.
    pub slices_match_mating: bool,
    /// Slices of `H_{g+1,k}` are the mating of the slices of `H_{g,k-1}`
    /// and `H_{g,k+1}`.
    pub slices_closed_under_mating: bool,
    /// The projected slices do not depend on the prism used.
    pub prism_independence: bool,
    pub collapse: CollapseLineReport,
}

impl FamilyLift {
    pub fn passed(&self) -> bool {
        self.general_position
            && self.prisms_axis_parallel
            && self.centroid.passed()
            && self.recurrence
            && self.fully_sliced
            && self.slices_match_mating
            && self.slices_closed_under_mating
            && self.prism_independence
            && self.collapse.passed()
    }
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub variant: Variant,
    pub n: usize,
    pub mating: MatingReport,
    pub families: Vec<FamilyLift>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.mating.passed() && self.families.iter().all(FamilyLift::passed)
    }
}

/// Options for [`lift_check`].
#[derive(Debug, Clone, Copy)]
pub struct LiftOptions {
    pub families: Families,
    /// Seed for random heights when the canonical lift is not generic.
    pub seed: u64,
    pub attempts: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            families: Families::Sampled(0),
            seed: 0,
            attempts: 8,
        }
    }
}

fn same_set(a: &[ProjPoint], b: &[ProjPoint]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p)) && b.iter().all(|p| a.contains(p))
}

fn check_family(seqs: &[NPoint], start: usize, use_star: bool, expected: &ProjPoint, opts: &LiftOptions) -> Result<FamilyLift> {
    let chain = mating_chain(seqs, use_star)?;
    let pj = find_lift(seqs, opts.seed, opts.attempts)?;
    let joints = pj.joints();
    let count = joints.len();
    let normals = joints.iter().map(hyperplane_normal).collect::<Result<Vec<_>>>()?;
    let centroid = centroid_coincidence_check(&pj, expected);
    let mut recurrence = true;
    for h in pj.prism_labels() {
        recurrence &= skeleton_recurrence_check(&pj.prism(h)?)?;
    }

    let mut fully_sliced = true;
    let mut slices_match_mating = true;
    let mut prism_independence = true;
    // Projected slices of H_{g,k} against the nearest prism, by stage and element.
    let mut slices: Vec<Vec<Option<Vec<ProjPoint>>>> = Vec::new();
    for g in 1..=count {
        let mut row = Vec::new();
        for e in 0..=count - g {
            let k = g + 2 * e;
            let w = flat_h(g, k, joints)?;
            let mut reference: Option<Vec<ProjPoint>> = None;
            for h in prisms_near(&pj, g, k) {
                let report = slice_report(&w, &pj.prism(h)?)?;
                fully_sliced &= report.sliced();
                let Some(pts) = report.slice_points() else { continue };
                let projected: Vec<ProjPoint> = pts.iter().map(|p| pj.chart().apply_point(p)).collect();
                match &reference {
                    None => reference = Some(projected),
                    Some(r) => prism_independence &= same_set(r, &projected),
                }
            }
            let target = &chain[g - 1][e];
            slices_match_mating &= reference
                .as_ref()
                .is_some_and(|r| r[..target.len()] == *target.points());
            row.push(reference);
        }
        slices.push(row);
    }

    let mut slices_closed_under_mating = true;
    for g in 1..count {
        for e in 0..count - g {
            let (Some(x), Some(y), Some(z)) = (&slices[g - 1][e], &slices[g - 1][e + 1], &slices[g][e]) else {
                slices_closed_under_mating = false;
                continue;
            };
            let n = x.len();
            let len = chain[g][e].len();
            for p in 0..len {
                let q = (p + 1) % n;
                let ok = meet_coplanar_lines(&x[p], &x[q], &y[p], &y[q]).is_ok_and(|m| m == z[p]);
                slices_closed_under_mating &= ok;
            }
        }
    }

    let finals = chain.last().expect("nonempty")[0].points().to_vec();
    let collapse = collapse_line_check(&pj, &finals, &centroid.centroid)?;
    Ok(FamilyLift {
        start,
        kind: pj.kind(),
        heights: pj.heights().to_vec(),
        normal_rank: rank_of(&normals),
        normals,
        general_position: general_position_check(joints)?,
        prisms_axis_parallel: pj.prisms_axis_parallel()?,
        centroid,
        recurrence,
        fully_sliced,
        slices_match_mating,
        slices_closed_under_mating,
        prism_independence,
        collapse,
    })
}

/// Runs the mating chain against the orbit, then lifts each family of
/// sequences and checks the lifted picture against the chain.
pub fn lift_check(src: &LiftSource, variant: Variant, opts: &LiftOptions) -> Result<LiftReport> {
    let n = src.n();
    let mating = mating_orbit_check(src, variant, opts.families)?;
    let seqs = build_a_sequences(src, variant)?;
    let expected = predicted_centroid(src)?;
    let families = if variant == Variant::MirrorOdd {
        mating
            .families
            .iter()
            .map(|&l| check_family(&w1_family(&seqs, l), l, true, &expected, opts))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![check_family(&seqs, 1, false, &expected, opts)?]
    };
    Ok(LiftReport {
        variant,
        n,
        mating,
        families,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::{lift_from_p1, random_axis_aligned_mirror};
    use crate::pentagram2d::{random_axis_aligned, AxisAligned2};
    use crate::proj::{join_points, p1, p2q, ProjLine2};
    use crate::rational::{rat, ratio};

    fn hexagon() -> LiftSource {
        LiftSource::Planar(AxisAligned2::from_levels(vec![rat(0), rat(4), rat(1)], vec![rat(0), rat(2), rat(5)]).unwrap())
    }

    #[test]
    fn hexagon_lifts_to_two_planes() {
        let seqs = build_a_sequences(&hexagon(), Variant::Planar).unwrap();
        let pj = canonical_lift_l0(&seqs).unwrap();
        assert_eq!(pj.joints().len(), 2);
        assert_eq!(pj.n(), 3);
        assert!(general_position_check(pj.joints()).unwrap());
        assert_eq!(pj.joints()[0].points()[2], vec![rat(1), rat(5), rat(1)]);
        for (s, j) in seqs.iter().zip(pj.joints()) {
            for (p, q) in s.points().iter().zip(j.points()) {
                assert_eq!(&pj.chart().apply_point(q), p);
            }
        }
    }

    #[test]
    fn flat_lift_is_not_a_joint() {
        let src = LiftSource::Planar(random_axis_aligned(4, 2, 30).unwrap());
        let seqs = build_a_sequences(&src, Variant::Planar).unwrap();
        let zero = vec![vec![rat(0), rat(0)]; 4];
        assert_eq!(parallel_lift(&seqs, &zero).unwrap_err().root(), &crate::GeomError::NotAJoint);
        // Three points of R^3 still span a plane, but every joint spans the same one.
        let seqs = build_a_sequences(&hexagon(), Variant::Planar).unwrap();
        let pj = parallel_lift(&seqs, &vec![vec![rat(0)]; 3]).unwrap();
        assert!(!general_position_check(pj.joints()).unwrap());
    }

    #[test]
    fn hexagon_centroid() {
        let seqs = build_a_sequences(&hexagon(), Variant::Planar).unwrap();
        let pj = canonical_lift_l0(&seqs).unwrap();
        let r = centroid_coincidence_check(&pj, &p2q(5, 3, 7, 3));
        assert!(r.passed());
        assert_eq!(r.centroid, vec![ratio(5, 3), ratio(7, 3), ratio(1, 3)]);
    }

    #[test]
    fn hexagon_collapse_line() {
        let r = lift_check(&hexagon(), Variant::Planar, &LiftOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        let fam = &r.families[0];
        assert_eq!(fam.kind, LiftKind::Canonical);
        let line = ProjLine2::from_i64(25, 13, -72).unwrap();
        let on_line = [p2q(16, 7, 8, 7), p2q(-1, 2, 13, 2), p2q(4, 5, 4, 1), p2q(5, 3, 7, 3)];
        for p in &on_line {
            assert!(line.contains(p));
            assert!(fam.collapse.projected.contains(&p.to_affine().unwrap()));
        }
        let via_join = join_points(&on_line[0], &on_line[1]).unwrap();
        assert_eq!(via_join, line);
    }

    #[test]
    fn h22_slices_the_hexagon_prism() {
        let seqs = build_a_sequences(&hexagon(), Variant::Planar).unwrap();
        let pj = canonical_lift_l0(&seqs).unwrap();
        let h = flat_h(2, 2, pj.joints()).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(slices_check(&h, &pj.prism(2).unwrap()).unwrap());
        assert_eq!(flat_h(1, 1, pj.joints()).unwrap(), pj.joints()[0].hyperplane());
    }

    #[test]
    fn mirror_three_centroid() {
        let b: Vec<ProjPoint> = [1, 2, 6].iter().map(|&x| p1(x)).collect();
        let src = LiftSource::Mirror(lift_from_p1(&b).unwrap());
        assert_eq!(predicted_centroid(&src).unwrap(), p2q(3, 1, -1, 3));
        let r = lift_check(&src, Variant::MirrorOdd, &LiftOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        for fam in &r.families {
            assert_eq!(fam.centroid.projected, p2q(3, 1, -1, 3));
            assert!(fam.collapse.projected.contains(&[rat(3), ratio(-1, 3)]));
        }
    }

    #[test]
    fn planar_lifts_up_to_seven() {
        for n in 3..=7 {
            let src = LiftSource::Planar(random_axis_aligned(n, 500 + n as u64, 30).unwrap());
            let r = lift_check(&src, Variant::Planar, &LiftOptions::default()).unwrap();
            assert!(r.passed(), "n = {n}: {r:?}");
            assert_eq!(r.families[0].normal_rank, n - 1);
        }
    }

    #[test]
    fn mirror_lifts_both_parities() {
        for n in 3..=6 {
            let src = LiftSource::Mirror(random_axis_aligned_mirror(n, 70 + n as u64, 30).unwrap());
            let r = lift_check(&src, src.variant(), &LiftOptions::default()).unwrap();
            assert!(r.passed(), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn corrugated_lifts() {
        for (m, n) in [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (4, 3), (5, 3)] {
            let p = crate::corrugated::random_axis_aligned_m(m, n, 900 + (m * n) as u64, 30).unwrap();
            let r = lift_check(&LiftSource::Corrugated(p), Variant::Corrugated, &LiftOptions::default()).unwrap();
            assert!(r.passed(), "m = {m}, n = {n}: {r:?}");
        }
    }

    #[test]
    fn wide_corrugated_hull_is_reported() {
        let p = crate::corrugated::random_axis_aligned_m(5, 4, 3, 30).unwrap();
        let err = lift_check(&LiftSource::Corrugated(p), Variant::Corrugated, &LiftOptions::default()).unwrap_err();
        assert_eq!(err, crate::GeomError::HullTooLarge { dim: 5, n: 4 });
    }
}
