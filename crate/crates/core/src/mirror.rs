//! The mirror pentagram map on a family of points and its reflection in the
//! x-axis `l_0`.
//!
//! Only the family `P` is stored; `r(P)` is recomputed on demand. One step
//! sends `X` to `Q` with `Q_i = X_i r(X_{i+1}) ∩ X_{i-1} r(X_i)`.

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::lower1d::{t1_orbit, PairState1D};
use crate::proj::{join_points, meet_lines, project_vertical, reflect_r, ProjPoint};
use crate::rational::{mean, rat, Rational};
use crate::rng::{distinct_rationals, random_nonzero_rational, random_rational, seeded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorPair {
    p: Vec<ProjPoint>,
}

fn on_axis(p: &ProjPoint) -> bool {
    p.coords()[1].is_zero()
}

impl MirrorPair {
    /// Validates `n >= 3` points of the plane, none on `l_0`.
    pub fn new(p: Vec<ProjPoint>) -> Result<Self> {
        if p.len() < 3 {
            return Err(GeomError::InvalidInput("mirror pair needs n >= 3 points".into()));
        }
        for (i, q) in p.iter().enumerate() {
            q.check_dim(2)?;
            if on_axis(q) {
                return Err(GeomError::OnMirrorAxis.at_index(i));
            }
        }
        Ok(MirrorPair { p })
    }

    /// Iterates may land on `l_0` (the even collapse point does), so states
    /// produced by the maps skip validation.
    fn unchecked(p: Vec<ProjPoint>) -> Self {
        MirrorPair { p }
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.p
    }

    pub fn reflected(&self) -> Vec<ProjPoint> {
        self.p.iter().map(reflect_r).collect()
    }

    pub fn point(&self, i: i64) -> &ProjPoint {
        &self.p[i.rem_euclid(self.n() as i64) as usize]
    }

    pub fn all_equal(&self) -> bool {
        self.p.iter().all(|q| *q == self.p[0])
    }

    /// Vertical projections of all points.
    pub fn project(&self) -> Result<Vec<ProjPoint>> {
        self.p
            .iter()
            .enumerate()
            .map(|(i, q)| project_vertical(q).map_err(|e| e.at_index(i)))
            .collect()
    }

    pub fn reflect(&self) -> MirrorPair {
        MirrorPair::unchecked(self.reflected())
    }
}

fn meet_of_joins(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<ProjPoint> {
    meet_lines(&join_points(a, b)?, &join_points(c, d)?)
}

pub fn mp_step(s: &MirrorPair) -> Result<MirrorPair> {
    let q = (0..s.n() as i64)
        .map(|i| {
            meet_of_joins(s.point(i), &reflect_r(s.point(i + 1)), s.point(i - 1), &reflect_r(s.point(i)))
                .map_err(|e| e.at_index(i as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MirrorPair::unchecked(q))
}

/// `X_i = Q_i Q_{i+1} ∩ r(Q_{i-1}) r(Q_i)`.
pub fn mp_inverse(s: &MirrorPair) -> Result<MirrorPair> {
    let x = (0..s.n() as i64)
        .map(|i| {
            meet_of_joins(s.point(i), s.point(i + 1), &reflect_r(s.point(i - 1)), &reflect_r(s.point(i)))
                .map_err(|e| e.at_index(i as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MirrorPair::unchecked(x))
}

pub fn mp_orbit(s: &MirrorPair, steps: usize) -> Result<Vec<MirrorPair>> {
    let mut out = vec![s.clone()];
    for k in 1..=steps {
        let next = mp_step(out.last().expect("nonempty")).map_err(|e| e.at_step(k))?;
        out.push(next);
    }
    Ok(out)
}

/// A mirror pair whose points all lie on one horizontal line `y = c`,
/// `c != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisAlignedMirrorPair {
    pair: MirrorPair,
    level: Rational,
}

impl AxisAlignedMirrorPair {
    pub fn new(pair: MirrorPair) -> Result<Self> {
        let coords = pair
            .points()
            .iter()
            .map(ProjPoint::try_affine)
            .collect::<Result<Vec<_>>>()?;
        let level = coords[0][1].clone();
        if coords.iter().any(|c| c[1] != level) {
            return Err(GeomError::NotAxisAligned);
        }
        Ok(AxisAlignedMirrorPair { pair, level })
    }

    pub fn pair(&self) -> &MirrorPair {
        &self.pair
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn xs(&self) -> Vec<Rational> {
        self.pair
            .points()
            .iter()
            .map(|p| p.to_affine().expect("finite")[0].clone())
            .collect()
    }

    /// Rescales `y` so the points lie on `y = -1`.
    pub fn canonical(&self) -> AxisAlignedMirrorPair {
        let xs = self.xs();
        lift_from_p1(&xs.into_iter().map(ProjPoint::finite1).collect::<Vec<_>>()).expect("finite levels")
    }
}

/// `B_i -> (B_i, -1)`.
pub fn lift_from_p1(b: &[ProjPoint]) -> Result<AxisAlignedMirrorPair> {
    let pts = b
        .iter()
        .map(|q| {
            q.check_dim(1)?;
            let x = q.value().ok_or(GeomError::InfiniteVertex)?;
            Ok(ProjPoint::affine2(x, rat(-1)))
        })
        .collect::<Result<Vec<_>>>()?;
    AxisAlignedMirrorPair::new(MirrorPair::new(pts)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub k: usize,
    /// Entry `j - 1` compares `T_1^j` with the projected pair of mirror
    /// iterates `j - 1` and `j`.
    pub matches: Vec<bool>,
    pub all_match: bool,
}

/// Compares `T_1^j(p(MP^{-1} P), p(P))` with `(p(MP^{j-1} P), p(MP^j P))` for
/// `j = 1..=k`.
pub fn verify_correspondence(p: &MirrorPair, k: usize) -> Result<CorrespondenceReport> {
    let start = PairState1D::new(mp_inverse(p)?.project()?, p.project()?)?;
    let lower = t1_orbit(&start, k)?;
    let upper = mp_orbit(p, k)?;
    let projected = upper.iter().map(MirrorPair::project).collect::<Result<Vec<_>>>()?;
    let matches: Vec<bool> = (1..=k)
        .map(|j| lower[j].x() == projected[j - 1].as_slice() && lower[j].y() == projected[j].as_slice())
        .collect();
    Ok(CorrespondenceReport {
        k,
        all_match: matches.iter().all(|&b| b),
        matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorReport {
    pub steps_taken: usize,
    pub all_equal: bool,
    pub collapse_point: ProjPoint,
    pub mean_x: Rational,
    /// The projection of the collapse point is the mean of the x-levels.
    pub projection_matched: bool,
    /// `(C, 0)` for even `n`, `(C, -1/n)` for odd `n`.
    pub expected_point: ProjPoint,
    pub parity_matched: bool,
    /// `mp_inverse` undoes every step whose result is not yet collapsed.
    pub round_trips_ok: bool,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.all_equal && self.projection_matched && self.parity_matched && self.round_trips_ok
    }
}

pub fn expected_mirror_collapse(n: usize, c: Rational) -> ProjPoint {
    let y = if n.is_multiple_of(2) {
        rat(0)
    } else {
        Rational::new((-1).into(), (n as i64).into())
    };
    ProjPoint::affine2(c, y)
}

/// Runs `n - 1` mirror steps on the canonical form of `p`.
pub fn verify_mirror_collapse(p: &AxisAlignedMirrorPair) -> Result<MirrorReport> {
    let canon = p.canonical();
    let n = canon.n();
    let orb = mp_orbit(canon.pair(), n - 1)?;
    let mut round_trips_ok = true;
    for j in 0..n - 2 {
        let back = mp_inverse(&orb[j + 1]).map_err(|e| e.at_step(j + 1))?;
        round_trips_ok &= back == orb[j];
    }
    let last = &orb[n - 1];
    let all_equal = last.all_equal();
    let collapse_point = last.points()[0].clone();
    let mean_x = mean(&canon.xs());
    let projection_matched = project_vertical(&collapse_point)? == ProjPoint::finite1(mean_x.clone());
    let expected_point = expected_mirror_collapse(n, mean_x.clone());
    Ok(MirrorReport {
        steps_taken: n - 1,
        all_equal,
        parity_matched: all_equal && collapse_point == expected_point,
        collapse_point,
        mean_x,
        projection_matched,
        expected_point,
        round_trips_ok,
    })
}

/// Canonical axis-aligned pair on `y = -1` with distinct x-levels.
pub fn random_axis_aligned_mirror(n: usize, seed: u64, range: i64) -> Result<AxisAlignedMirrorPair> {
    if n < 3 || range < 1 {
        return Err(GeomError::InvalidInput("need n >= 3 and range >= 1".into()));
    }
    let xs = distinct_rationals(&mut seeded(seed), n, range).ok_or(GeomError::ExhaustedSampling)?;
    lift_from_p1(&xs.into_iter().map(ProjPoint::finite1).collect::<Vec<_>>())
}

const SAMPLING_BUDGET: usize = 64;

/// Points off `l_0` with pairwise distinct coordinates, so that the
/// construction lines are generically well defined.
pub fn random_mirror_pair(n: usize, seed: u64, range: i64) -> Result<MirrorPair> {
    if n < 3 || range < 1 {
        return Err(GeomError::InvalidInput("need n >= 3 and range >= 1".into()));
    }
    let mut rng = seeded(seed);
    for _ in 0..SAMPLING_BUDGET {
        let pts: Vec<ProjPoint> = (0..n)
            .map(|_| ProjPoint::affine2(random_rational(&mut rng, range), random_nonzero_rational(&mut rng, range)))
            .collect();
        let distinct = (0..n).all(|i| (0..i).all(|j| pts[i] != pts[j] && pts[i] != reflect_r(&pts[j])));
        if distinct {
            return MirrorPair::new(pts);
        }
    }
    Err(GeomError::ExhaustedSampling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{p1, p1q, p2, p2q};

    fn example() -> MirrorPair {
        MirrorPair::new(vec![p2(1, -1), p2(2, -1), p2(6, -1)]).unwrap()
    }

    #[test]
    fn first_and_second_step() {
        let q = mp_step(&example()).unwrap();
        assert_eq!(q.points(), &[p2q(11, 6, 2, 3), p2q(2, 3, -5, 3), p2q(34, 9, -1, 9)]);
        let q2 = mp_step(&q).unwrap();
        assert!(q2.points().iter().all(|x| *x == p2q(3, 1, -1, 3)));
    }

    #[test]
    fn reflected_family_follows_automatically() {
        let p = example();
        let q = mp_step(&p).unwrap();
        for i in 0..3i64 {
            let rq = meet_of_joins(&reflect_r(p.point(i)), p.point(i + 1), &reflect_r(p.point(i - 1)), p.point(i)).unwrap();
            assert_eq!(rq, reflect_r(q.point(i)));
        }
        assert_eq!(mp_step(&p.reflect()).unwrap(), q.reflect());
    }

    #[test]
    fn inverse_round_trips() {
        let p = example();
        assert_eq!(mp_inverse(&mp_step(&p).unwrap()).unwrap(), p);
        let g = random_mirror_pair(5, 3, 9).unwrap();
        assert_eq!(mp_step(&mp_inverse(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn inverse_of_aligned_pair_is_horizontal_infinity() {
        let h = ProjPoint::from_i64(&[1, 0, 0]).unwrap();
        assert!(mp_inverse(&example()).unwrap().points().iter().all(|x| *x == h));
    }

    #[test]
    fn points_on_the_axis_are_rejected() {
        let r = MirrorPair::new(vec![p2(1, 0), p2(2, -1), p2(3, 1)]);
        assert!(matches!(r.unwrap_err().root(), GeomError::OnMirrorAxis));
    }

    #[test]
    fn lift_projects_back() {
        let b = vec![p1(1), p1(2), p1(6)];
        let l = lift_from_p1(&b).unwrap();
        assert_eq!(l.pair(), &example());
        assert_eq!(l.pair().project().unwrap(), b);
    }

    #[test]
    fn correspondence_on_example() {
        let r = verify_correspondence(&example(), 2).unwrap();
        assert!(r.all_match);
        let q = mp_step(&example()).unwrap();
        assert_eq!(q.project().unwrap(), vec![p1q(11, 6), p1q(2, 3), p1q(34, 9)]);
        let g = random_mirror_pair(4, 8, 9).unwrap();
        assert!(verify_correspondence(&g, 2).unwrap().all_match);
    }

    #[test]
    fn collapse_and_parity() {
        let r = verify_mirror_collapse(&AxisAlignedMirrorPair::new(example()).unwrap()).unwrap();
        assert_eq!(r.collapse_point, p2q(3, 1, -1, 3));
        assert!(r.passed());
        let even = random_axis_aligned_mirror(4, 2, 10).unwrap();
        let r = verify_mirror_collapse(&even).unwrap();
        assert!(r.passed());
        assert!(r.collapse_point.coords()[1].is_zero());
    }

    #[test]
    fn canonical_rescaling() {
        let p = AxisAlignedMirrorPair::new(MirrorPair::new(vec![p2(1, 3), p2(2, 3), p2(6, 3)]).unwrap()).unwrap();
        assert_eq!(p.level(), &rat(3));
        assert_eq!(p.canonical().pair(), &example());
    }
}
