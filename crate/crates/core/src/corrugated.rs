//! Corrugated polygons in P^m and the map intersecting successive
//! m-diagonals.
//!
//! Vertex `t` carries label `offset + t m` modulo `m * count`. The diagonal
//! `V_t V_{t+m}` and its successor `V_{t+1} V_{t+m+1}` lie in a plane when the
//! polygon is corrugated, and their meet becomes output vertex `t`. Its label
//! is the average of the four parent labels, so the offset advances by
//! `(m^2 + m) / 2` per step.

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::linalg::{rank_of, Matrix};
use crate::pentagram2d::affine_mean;
use crate::proj::{meet_coplanar_lines, ProjPoint};
use crate::rational::Rational;
use crate::rng::{random_nonzero_rational, random_rational, seeded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonM {
    m: usize,
    vertices: Vec<ProjPoint>,
    label_offset: i64,
}

impl PolygonM {
    pub fn new(m: usize, vertices: Vec<ProjPoint>, label_offset: i64) -> Result<Self> {
        if m < 2 {
            return Err(GeomError::InvalidInput("ambient dimension must be at least 2".into()));
        }
        if vertices.len() < 4 {
            return Err(GeomError::InvalidInput("polygon needs at least 4 vertices".into()));
        }
        for v in &vertices {
            v.check_dim(m)?;
        }
        let k = vertices.len();
        for i in 0..k {
            if vertices[i] == vertices[(i + 1) % k] {
                return Err(GeomError::Coincident.at_index(i));
            }
        }
        let period = (m * k) as i64;
        Ok(PolygonM {
            m,
            vertices,
            label_offset: label_offset.rem_euclid(period),
        })
    }

    /// Labels `1, m + 1, 2m + 1, ...`.
    pub fn with_standard_labels(m: usize, vertices: Vec<ProjPoint>) -> Result<Self> {
        Self::new(m, vertices, 1)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn vertex(&self, t: i64) -> &ProjPoint {
        &self.vertices[t.rem_euclid(self.count() as i64) as usize]
    }

    pub fn label_offset(&self) -> i64 {
        self.label_offset
    }

    pub fn period(&self) -> i64 {
        (self.m * self.count()) as i64
    }

    pub fn label(&self, t: usize) -> i64 {
        (self.label_offset + (t * self.m) as i64).rem_euclid(self.period())
    }

    pub fn by_label(&self, label: i64) -> Option<&ProjPoint> {
        let d = (label - self.label_offset).rem_euclid(self.period());
        (d % self.m as i64 == 0).then(|| &self.vertices[(d / self.m as i64) as usize])
    }

    pub fn all_equal(&self) -> bool {
        self.vertices.iter().all(|v| *v == self.vertices[0])
    }
}

fn quad_rank(v: &PolygonM, i: i64) -> usize {
    let m = v.m as i64;
    let rows: Vec<Vec<Rational>> = [i, i + 1, i + m, i + m + 1]
        .iter()
        .map(|&t| v.vertex(t).homogeneous())
        .collect();
    rank_of(&rows)
}

/// Every quadruple `V_i, V_{i+1}, V_{i+m}, V_{i+m+1}` spans a plane.
pub fn is_corrugated(v: &PolygonM) -> bool {
    (0..v.count() as i64).all(|i| quad_rank(v, i) == 3)
}

pub fn corrugated_step(v: &PolygonM) -> Result<PolygonM> {
    let m = v.m as i64;
    let shift = (m * m + m) / 2;
    let offset = v.label_offset + shift;
    let vertices = (0..v.count() as i64)
        .map(|t| {
            meet_coplanar_lines(v.vertex(t), v.vertex(t + m), v.vertex(t + 1), v.vertex(t + m + 1))
                .map_err(|e| e.at_index(t as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolygonM {
        m: v.m,
        vertices,
        label_offset: offset.rem_euclid(v.period()),
    })
}

pub fn orbit_m(v: &PolygonM, steps: usize) -> Result<Vec<PolygonM>> {
    let mut out = vec![v.clone()];
    for s in 1..=steps {
        let next = corrugated_step(out.last().expect("nonempty")).map_err(|e| e.at_step(s))?;
        out.push(next);
    }
    Ok(out)
}

pub fn center_of_mass_m(v: &PolygonM) -> Result<ProjPoint> {
    affine_mean(v.vertices())
}

/// An `mn`-gon in R^m whose edge `e` (from vertex `e` to `e + 1`) is parallel
/// to coordinate axis `e mod m`. `steps[j]` lists the signed lengths of the
/// `n` edges along axis `j`, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisAlignedM {
    polygon: PolygonM,
    steps: Vec<Vec<Rational>>,
}

impl AxisAlignedM {
    pub fn from_steps(base: Vec<Rational>, steps: Vec<Vec<Rational>>) -> Result<Self> {
        let m = base.len();
        if m < 2 || steps.len() != m {
            return Err(GeomError::InvalidInput("need one step list per axis, m >= 2".into()));
        }
        let n = steps[0].len();
        if n < 2 || steps.iter().any(|s| s.len() != n) {
            return Err(GeomError::InvalidInput("need n >= 2 steps on every axis".into()));
        }
        for s in &steps {
            if s.iter().any(Zero::is_zero) {
                return Err(GeomError::InvalidInput("zero edge length".into()));
            }
            if !s.iter().sum::<Rational>().is_zero() {
                return Err(GeomError::InvalidInput("steps along an axis must sum to zero".into()));
            }
        }
        let mut cur = base;
        let mut vertices = Vec::with_capacity(m * n);
        for e in 0..m * n {
            vertices.push(ProjPoint::affine(&cur));
            cur[e % m] += &steps[e % m][e / m];
        }
        for i in 0..vertices.len() {
            if (0..i).any(|j| vertices[j] == vertices[i]) {
                return Err(GeomError::Coincident.at_index(i));
            }
        }
        let polygon = PolygonM::with_standard_labels(m, vertices)?;
        Ok(AxisAlignedM { polygon, steps })
    }

    /// Recovers the steps of a finite polygon with the axis pattern.
    pub fn from_polygon(p: &PolygonM) -> Result<Self> {
        let m = p.m();
        let count = p.count();
        if !count.is_multiple_of(m) {
            return Err(GeomError::NotAxisAligned);
        }
        let pts = p
            .vertices()
            .iter()
            .map(ProjPoint::try_affine)
            .collect::<Result<Vec<_>>>()?;
        let mut steps = vec![Vec::new(); m];
        for e in 0..count {
            let (a, b) = (&pts[e], &pts[(e + 1) % count]);
            for j in 0..m {
                if j != e % m && a[j] != b[j] {
                    return Err(GeomError::NotAxisAligned);
                }
            }
            steps[e % m].push(&b[e % m] - &a[e % m]);
        }
        let rebuilt = Self::from_steps(pts[0].clone(), steps).map_err(|_| GeomError::NotAxisAligned)?;
        Ok(AxisAlignedM {
            polygon: PolygonM::new(m, p.vertices().to_vec(), p.label_offset())?,
            ..rebuilt
        })
    }

    pub fn polygon(&self) -> &PolygonM {
        &self.polygon
    }

    pub fn m(&self) -> usize {
        self.polygon.m()
    }

    pub fn n(&self) -> usize {
        self.steps[0].len()
    }

    pub fn steps(&self) -> &[Vec<Rational>] {
        &self.steps
    }
}

const SAMPLING_BUDGET: usize = 64;

pub fn random_axis_aligned_m(m: usize, n: usize, seed: u64, range: i64) -> Result<AxisAlignedM> {
    if m < 2 || n < 2 || range < 1 {
        return Err(GeomError::InvalidInput("need m >= 2, n >= 2, range >= 1".into()));
    }
    let mut rng = seeded(seed);
    for _ in 0..SAMPLING_BUDGET {
        let base: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng, range)).collect();
        let steps: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                let mut s: Vec<Rational> = (0..n - 1).map(|_| random_nonzero_rational(&mut rng, range)).collect();
                let total: Rational = s.iter().sum();
                s.push(-total);
                s
            })
            .collect();
        if let Ok(p) = AxisAlignedM::from_steps(base, steps) {
            if is_corrugated(p.polygon()) {
                return Ok(p);
            }
        }
    }
    Err(GeomError::ExhaustedSampling)
}

/// Status of one iterate in a collapse run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepCertificate {
    Corrugated,
    /// Every vertex is the same point.
    Collapsed,
    NotCorrugated,
}

pub fn certify(v: &PolygonM) -> StepCertificate {
    if v.all_equal() {
        StepCertificate::Collapsed
    } else if is_corrugated(v) {
        StepCertificate::Corrugated
    } else {
        StepCertificate::NotCorrugated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReportM {
    pub steps_taken: usize,
    pub collapse_point: ProjPoint,
    pub centroid: ProjPoint,
    pub all_equal: bool,
    pub matched: bool,
    /// One entry per iterate `T_m^1, ..., T_m^{n-1}`.
    pub corrugated_certificates: Vec<StepCertificate>,
}

impl CollapseReportM {
    /// Every iterate before the last is corrugated and the last has
    /// collapsed.
    pub fn certificates_ok(&self) -> bool {
        let k = self.corrugated_certificates.len();
        self.corrugated_certificates.iter().enumerate().all(|(i, c)| {
            if i + 1 == k {
                *c == StepCertificate::Collapsed
            } else {
                *c == StepCertificate::Corrugated
            }
        })
    }
}

pub fn collapse_orbit_m(p: &AxisAlignedM) -> Result<CollapseReportM> {
    let n = p.n();
    let centroid = center_of_mass_m(p.polygon())?;
    let orb = orbit_m(p.polygon(), n - 1)?;
    let corrugated_certificates = orb[1..].iter().map(certify).collect();
    let last = &orb[n - 1];
    let all_equal = last.all_equal();
    let collapse_point = last.vertices()[0].clone();
    Ok(CollapseReportM {
        steps_taken: n - 1,
        matched: all_equal && collapse_point == centroid,
        collapse_point,
        centroid,
        all_equal,
        corrugated_certificates,
    })
}

/// True when every edge direction has a single nonzero coordinate at
/// position `e mod m`.
pub fn has_axis_structure(p: &PolygonM) -> bool {
    let Some(pts) = p.vertices().iter().map(ProjPoint::to_affine).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let (m, k) = (p.m(), p.count());
    (0..k).all(|e| {
        let d: Vec<Rational> = (0..m).map(|j| &pts[(e + 1) % k][j] - &pts[e][j]).collect();
        (0..m).all(|j| d[j].is_zero() != (j == e % m))
    })
}

/// The `(m+1) x count` matrix of homogeneous coordinates, one column per
/// vertex. Used for dimension diagnostics.
pub fn vertex_matrix(p: &PolygonM) -> Matrix {
    Matrix::from_cols(&p.vertices().iter().map(ProjPoint::homogeneous).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagram2d::{pentagram_step, LabeledPolygon2};
    use crate::proj::p2;
    use crate::rational::{rat, ratio};

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::affine(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn planar_polygons_are_corrugated() {
        let v = PolygonM::with_standard_labels(2, vec![p2(0, 0), p2(4, 0), p2(4, 2), p2(1, 2), p2(1, 5), p2(0, 5)]).unwrap();
        assert!(is_corrugated(&v));
    }

    #[test]
    fn generic_space_polygon_is_not_corrugated() {
        let v = PolygonM::with_standard_labels(
            3,
            vec![
                pt(&[0, 0, 0]),
                pt(&[3, 1, 0]),
                pt(&[1, 4, 2]),
                pt(&[-2, 5, 7]),
                pt(&[1, -3, 4]),
                pt(&[6, 2, -1]),
                pt(&[0, 9, 3]),
                pt(&[-4, -4, 1]),
                pt(&[2, 7, 11]),
            ],
        )
        .unwrap();
        assert!(!is_corrugated(&v));
        assert!(corrugated_step(&v).is_err());
    }

    #[test]
    fn m2_step_matches_planar_map_by_label() {
        let verts = vec![p2(0, 0), p2(4, 0), p2(4, 2), p2(1, 2), p2(1, 5), p2(0, 5)];
        let planar = pentagram_step(&LabeledPolygon2::with_odd_labels(verts.clone()).unwrap()).unwrap();
        let corr = corrugated_step(&PolygonM::with_standard_labels(2, verts).unwrap()).unwrap();
        for t in 0..corr.count() {
            assert_eq!(planar.by_label(corr.label(t)), Some(&corr.vertices()[t]));
        }
    }

    #[test]
    fn symmetric_hexagon_in_space_collapses_to_center() {
        let steps = vec![vec![rat(2), rat(-2)], vec![rat(3), rat(-3)], vec![ratio(1, 2), ratio(-1, 2)]];
        let p = AxisAlignedM::from_steps(vec![rat(0), rat(0), rat(0)], steps).unwrap();
        let out = corrugated_step(p.polygon()).unwrap();
        let center = ProjPoint::affine(&[rat(1), ratio(3, 2), ratio(1, 4)]);
        assert!(out.vertices().iter().all(|v| *v == center));
        assert_eq!(center_of_mass_m(p.polygon()).unwrap(), center);
    }

    #[test]
    fn label_shift_per_step() {
        let p = random_axis_aligned_m(3, 3, 5, 6).unwrap();
        let t = corrugated_step(p.polygon()).unwrap();
        assert_eq!(p.polygon().label(0), 1);
        assert_eq!(t.label(0), 7);
    }

    #[test]
    fn seeded_instances_collapse() {
        for (m, n) in [(3, 2), (3, 3), (4, 3), (2, 3)] {
            let p = random_axis_aligned_m(m, n, 11, 8).unwrap();
            assert!(has_axis_structure(p.polygon()));
            let r = collapse_orbit_m(&p).unwrap();
            assert!(r.matched, "m={m} n={n}");
            assert!(r.certificates_ok(), "m={m} n={n}: {:?}", r.corrugated_certificates);
        }
    }

    #[test]
    fn generation_is_deterministic_and_round_trips() {
        let a = random_axis_aligned_m(3, 4, 2, 9).unwrap();
        assert_eq!(a, random_axis_aligned_m(3, 4, 2, 9).unwrap());
        assert!(is_corrugated(a.polygon()));
        assert_eq!(AxisAlignedM::from_polygon(a.polygon()).unwrap(), a);
    }

    #[test]
    fn bad_steps_are_rejected() {
        let r = AxisAlignedM::from_steps(vec![rat(0), rat(0)], vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]]);
        assert!(r.is_err());
    }
}
