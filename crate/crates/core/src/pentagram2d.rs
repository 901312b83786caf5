//! The pentagram map on closed polygons of the plane.
//!
//! A polygon with `2n` vertices carries labels of one parity modulo `4n`:
//! vertex `k` has label `offset + 2k`, and the labels of the other parity name
//! the edges. A step produces the polygon of the other parity whose vertex
//! `Q_i` is the meet of the diagonals `P_{i-1} P_{i+3}` and `P_{i-3} P_{i+1}`.

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::linalg::Matrix;
use crate::proj::{axes_normalization_map, join_points, meet_lines, ProjLine2, ProjMap, ProjPoint};
use crate::rational::{mean, rat, Rational};
use crate::rng::{distinct_rationals, seeded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPolygon2 {
    vertices: Vec<ProjPoint>,
    label_offset: i64,
}

impl LabeledPolygon2 {
    /// Validates a polygon with an even number (at least 4) of distinct
    /// consecutive vertices.
    pub fn new(vertices: Vec<ProjPoint>, label_offset: i64) -> Result<Self> {
        if vertices.len() < 4 || !vertices.len().is_multiple_of(2) {
            return Err(GeomError::InvalidInput(format!(
                "polygon needs an even vertex count of at least 4, got {}",
                vertices.len()
            )));
        }
        for v in &vertices {
            v.check_dim(2)?;
        }
        let k = vertices.len();
        for i in 0..k {
            if vertices[i] == vertices[(i + 1) % k] {
                return Err(GeomError::Coincident.at_index(i));
            }
        }
        Ok(LabeledPolygon2 {
            vertices,
            label_offset: label_offset.rem_euclid(4 * (k / 2) as i64),
        })
    }

    /// Polygon with odd labels `1, 3, 5, ...`.
    pub fn with_odd_labels(vertices: Vec<ProjPoint>) -> Result<Self> {
        Self::new(vertices, 1)
    }

    /// Half the vertex count.
    pub fn n(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn vertex(&self, k: i64) -> &ProjPoint {
        &self.vertices[k.rem_euclid(self.len() as i64) as usize]
    }

    pub fn label_offset(&self) -> i64 {
        self.label_offset
    }

    pub fn period(&self) -> i64 {
        4 * self.n() as i64
    }

    pub fn label(&self, k: usize) -> i64 {
        (self.label_offset + 2 * k as i64).rem_euclid(self.period())
    }

    /// The vertex carrying `label`, if the label has this polygon's parity.
    pub fn by_label(&self, label: i64) -> Option<&ProjPoint> {
        let d = (label - self.label_offset).rem_euclid(self.period());
        (d % 2 == 0).then(|| &self.vertices[(d / 2) as usize])
    }

    pub fn all_equal(&self) -> bool {
        self.vertices.iter().all(|v| *v == self.vertices[0])
    }

    pub fn map(&self, phi: &ProjMap) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| phi.apply(v))
            .collect::<Result<_>>()?;
        Ok(LabeledPolygon2 {
            vertices,
            label_offset: self.label_offset,
        })
    }

    /// Lines through consecutive vertices, edge `k` joining vertex `k` and
    /// `k + 1`.
    pub fn edge_lines(&self) -> Result<Vec<ProjLine2>> {
        (0..self.len())
            .map(|k| join_points(self.vertex(k as i64), self.vertex(k as i64 + 1)).map_err(|e| e.at_index(k)))
            .collect()
    }
}

/// One step of the pentagram map.
pub fn pentagram_step(p: &LabeledPolygon2) -> Result<LabeledPolygon2> {
    let offset = p.label_offset + 1;
    let vertices = (0..p.len() as i64)
        .map(|k| {
            let label = offset + 2 * k;
            let d1 = join_points(p.vertex(k), p.vertex(k + 2));
            let d2 = join_points(p.vertex(k - 1), p.vertex(k + 1));
            d1.and_then(|d1| meet_lines(&d1, &d2?))
                .map_err(|e| e.at_label(label.rem_euclid(p.period())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LabeledPolygon2 {
        vertices,
        label_offset: offset.rem_euclid(p.period()),
    })
}

/// `T^0(P), T^1(P), ..., T^steps(P)`.
pub fn orbit(p: &LabeledPolygon2, steps: usize) -> Result<Vec<LabeledPolygon2>> {
    let mut out = vec![p.clone()];
    for s in 1..=steps {
        let next = pentagram_step(out.last().expect("nonempty")).map_err(|e| e.at_step(s))?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignMode {
    Affine,
    Projective,
}

fn is_horizontal(a: &[Rational], b: &[Rational]) -> bool {
    a[1] == b[1] && a[0] != b[0]
}

fn is_vertical(a: &[Rational], b: &[Rational]) -> bool {
    a[0] == b[0] && a[1] != b[1]
}

/// The common points of the two alternate edge families, the family of edge
/// `0` first. `None` if either family fails to be concurrent.
pub fn concurrency_points(p: &LabeledPolygon2) -> Option<(ProjPoint, ProjPoint)> {
    let lines = p.edge_lines().ok()?;
    let family = |start: usize| -> Option<ProjPoint> {
        let fam: Vec<&ProjLine2> = lines.iter().skip(start).step_by(2).collect();
        let c = meet_lines(fam[0], fam[1]).ok()?;
        fam.iter().all(|l| l.contains(&c)).then_some(c)
    };
    Some((family(0)?, family(1)?))
}

pub fn is_axis_aligned(p: &LabeledPolygon2, mode: AlignMode) -> bool {
    match mode {
        AlignMode::Affine => {
            let Some(pts) = p.vertices.iter().map(ProjPoint::to_affine).collect::<Option<Vec<_>>>() else {
                return false;
            };
            let k = pts.len();
            let phase = |first_horizontal: bool| {
                (0..k).all(|i| {
                    let (a, b) = (&pts[i], &pts[(i + 1) % k]);
                    if (i % 2 == 0) == first_horizontal {
                        is_horizontal(a, b)
                    } else {
                        is_vertical(a, b)
                    }
                })
            };
            phase(true) || phase(false)
        }
        AlignMode::Projective => concurrency_points(p).is_some_and(|(a, b)| a != b),
    }
}

pub fn center_of_mass_affine(p: &LabeledPolygon2) -> Result<ProjPoint> {
    affine_mean(p.vertices())
}

pub(crate) fn affine_mean(points: &[ProjPoint]) -> Result<ProjPoint> {
    let coords = points
        .iter()
        .map(|v| v.try_affine())
        .collect::<Result<Vec<_>>>()?;
    let m = coords[0].len();
    let centroid: Vec<Rational> = (0..m)
        .map(|j| mean(&coords.iter().map(|c| c[j].clone()).collect::<Vec<_>>()))
        .collect();
    Ok(ProjPoint::affine(&centroid))
}

/// Center of mass of a projectively axis-aligned polygon: average in a chart
/// where the edges are parallel to the axes, then pull back.
pub fn center_of_mass_projective(p: &LabeledPolygon2) -> Result<ProjPoint> {
    let (h, v) = concurrency_points(p).ok_or(GeomError::NotAxisAligned)?;
    let phi = axes_normalization_map(&h, &v)?;
    center_of_mass_with(p, &phi)
}

/// Same as [`center_of_mass_projective`] with a caller-supplied chart. The
/// chart must send both concurrency points to the line at infinity.
pub fn center_of_mass_with(p: &LabeledPolygon2, phi: &ProjMap) -> Result<ProjPoint> {
    let (h, v) = concurrency_points(p).ok_or(GeomError::NotAxisAligned)?;
    if h == v {
        return Err(GeomError::DegenerateJoin);
    }
    if phi.apply(&h)?.is_finite() || phi.apply(&v)?.is_finite() {
        return Err(GeomError::InvalidInput("chart does not send the edge directions to infinity".into()));
    }
    let image = p.map(phi)?;
    phi.inverse().apply(&affine_mean(image.vertices())?)
}

/// A polygon whose edges alternate horizontal and vertical, the first edge
/// horizontal. Vertex `2j` is `(a_j, b_j)` and vertex `2j + 1` is
/// `(a_{j+1}, b_j)`, indices mod n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisAligned2 {
    polygon: LabeledPolygon2,
    a: Vec<Rational>,
    b: Vec<Rational>,
}

fn all_distinct(v: &[Rational]) -> bool {
    (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j]))
}

impl AxisAligned2 {
    pub fn from_levels(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        let n = a.len();
        if n < 2 || b.len() != n {
            return Err(GeomError::InvalidInput("need n >= 2 levels on each axis".into()));
        }
        if !all_distinct(&a) || !all_distinct(&b) {
            return Err(GeomError::Coincident);
        }
        let mut vertices = Vec::with_capacity(2 * n);
        for j in 0..n {
            vertices.push(ProjPoint::affine2(a[j].clone(), b[j].clone()));
            vertices.push(ProjPoint::affine2(a[(j + 1) % n].clone(), b[j].clone()));
        }
        let polygon = LabeledPolygon2::with_odd_labels(vertices)?;
        Ok(AxisAligned2 { polygon, a, b })
    }

    /// Recovers the levels of an affine polygon whose first edge is
    /// horizontal and whose edges alternate.
    pub fn from_polygon(p: &LabeledPolygon2) -> Result<Self> {
        let pts = p
            .vertices()
            .iter()
            .map(ProjPoint::try_affine)
            .collect::<Result<Vec<_>>>()?;
        let n = p.n();
        let a: Vec<Rational> = (0..n).map(|j| pts[2 * j][0].clone()).collect();
        let b: Vec<Rational> = (0..n).map(|j| pts[2 * j][1].clone()).collect();
        let rebuilt = Self::from_levels(a, b).map_err(|_| GeomError::NotAxisAligned)?;
        if rebuilt.polygon.vertices() != p.vertices() {
            return Err(GeomError::NotAxisAligned);
        }
        Ok(AxisAligned2 {
            polygon: LabeledPolygon2::new(p.vertices().to_vec(), p.label_offset())?,
            ..rebuilt
        })
    }

    pub fn polygon(&self) -> &LabeledPolygon2 {
        &self.polygon
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }
}

const SAMPLING_BUDGET: usize = 64;

/// A seeded axis-aligned `2n`-gon with levels drawn as small rationals.
pub fn random_axis_aligned(n: usize, seed: u64, range: i64) -> Result<AxisAligned2> {
    if n < 2 || range < n as i64 {
        return Err(GeomError::InvalidInput("need n >= 2 and range >= n".into()));
    }
    let mut rng = seeded(seed);
    for _ in 0..SAMPLING_BUDGET {
        let (Some(a), Some(b)) = (
            distinct_rationals(&mut rng, n, range),
            distinct_rationals(&mut rng, n, range),
        ) else {
            continue;
        };
        if let Ok(p) = AxisAligned2::from_levels(a, b) {
            if is_axis_aligned(p.polygon(), AlignMode::Affine) {
                return Ok(p);
            }
        }
    }
    Err(GeomError::ExhaustedSampling)
}

/// The stage `T^{n-2}(P)`, where the vertices at even positions and those at
/// odd positions each lie on a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLineStage {
    pub lines: (ProjLine2, ProjLine2),
    /// Both position classes are collinear.
    pub alternation: bool,
    /// Both lines pass through the centroid.
    pub through_centroid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport2 {
    pub steps_taken: usize,
    pub two_line_stage: TwoLineStage,
    pub all_equal: bool,
    pub collapse_point: ProjPoint,
    pub centroid: ProjPoint,
    pub matched: bool,
}

/// The line through a set of points, if they are collinear and not all
/// equal.
pub fn common_line(points: &[&ProjPoint]) -> Result<Option<ProjLine2>> {
    let first = points[0];
    let Some(other) = points.iter().find(|p| **p != first) else {
        return Err(GeomError::DegenerateJoin);
    };
    let line = join_points(first, other)?;
    Ok(points.iter().all(|p| line.contains(p)).then_some(line))
}

pub(crate) fn two_line_stage(poly: &LabeledPolygon2, centroid: &ProjPoint) -> Result<TwoLineStage> {
    let class = |start: usize| -> Vec<&ProjPoint> { poly.vertices().iter().skip(start).step_by(2).collect() };
    let (even, odd) = (class(0), class(1));
    let le = common_line(&even)?;
    let lo = common_line(&odd)?;
    let alternation = le.is_some() && lo.is_some();
    let fallback = |pts: &[&ProjPoint]| join_points(pts[0], pts.iter().find(|p| **p != pts[0]).expect("checked"));
    let le = match le {
        Some(l) => l,
        None => fallback(&even)?,
    };
    let lo = match lo {
        Some(l) => l,
        None => fallback(&odd)?,
    };
    let through_centroid = le.contains(centroid) && lo.contains(centroid);
    Ok(TwoLineStage {
        lines: (le, lo),
        alternation,
        through_centroid,
    })
}

/// Runs `n - 1` steps and compares the final polygon with the centroid.
pub fn collapse_orbit(p: &AxisAligned2) -> Result<CollapseReport2> {
    let n = p.n();
    let centroid = center_of_mass_affine(p.polygon())?;
    let orb = orbit(p.polygon(), n - 1)?;
    let stage = two_line_stage(&orb[n - 2], &centroid).map_err(|e| e.at_step(n - 2))?;
    let last = &orb[n - 1];
    let all_equal = last.all_equal();
    let collapse_point = last.vertices()[0].clone();
    let matched = all_equal && collapse_point == centroid;
    Ok(CollapseReport2 {
        steps_taken: n - 1,
        two_line_stage: stage,
        all_equal,
        collapse_point,
        centroid,
        matched,
    })
}

/// A diagonal affine map `(x, y) -> (sx x + tx, sy y + ty)` of the plane.
pub fn axis_affine_map(sx: Rational, sy: Rational, tx: Rational, ty: Rational) -> Result<ProjMap> {
    if sx.is_zero() || sy.is_zero() {
        return Err(GeomError::InvalidInput("zero scale".into()));
    }
    ProjMap::new(Matrix::from_rows(&[
        vec![sx, rat(0), tx],
        vec![rat(0), sy, ty],
        vec![rat(0), rat(0), rat(1)],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{p2, p2q};
    use crate::rational::ratio;

    pub(crate) fn hexagon() -> LabeledPolygon2 {
        LabeledPolygon2::with_odd_labels(vec![p2(0, 0), p2(4, 0), p2(4, 2), p2(1, 2), p2(1, 5), p2(0, 5)]).unwrap()
    }

    #[test]
    fn square_collapses_to_its_center() {
        let sq = LabeledPolygon2::with_odd_labels(vec![p2(0, 0), p2(2, 0), p2(2, 2), p2(0, 2)]).unwrap();
        let t = pentagram_step(&sq).unwrap();
        assert!(t.vertices().iter().all(|v| *v == p2(1, 1)));
        assert_eq!(t.label_offset(), 2);
    }

    #[test]
    fn hexagon_first_step() {
        let t = pentagram_step(&hexagon()).unwrap();
        let expected = vec![
            p2q(20, 7, 10, 7),
            p2q(16, 7, 8, 7),
            p2(10, -4),
            p2q(-1, 2, 13, 2),
            p2q(5, 8, 25, 8),
            p2q(4, 5, 4, 1),
        ];
        assert_eq!(t.vertices(), expected.as_slice());
        assert_eq!(t.by_label(2), Some(&p2q(20, 7, 10, 7)));
        assert_eq!(t.by_label(12), Some(&p2q(4, 5, 4, 1)));
    }

    #[test]
    fn hexagon_second_step_is_the_centroid() {
        let t2 = pentagram_step(&pentagram_step(&hexagon()).unwrap()).unwrap();
        assert!(t2.vertices().iter().all(|v| *v == p2q(5, 3, 7, 3)));
        assert_eq!(t2.label_offset(), 3);
        assert_eq!(center_of_mass_affine(&hexagon()).unwrap(), p2q(5, 3, 7, 3));
    }

    #[test]
    fn hexagon_report() {
        let p = AxisAligned2::from_polygon(&hexagon()).unwrap();
        assert_eq!(p.a(), &[rat(0), rat(4), rat(1)]);
        let r = collapse_orbit(&p).unwrap();
        assert!(r.matched);
        assert_eq!(r.steps_taken, 2);
        assert!(r.two_line_stage.alternation);
        assert!(r.two_line_stage.through_centroid);
        // line y = (72 - 25x)/13 through Q4, Q8, Q12
        assert_eq!(r.two_line_stage.lines.1, ProjLine2::from_i64(25, 13, -72).unwrap());
    }

    #[test]
    fn axis_alignment_modes() {
        let h = hexagon();
        assert!(is_axis_aligned(&h, AlignMode::Affine));
        assert!(is_axis_aligned(&h, AlignMode::Projective));
        let psi = ProjMap::new(Matrix::from_rows(&[
            vec![rat(1), rat(2), rat(0)],
            vec![rat(0), rat(1), rat(1)],
            vec![rat(1), rat(0), rat(3)],
        ]))
        .unwrap();
        let image = h.map(&psi).unwrap();
        assert!(is_axis_aligned(&image, AlignMode::Projective));
        assert!(!is_axis_aligned(&image, AlignMode::Affine));
        let generic =
            LabeledPolygon2::with_odd_labels(vec![p2(0, 0), p2(5, 1), p2(7, 4), p2(3, 6), p2(-1, 5), p2(-2, 2)]).unwrap();
        assert!(!is_axis_aligned(&generic, AlignMode::Affine));
        assert!(!is_axis_aligned(&generic, AlignMode::Projective));
    }

    #[test]
    fn projective_center_is_equivariant() {
        let h = hexagon();
        assert_eq!(center_of_mass_projective(&h).unwrap(), p2q(5, 3, 7, 3));
        let psi = ProjMap::new(Matrix::from_rows(&[
            vec![rat(2), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(-1)],
            vec![rat(1), rat(1), rat(4)],
        ]))
        .unwrap();
        let image = h.map(&psi).unwrap();
        let expected = psi.apply(&p2q(5, 3, 7, 3)).unwrap();
        assert_eq!(center_of_mass_projective(&image).unwrap(), expected);
    }

    #[test]
    fn chart_choice_does_not_matter() {
        let h = hexagon();
        let chart = axis_affine_map(ratio(-3, 2), rat(5), rat(7), ratio(1, 3)).unwrap();
        assert_eq!(center_of_mass_with(&h, &chart).unwrap(), center_of_mass_with(&h, &ProjMap::identity(2)).unwrap());
    }

    #[test]
    fn translation_shifts_centroid() {
        let t = axis_affine_map(rat(1), rat(1), rat(3), rat(-2)).unwrap();
        let moved = hexagon().map(&t).unwrap();
        assert_eq!(center_of_mass_affine(&moved).unwrap(), p2q(14, 3, 1, 3));
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = random_axis_aligned(3, 1, 10).unwrap();
        let b = random_axis_aligned(3, 1, 10).unwrap();
        assert_eq!(a, b);
        assert!(is_axis_aligned(a.polygon(), AlignMode::Affine));
        assert!(random_axis_aligned(4, 1, 2).is_err());
    }

    #[test]
    fn seeded_octagon_collapses() {
        let p = random_axis_aligned(4, 7, 10).unwrap();
        assert!(collapse_orbit(&p).unwrap().matched);
    }

    #[test]
    fn coincident_vertices_are_rejected() {
        let r = LabeledPolygon2::with_odd_labels(vec![p2(0, 0), p2(0, 0), p2(1, 1), p2(2, 0)]);
        assert!(matches!(r.unwrap_err().root(), GeomError::Coincident));
    }
}
