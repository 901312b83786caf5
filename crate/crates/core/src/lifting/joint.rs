//! Joints, prisms and polyjoints, and the parallel liftings that produce them.

use num_traits::{One, Zero};

use super::flat::{AffineFlat, Chart};
use super::sequences::NPoint;
use crate::error::{GeomError, Result};
use crate::linalg::{is_zero_vec, rank_of, sub, Matrix, Vector};
use crate::rational::{mean, Rational};
use crate::rng::{random_rational, seeded};

/// `n` affinely independent points of R^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joint {
    points: Vec<Vector>,
}

impl Joint {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let n = points.len();
        if n < 2 {
            return Err(GeomError::NotAJoint);
        }
        for p in &points {
            if p.len() != n {
                return Err(GeomError::DimensionMismatch { expected: n, got: p.len() });
            }
        }
        let diffs: Vec<Vector> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        if rank_of(&diffs) != n - 1 {
            return Err(GeomError::NotAJoint);
        }
        Ok(Joint { points })
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn hyperplane(&self) -> AffineFlat {
        AffineFlat::through(&self.points)
    }

    pub fn centroid(&self) -> Vector {
        (0..self.n())
            .map(|c| mean(&self.points.iter().map(|p| p[c].clone()).collect::<Vec<_>>()))
            .collect()
    }
}

/// Normal of the hyperplane through `j`, by cofactor expansion of the
/// determinant whose first row is the formal basis `e` and whose other rows
/// are `p_i - p_0`.
pub fn hyperplane_normal(j: &Joint) -> Result<Vector> {
    let n = j.n();
    let diffs: Vec<Vector> = j.points[1..].iter().map(|p| sub(p, &j.points[0])).collect();
    let normal: Vector = (0..n)
        .map(|c| {
            let minor: Vec<Vector> = diffs
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = if minor.is_empty() {
                Rational::one()
            } else {
                Matrix::from_rows(&minor).determinant()
            };
            if c % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    if is_zero_vec(&normal) {
        return Err(GeomError::NotAJoint);
    }
    Ok(normal)
}

fn all_subsets_independent(vectors: &[Vector], size: usize) -> bool {
    fn rec(vectors: &[Vector], size: usize, start: usize, chosen: &mut Vec<Vector>) -> bool {
        if chosen.len() == size {
            return rank_of(chosen) == size;
        }
        for i in start..vectors.len() {
            chosen.push(vectors[i].clone());
            let ok = rec(vectors, size, i + 1, chosen);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(vectors, size, 0, &mut Vec::new())
}

/// True iff the normals of every subfamily of at most `n` hyperplanes are
/// linearly independent.
pub fn general_position_check(joints: &[Joint]) -> Result<bool> {
    let Some(first) = joints.first() else {
        return Ok(true);
    };
    let n = first.n();
    let normals = joints
        .iter()
        .map(|j| {
            if j.n() != n {
                return Err(GeomError::DimensionMismatch { expected: n, got: j.n() });
            }
            hyperplane_normal(j)
        })
        .collect::<Result<Vec<_>>>()?;
    if normals.len() <= n {
        Ok(rank_of(&normals) == normals.len())
    } else {
        Ok(all_subsets_independent(&normals, n))
    }
}

/// `n` distinct parallel lines of R^n, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prism {
    bases: Vec<Vector>,
    direction: Vector,
}

impl Prism {
    /// Lines through `bases` with the common `direction`.
    pub fn new(bases: Vec<Vector>, direction: Vector) -> Result<Self> {
        if is_zero_vec(&direction) {
            return Err(GeomError::NotAPrism);
        }
        let prism = Prism { bases, direction };
        let lines = prism.lines();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i] == lines[j] {
                    return Err(GeomError::Coincident);
                }
            }
        }
        Ok(prism)
    }

    /// The prism whose lines join corresponding points of two joints.
    pub fn from_joints(a: &Joint, b: &Joint) -> Result<Self> {
        if a.n() != b.n() {
            return Err(GeomError::DimensionMismatch { expected: a.n(), got: b.n() });
        }
        let diffs: Vec<Vector> = a.points.iter().zip(&b.points).map(|(p, q)| sub(q, p)).collect();
        if diffs.iter().any(|d| is_zero_vec(d)) || rank_of(&diffs) != 1 {
            return Err(GeomError::NotAPrism);
        }
        Prism::new(a.points.clone(), diffs[0].clone())
    }

    pub fn n(&self) -> usize {
        self.bases.len()
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn bases(&self) -> &[Vector] {
        &self.bases
    }

    pub fn lines(&self) -> Vec<AffineFlat> {
        self.bases
            .iter()
            .map(|b| AffineFlat::new(b.clone(), std::slice::from_ref(&self.direction)))
            .collect()
    }
}

/// How the heights of a lift were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftKind {
    /// Position `l` raised by 1 in coordinate `l` alone.
    Canonical,
    /// Seeded random heights; `attempt` counts from 0.
    Random { seed: u64, attempt: usize },
    Given,
}

/// Chained joints `J_1, J_3, ...` with the chart `π` back to the source space.
#[derive(Debug, Clone)]
pub struct Polyjoint {
    joints: Vec<Joint>,
    chart: Chart,
    heights: Vec<Vector>,
    kind: LiftKind,
}

impl Polyjoint {
    pub fn joints(&self) -> &[Joint] {
        &self.joints
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn heights(&self) -> &[Vector] {
        &self.heights
    }

    pub fn kind(&self) -> LiftKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.joints[0].n()
    }

    /// The prism `T_h` between `J_{h-1}` and `J_{h+1}` (`h` even).
    pub fn prism(&self, h: usize) -> Result<Prism> {
        if h < 2 || h % 2 == 1 || h / 2 >= self.joints.len() {
            return Err(GeomError::InvalidInput(format!("no prism T_{h}")));
        }
        Prism::from_joints(&self.joints[h / 2 - 1], &self.joints[h / 2])
    }

    pub fn prism_labels(&self) -> Vec<usize> {
        (1..self.joints.len()).map(|i| 2 * i).collect()
    }

    /// Every prism direction maps under `π` to a coordinate axis direction.
    pub fn prisms_axis_parallel(&self) -> Result<bool> {
        for h in self.prism_labels() {
            let d = self.chart.apply_vector(self.prism(h)?.direction());
            if d.iter().filter(|x| !x.is_zero()).count() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Chart used for the sequences: the standard one when the points live in
/// at most `n` dimensions, otherwise a chart onto their affine hull.
pub fn chart_for(seqs: &[NPoint]) -> Result<Chart> {
    let n = seqs[0].len();
    let d = seqs[0].dim();
    if d <= n {
        return Ok(Chart::standard(d));
    }
    let all: Vec<Vector> = seqs.iter().flat_map(|s| s.affine()).collect();
    let chart = Chart::hull(&all);
    if chart.dim() > n {
        return Err(GeomError::HullTooLarge { dim: chart.dim(), n });
    }
    Ok(chart)
}

fn check_sequences(seqs: &[NPoint]) -> Result<()> {
    let Some(first) = seqs.first() else {
        return Err(GeomError::InvalidInput("no sequences".into()));
    };
    for s in seqs {
        if s.len() != first.len() {
            return Err(GeomError::DimensionMismatch { expected: first.len(), got: s.len() });
        }
        if s.dim() != first.dim() {
            return Err(GeomError::DimensionMismatch { expected: first.dim(), got: s.dim() });
        }
    }
    Ok(())
}

fn lift_with_chart(seqs: &[NPoint], chart: Chart, heights: &[Vector], kind: LiftKind) -> Result<Polyjoint> {
    check_sequences(seqs)?;
    let n = seqs[0].len();
    let extra = n - chart.dim();
    if heights.len() != n || heights.iter().any(|h| h.len() != extra) {
        return Err(GeomError::InvalidInput(format!("heights must be a {n} x {extra} matrix")));
    }
    let joints = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let pts = s
                .affine()
                .iter()
                .zip(heights)
                .map(|(p, h)| {
                    let mut v = chart.coordinates(p)?;
                    v.extend(h.iter().cloned());
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            Joint::new(pts).map_err(|e| e.at_index(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let pj = Polyjoint {
        joints,
        chart,
        heights: heights.to_vec(),
        kind,
    };
    for h in pj.prism_labels() {
        pj.prism(h)?;
    }
    Ok(pj)
}

/// Appends row `l` of `heights` to the point at position `l` of every
/// sequence.
pub fn parallel_lift(seqs: &[NPoint], heights: &[Vector]) -> Result<Polyjoint> {
    check_sequences(seqs)?;
    lift_with_chart(seqs, chart_for(seqs)?, heights, LiftKind::Given)
}

fn l0_heights(n: usize, k: usize) -> Vec<Vector> {
    (0..n)
        .map(|l| {
            (k..n)
                .map(|c| if c == l { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// The lift raising position `l` (0-based, `l` beyond the chart dimension)
/// by 1 in coordinate `l` and leaving the other positions flat.
pub fn canonical_lift_l0(seqs: &[NPoint]) -> Result<Polyjoint> {
    check_sequences(seqs)?;
    let chart = chart_for(seqs)?;
    let heights = l0_heights(seqs[0].len(), chart.dim());
    lift_with_chart(seqs, chart, &heights, LiftKind::Canonical)
}

fn random_heights(n: usize, k: usize, seed: u64) -> Vec<Vector> {
    let mut rng = seeded(seed);
    (0..n).map(|_| (k..n).map(|_| random_rational(&mut rng, 16)).collect()).collect()
}

/// The canonical lift if it is in general position, otherwise the first of
/// `attempts` seeded random lifts that is.
pub fn find_lift(seqs: &[NPoint], seed: u64, attempts: usize) -> Result<Polyjoint> {
    let mut last = match canonical_lift_l0(seqs) {
        Ok(pj) if general_position_check(pj.joints())? => return Ok(pj),
        Ok(_) => GeomError::NonTransverse,
        Err(e @ GeomError::HullTooLarge { .. }) => return Err(e),
        Err(e) => e,
    };
    let chart = chart_for(seqs)?;
    let n = seqs[0].len();
    for attempt in 0..attempts {
        let heights = random_heights(n, chart.dim(), seed.wrapping_add(attempt as u64));
        match lift_with_chart(seqs, chart.clone(), &heights, LiftKind::Random { seed, attempt }) {
            Ok(pj) if general_position_check(pj.joints())? => return Ok(pj),
            Ok(_) => last = GeomError::NonTransverse,
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Whether all joint centroids agree and where the common one projects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidReport {
    pub centroids_equal: bool,
    pub centroid: Vector,
    pub projected: crate::proj::ProjPoint,
    pub expected: crate::proj::ProjPoint,
}

impl CentroidReport {
    pub fn passed(&self) -> bool {
        self.centroids_equal && self.projected == self.expected
    }
}

pub fn centroid_coincidence_check(pj: &Polyjoint, expected: &crate::proj::ProjPoint) -> CentroidReport {
    let centroids: Vec<Vector> = pj.joints.iter().map(Joint::centroid).collect();
    let centroids_equal = centroids.windows(2).all(|w| w[0] == w[1]);
    CentroidReport {
        centroids_equal,
        projected: pj.chart.apply_point(&centroids[0]),
        centroid: centroids[0].clone(),
        expected: expected.clone(),
    }
}
