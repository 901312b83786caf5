//! Cyclic skeletons of prisms, the flats `H_{g,k}`, and slicing.

use super::flat::AffineFlat;
use super::joint::{Joint, Polyjoint, Prism};
use crate::error::{GeomError, Result};
use crate::linalg::{sub, Vector};
use crate::proj::ProjPoint;

/// The `n` faces of dimension `k` of a prism. Face `p` is spanned by the
/// lines `p, p + 1, ..., p + k - 1`, indices cyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSkeleton {
    level: usize,
    faces: Vec<AffineFlat>,
}

impl CyclicSkeleton {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn faces(&self) -> &[AffineFlat] {
        &self.faces
    }

    pub fn face(&self, p: i64) -> &AffineFlat {
        &self.faces[p.rem_euclid(self.faces.len() as i64) as usize]
    }
}

pub fn cyclic_skeleton(prism: &Prism, k: usize) -> Result<CyclicSkeleton> {
    let n = prism.n();
    if k == 0 || k >= n {
        return Err(GeomError::InvalidInput(format!("skeleton level {k} outside 1..{n}")));
    }
    let bases = prism.bases();
    let faces = (0..n)
        .map(|p| {
            let mut span: Vec<Vector> = vec![prism.direction().to_vec()];
            span.extend((1..k).map(|i| sub(&bases[(p + i) % n], &bases[p])));
            let face = AffineFlat::new(bases[p].clone(), &span);
            if face.dim() == k {
                Ok(face)
            } else {
                Err(GeomError::DegenerateSpan.at_index(p))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CyclicSkeleton { level: k, faces })
}

/// Checks that each face of level `k - 1` is the intersection of the two
/// faces of level `k` that contain it, for `k = 2, ..., n - 1`.
pub fn skeleton_recurrence_check(prism: &Prism) -> Result<bool> {
    let n = prism.n();
    let mut lower = cyclic_skeleton(prism, 1)?;
    for k in 2..n {
        let upper = cyclic_skeleton(prism, k)?;
        for c in 0..n as i64 {
            let meet = upper.face(c - 1).intersect(upper.face(c));
            if meet.as_ref() != Some(lower.face(c)) {
                return Ok(false);
            }
        }
        lower = upper;
    }
    Ok(true)
}

/// `H_{g,k}`: the intersection of the `g` hyperplanes `J_{k-g+1}, J_{k-g+3},
/// ..., J_{k+g-1}` (odd labels, `J_1` first).
pub fn flat_h(g: usize, k: usize, joints: &[Joint]) -> Result<AffineFlat> {
    if g == 0 || k < g || (k - g) % 2 == 1 || (k + g) / 2 > joints.len() {
        return Err(GeomError::InvalidInput(format!("H_{{{g},{k}}} is not defined for {} joints", joints.len())));
    }
    let first = (k - g) / 2;
    let mut flat = joints[first].hyperplane();
    for j in &joints[first + 1..first + g] {
        flat = flat.intersect(&j.hyperplane()).ok_or(GeomError::NonTransverse)?;
    }
    if flat.codim() != g {
        return Err(GeomError::NonTransverse);
    }
    Ok(flat)
}

/// Diagnostics of `W` against the skeleta of a prism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceReport {
    pub codim: usize,
    /// `W ∩ t_j(p)` when it is a single point.
    pub points: Vec<Option<Vector>>,
    pub distinct: bool,
    /// `W` meets each face of level `j + 1` in a line and those lines are
    /// distinct. Vacuous when `j = n - 1`.
    pub lines_ok: bool,
}

impl SliceReport {
    pub fn sliced(&self) -> bool {
        self.points.iter().all(Option::is_some) && self.distinct && self.lines_ok
    }

    pub fn slice_points(&self) -> Option<Vec<Vector>> {
        self.points.iter().cloned().collect()
    }
}

fn meets_in(w: &AffineFlat, face: &AffineFlat, dim: usize) -> Option<AffineFlat> {
    w.intersect(face).filter(|f| f.dim() == dim)
}

pub fn slice_report(w: &AffineFlat, prism: &Prism) -> Result<SliceReport> {
    let n = prism.n();
    let j = w.codim();
    if j == 0 || j >= n {
        return Ok(SliceReport {
            codim: j,
            points: vec![None; n],
            distinct: false,
            lines_ok: false,
        });
    }
    let sk = cyclic_skeleton(prism, j)?;
    let points: Vec<Option<Vector>> = sk
        .faces()
        .iter()
        .map(|f| meets_in(w, f, 0).map(|p| p.base().to_vec()))
        .collect();
    let found: Vec<&Vector> = points.iter().flatten().collect();
    let distinct = found.len() == n && (0..n).all(|a| (a + 1..n).all(|b| found[a] != found[b]));
    let lines_ok = if j + 1 < n {
        let up = cyclic_skeleton(prism, j + 1)?;
        let lines: Vec<Option<AffineFlat>> = up.faces().iter().map(|f| meets_in(w, f, 1)).collect();
        lines.iter().all(Option::is_some) && (0..n).all(|a| (a + 1..n).all(|b| lines[a] != lines[b]))
    } else {
        true
    };
    Ok(SliceReport {
        codim: j,
        points,
        distinct,
        lines_ok,
    })
}

/// True iff `W` slices the prism.
pub fn slices_check(w: &AffineFlat, prism: &Prism) -> Result<bool> {
    Ok(slice_report(w, prism)?.sliced())
}

/// `π(H_{g,k} ∩ Σ_g T_h)`, face by face.
pub fn projected_slice(pj: &Polyjoint, g: usize, k: usize, h: usize) -> Result<Vec<ProjPoint>> {
    let w = flat_h(g, k, pj.joints())?;
    let report = slice_report(&w, &pj.prism(h)?)?;
    let pts = report.slice_points().ok_or(GeomError::NonTransverse)?;
    Ok(pts.iter().map(|p| pj.chart().apply_point(p)).collect())
}

/// Prisms `T_h` with `|h - k| <= g` that exist in the polyjoint.
pub fn prisms_near(pj: &Polyjoint, g: usize, k: usize) -> Vec<usize> {
    pj.prism_labels()
        .into_iter()
        .filter(|&h| h + g >= k && h <= k + g)
        .collect()
}

/// The collapse line and what lies on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseLineReport {
    pub line: AffineFlat,
    pub projected: AffineFlat,
    pub centroid_on_line: bool,
    pub projected_centroid_on_line: bool,
    pub final_points_on_line: bool,
}

impl CollapseLineReport {
    pub fn passed(&self) -> bool {
        self.line.dim() == 1 && self.centroid_on_line && self.projected_centroid_on_line && self.final_points_on_line
    }
}

/// Intersects all joints into the line `H_{N,N}` (`N` joints in R^{N+1}) and
/// checks that its image contains `finals` and the common centroid.
pub fn collapse_line_check(pj: &Polyjoint, finals: &[ProjPoint], centroid: &[crate::Rational]) -> Result<CollapseLineReport> {
    let count = pj.joints().len();
    let line = flat_h(count, count, pj.joints())?;
    let projected = pj.chart().apply_flat(&line);
    let on = |p: &ProjPoint| p.to_affine().is_some_and(|a| projected.contains(&a));
    Ok(CollapseLineReport {
        centroid_on_line: line.contains(centroid),
        projected_centroid_on_line: projected.contains(&pj.chart().apply(centroid)),
        final_points_on_line: finals.iter().all(on),
        projected,
        line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::rng::{random_rational, seeded};

    fn random_prism(n: usize, seed: u64) -> Prism {
        let mut rng = seeded(seed);
        let bases: Vec<Vector> = (0..n).map(|_| (0..n).map(|_| random_rational(&mut rng, 9)).collect()).collect();
        let dir: Vector = (0..n).map(|_| random_rational(&mut rng, 9)).collect();
        Prism::new(bases, dir).unwrap()
    }

    #[test]
    fn first_skeleton_is_the_prism() {
        let t = random_prism(4, 1);
        assert_eq!(cyclic_skeleton(&t, 1).unwrap().faces(), t.lines().as_slice());
    }

    #[test]
    fn recurrence_on_random_prisms() {
        for n in 3..=6 {
            for seed in 0..3 {
                let t = random_prism(n, 10 * n as u64 + seed);
                assert!(skeleton_recurrence_check(&t).unwrap());
                for k in 1..n {
                    assert!(cyclic_skeleton(&t, k).unwrap().faces().iter().all(|f| f.dim() == k));
                }
            }
        }
    }

    #[test]
    fn flat_inside_a_face_does_not_slice() {
        let t = random_prism(3, 5);
        let sk = cyclic_skeleton(&t, 2).unwrap();
        let inside = AffineFlat::new(t.bases()[0].clone(), &[t.direction().to_vec()]);
        assert!(sk.face(0).contains_flat(&inside));
        assert!(!slices_check(&inside, &t).unwrap());
        let generic = AffineFlat::new(vec![rat(1), rat(-2), rat(3)], &[vec![rat(2), rat(7), rat(-1)]]);
        assert!(slices_check(&generic, &t).unwrap());
    }
}
