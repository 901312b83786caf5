//! Affine flats of R^n and affine charts onto a lower-dimensional space.

use num_traits::Zero;

use crate::error::{GeomError, Result};
use crate::linalg::{add, is_zero_vec, scale, sub, Matrix, Vector};
use crate::proj::ProjPoint;

/// `base + span(basis)`, kept in a canonical form: the basis is the reduced
/// row echelon basis of the direction space and the base point is zero in
/// every pivot column. Equal flats therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFlat {
    base: Vector,
    basis: Vec<Vector>,
}

fn reduced_basis(ambient: usize, spanning: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let spanning: Vec<Vector> = spanning.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
    if spanning.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = Matrix::from_rows(&spanning);
    let pivots = m.rref_in_place();
    let basis = (0..pivots.len())
        .map(|r| (0..ambient).map(|c| m[(r, c)].clone()).collect())
        .collect();
    (basis, pivots)
}

impl AffineFlat {
    pub fn new(base: Vector, spanning: &[Vector]) -> Self {
        let n = base.len();
        let (basis, pivots) = reduced_basis(n, spanning);
        let mut base = base;
        for (row, &p) in basis.iter().zip(&pivots) {
            if !base[p].is_zero() {
                let f = base[p].clone();
                base = sub(&base, &scale(row, &f));
            }
        }
        AffineFlat { base, basis }
    }

    pub fn point(p: Vector) -> Self {
        AffineFlat { base: p, basis: Vec::new() }
    }

    /// Smallest flat containing the points.
    pub fn through(points: &[Vector]) -> Self {
        let diffs: Vec<Vector> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
        Self::new(points[0].clone(), &diffs)
    }

    pub fn ambient(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    pub fn base(&self) -> &[crate::Rational] {
        &self.base
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// The unique point of a zero-dimensional flat.
    pub fn as_point(&self) -> Option<&Vector> {
        (self.dim() == 0).then_some(&self.base)
    }

    pub fn contains_direction(&self, v: &[crate::Rational]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(&rows).rank() == self.dim()
    }

    pub fn contains(&self, p: &[crate::Rational]) -> bool {
        self.contains_direction(&sub(p, &self.base))
    }

    pub fn contains_flat(&self, other: &AffineFlat) -> bool {
        self.contains(&other.base) && other.basis.iter().all(|v| self.contains_direction(v))
    }

    /// Intersection, or `None` when the flats are disjoint.
    pub fn intersect(&self, other: &AffineFlat) -> Option<AffineFlat> {
        assert_eq!(self.ambient(), other.ambient(), "flats live in different spaces");
        if self.dim() == 0 {
            return other.contains(&self.base).then(|| self.clone());
        }
        if other.dim() == 0 {
            return self.contains(&other.base).then(|| other.clone());
        }
        let k = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| scale(v, &crate::rational::rat(-1))));
        let (x, kernel) = Matrix::from_cols(&cols).solve_affine(&sub(&other.base, &self.base))?;
        let combine = |coeffs: &[crate::Rational]| -> Vector {
            let mut v = vec![crate::Rational::zero(); self.ambient()];
            for (c, b) in coeffs[..k].iter().zip(&self.basis) {
                if !c.is_zero() {
                    v = add(&v, &scale(b, c));
                }
            }
            v
        };
        let base = add(&self.base, &combine(&x));
        let dirs: Vec<Vector> = kernel.iter().map(|kv| combine(kv)).collect();
        Some(AffineFlat::new(base, &dirs))
    }
}

/// An affine map `x -> origin + sum_i x_i basis_i` from R^n onto R^m that
/// reads only the first `basis.len()` coordinates. The standard chart drops
/// the trailing coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    origin: Vector,
    basis: Vec<Vector>,
}

impl Chart {
    pub fn standard(m: usize) -> Self {
        let basis = (0..m)
            .map(|i| (0..m).map(|j| crate::rational::rat(i64::from(i == j))).collect())
            .collect();
        Chart {
            origin: vec![crate::Rational::zero(); m],
            basis,
        }
    }

    /// Chart onto the affine hull of `points`.
    pub fn hull(points: &[Vector]) -> Self {
        let flat = AffineFlat::through(points);
        Chart {
            origin: flat.base.clone(),
            basis: flat.basis.clone(),
        }
    }

    pub fn is_standard(&self) -> bool {
        *self == Chart::standard(self.target())
    }

    /// Number of source coordinates read.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the target space.
    pub fn target(&self) -> usize {
        self.origin.len()
    }

    pub fn apply_vector(&self, v: &[crate::Rational]) -> Vector {
        let mut out = vec![crate::Rational::zero(); self.target()];
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = add(&out, &scale(b, c));
            }
        }
        out
    }

    pub fn apply(&self, p: &[crate::Rational]) -> Vector {
        add(&self.origin, &self.apply_vector(p))
    }

    /// Chart coordinates of a target point lying in the image.
    pub fn coordinates(&self, p: &[crate::Rational]) -> Result<Vector> {
        if self.dim() == 0 {
            return if p == self.origin.as_slice() { Ok(Vec::new()) } else { Err(GeomError::DegenerateSpan) };
        }
        let (x, _) = Matrix::from_cols(&self.basis)
            .solve_affine(&sub(p, &self.origin))
            .ok_or(GeomError::DegenerateSpan)?;
        Ok(x)
    }

    pub fn apply_flat(&self, f: &AffineFlat) -> AffineFlat {
        let dirs: Vec<Vector> = f.basis().iter().map(|v| self.apply_vector(v)).collect();
        AffineFlat::new(self.apply(f.base()), &dirs)
    }

    pub fn apply_point(&self, p: &[crate::Rational]) -> ProjPoint {
        ProjPoint::affine(&self.apply(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn canonical_form_makes_equal_flats_equal() {
        let a = AffineFlat::new(v(&[1, 1, 0]), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = AffineFlat::new(v(&[5, -2, 0]), &[v(&[1, 1, 0]), v(&[2, -1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[7, 9, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn plane_meets_plane_in_a_line() {
        let xy = AffineFlat::new(v(&[0, 0, 0]), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let tilted = AffineFlat::new(v(&[0, 0, 1]), &[v(&[1, 0, -1]), v(&[0, 1, 0])]);
        let line = xy.intersect(&tilted).unwrap();
        assert_eq!(line, AffineFlat::new(v(&[1, 0, 0]), &[v(&[0, 1, 0])]));
        let parallel = AffineFlat::new(v(&[0, 0, 1]), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(xy.intersect(&parallel).is_none());
    }

    #[test]
    fn line_meets_plane_in_a_point() {
        let line = AffineFlat::new(v(&[1, 2, 3]), &[v(&[1, 1, 1])]);
        let plane = AffineFlat::new(v(&[0, 0, 0]), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let p = line.intersect(&plane).unwrap();
        assert_eq!(p.as_point(), Some(&v(&[-2, -1, 0])));
    }

    #[test]
    fn hull_chart_round_trips() {
        let pts = vec![v(&[1, 0, 0, 2]), v(&[2, 1, 0, 2]), v(&[0, 0, 3, 2])];
        let chart = Chart::hull(&pts);
        assert_eq!(chart.dim(), 2);
        for p in &pts {
            let c = chart.coordinates(p).unwrap();
            assert_eq!(&chart.apply(&c), p);
        }
        let half = vec![ratio(1, 2), ratio(1, 3)];
        assert!(AffineFlat::through(&pts).contains(&chart.apply(&half)));
    }
}
