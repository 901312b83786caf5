use num_traits::{One, Zero};

use super::point::ProjPoint;
use crate::error::{GeomError, Result};
use crate::linalg::Matrix;
use crate::rational::{rat, Rational};

/// An invertible projective transformation of P^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjMap {
    matrix: Matrix,
}

impl ProjMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() < 2 {
            return Err(GeomError::InvalidInput("projective map needs a square matrix".into()));
        }
        if matrix.determinant().is_zero() {
            return Err(GeomError::InvalidInput("singular projective map".into()));
        }
        Ok(ProjMap { matrix })
    }

    pub fn identity(m: usize) -> Self {
        ProjMap {
            matrix: Matrix::identity(m + 1),
        }
    }

    /// The Moebius map `x -> (a x + b) / (c x + d)`.
    pub fn mobius(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        Self::new(Matrix::from_rows(&[vec![a, b], vec![c, d]]))
    }

    /// `x -> 1 / (x - a)`, sending `a` to infinity.
    pub fn inversion_at(a: &Rational) -> Self {
        Self::mobius(rat(0), rat(1), rat(1), -a.clone()).expect("determinant is -1")
    }

    /// `x -> u x + v`.
    pub fn affine1(u: Rational, v: Rational) -> Result<Self> {
        Self::mobius(u, v, rat(0), rat(1))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        p.check_dim(self.dim())?;
        let image = self.matrix.mul_vec(&p.homogeneous());
        Ok(ProjPoint::from_homogeneous(&image).expect("invertible map"))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjMap) -> Result<ProjMap> {
        if self.dim() != other.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(ProjMap {
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap {
            matrix: self.matrix.inverse().expect("invertible map"),
        }
    }
}

pub fn apply_map(phi: &ProjMap, p: &ProjPoint) -> Result<ProjPoint> {
    phi.apply(p)
}

/// A map of P^2 sending `p` to the horizontal direction `(1,0,0)` and `q` to
/// the vertical direction `(0,1,0)`.
///
/// The third column of the inverse matrix is the first of `e3, e1, e2` that
/// makes it invertible, so the result is the identity when `p` and `q` are
/// already the two axis directions.
pub fn axes_normalization_map(p: &ProjPoint, q: &ProjPoint) -> Result<ProjMap> {
    p.check_dim(2)?;
    q.check_dim(2)?;
    if p == q {
        return Err(GeomError::DegenerateJoin);
    }
    for k in [2, 0, 1] {
        let mut e = vec![Rational::zero(); 3];
        e[k] = Rational::one();
        let frame = Matrix::from_cols(&[p.homogeneous(), q.homogeneous(), e]);
        if let Some(inv) = frame.inverse() {
            return ProjMap::new(inv);
        }
    }
    unreachable!("two independent vectors extend to a basis with a unit vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::point::{p1, p1q, p2};

    #[test]
    fn mobius_examples() {
        let phi = ProjMap::inversion_at(&rat(1));
        assert_eq!(phi.apply(&p1(3)).unwrap(), p1q(1, 2));
        let psi = ProjMap::inversion_at(&rat(4));
        assert_eq!(psi.apply(&ProjPoint::infinity()).unwrap(), p1(0));
        assert_eq!(psi.apply(&p1(4)).unwrap(), ProjPoint::infinity());
        assert_eq!(ProjMap::identity(1).apply(&p1(9)).unwrap(), p1(9));
    }

    #[test]
    fn dimension_is_checked() {
        let phi = ProjMap::identity(1);
        assert!(matches!(phi.apply(&p2(1, 1)), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn composition_is_the_group_action() {
        let phi = ProjMap::mobius(rat(2), rat(1), rat(1), rat(1)).unwrap();
        let psi = ProjMap::inversion_at(&rat(3));
        let x = p1q(7, 5);
        let lhs = phi.compose(&psi).unwrap().apply(&x).unwrap();
        assert_eq!(lhs, phi.apply(&psi.apply(&x).unwrap()).unwrap());
        assert_eq!(phi.inverse().apply(&phi.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn axes_normalization() {
        let h = ProjPoint::from_i64(&[1, 0, 0]).unwrap();
        let v = ProjPoint::from_i64(&[0, 1, 0]).unwrap();
        assert_eq!(axes_normalization_map(&h, &v).unwrap(), ProjMap::identity(2));

        let p = p2(0, 0);
        let q = ProjPoint::from_i64(&[1, 1, 0]).unwrap();
        let phi = axes_normalization_map(&p, &q).unwrap();
        assert_eq!(phi.apply(&p).unwrap(), h);
        assert_eq!(phi.apply(&q).unwrap(), v);
        assert!(!phi.matrix().determinant().is_zero());
        assert_eq!(axes_normalization_map(&p, &p), Err(GeomError::DegenerateJoin));
    }
}
