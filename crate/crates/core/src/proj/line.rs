use num_bigint::BigInt;
use num_traits::Zero;

use super::point::ProjPoint;
use crate::error::{GeomError, Result};
use crate::linalg::{primitive, Matrix};
use crate::rational::Rational;

/// A line of P^2 in dual coordinates `(a, b, c)`, meaning `aX + bY + cW = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjLine2 {
    coeffs: Vec<BigInt>,
}

impl ProjLine2 {
    pub fn from_ints(coeffs: &[BigInt]) -> Result<Self> {
        if coeffs.len() != 3 {
            return Err(GeomError::DimensionMismatch {
                expected: 3,
                got: coeffs.len(),
            });
        }
        primitive(coeffs)
            .map(|coeffs| ProjLine2 { coeffs })
            .ok_or_else(|| GeomError::InvalidInput("zero line".into()))
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::from_ints(&[a.into(), b.into(), c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The exact incidence pairing with a point of P^2.
    pub fn pairing(&self, p: &ProjPoint) -> BigInt {
        self.coeffs
            .iter()
            .zip(p.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.dim() == 2 && self.pairing(p).is_zero()
    }

    /// Solves for y on a non-vertical line, as `y = slope * x + intercept`.
    pub fn slope_intercept(&self) -> Option<(Rational, Rational)> {
        let [a, b, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        if b.is_zero() {
            return None;
        }
        Some((
            Rational::new(-a.clone(), b.clone()),
            Rational::new(-c.clone(), b.clone()),
        ))
    }
}

fn cross(u: &[BigInt], v: &[BigInt]) -> [BigInt; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// The line through two distinct points of P^2.
pub fn join_points(a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine2> {
    a.check_dim(2)?;
    b.check_dim(2)?;
    ProjLine2::from_ints(&cross(a.coords(), b.coords())).map_err(|_| GeomError::DegenerateJoin)
}

/// The intersection point of two distinct lines of P^2.
pub fn meet_lines(l1: &ProjLine2, l2: &ProjLine2) -> Result<ProjPoint> {
    ProjPoint::from_ints(&cross(&l1.coeffs, &l2.coeffs)).map_err(|_| GeomError::DegenerateMeet)
}

/// Intersection of the lines `ab` and `cd` in P^m, provided they lie in a
/// common plane.
pub fn meet_coplanar_lines(
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    d: &ProjPoint,
) -> Result<ProjPoint> {
    let m = a.dim();
    for p in [b, c, d] {
        p.check_dim(m)?;
    }
    if a == b || c == d {
        return Err(GeomError::DegenerateJoin);
    }
    if m == 2 {
        return meet_lines(&join_points(a, b)?, &join_points(c, d)?);
    }
    let (ha, hb) = (a.homogeneous(), b.homogeneous());
    let neg = |p: &ProjPoint| -> Vec<Rational> { p.homogeneous().into_iter().map(|x| -x).collect() };
    // Columns a, b, -c, -d: a kernel vector gives la + mb = rc + sd.
    let mat = Matrix::from_cols(&[ha.clone(), hb.clone(), neg(c), neg(d)]);
    match mat.rank() {
        4 => return Err(GeomError::NonCoplanarDiagonals),
        3 => {}
        _ => return Err(GeomError::DegenerateMeet),
    }
    let kernel = mat.nullspace();
    let k = &kernel[0];
    let point: Vec<Rational> = ha
        .iter()
        .zip(&hb)
        .map(|(x, y)| &k[0] * x + &k[1] * y)
        .collect();
    ProjPoint::from_homogeneous(&point).map_err(|_| GeomError::DegenerateMeet)
}

/// Reflection in the x-axis, `(X, Y, W) -> (X, -Y, W)`.
pub fn reflect_r(p: &ProjPoint) -> ProjPoint {
    assert_eq!(p.dim(), 2, "reflection acts on the plane");
    let c = p.coords();
    ProjPoint::from_ints(&[c[0].clone(), -c[1].clone(), c[2].clone()]).expect("nonzero")
}

/// Vertical projection of the plane to the x-line, `(X, Y, W) -> (X, W)`.
pub fn project_vertical(p: &ProjPoint) -> Result<ProjPoint> {
    p.check_dim(2)?;
    let c = p.coords();
    ProjPoint::from_ints(&[c[0].clone(), c[2].clone()]).map_err(|_| GeomError::UndefinedProjection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::point::{p2, p2q};

    #[test]
    fn join_examples() {
        assert_eq!(join_points(&p2(0, 0), &p2(1, 1)).unwrap(), ProjLine2::from_i64(1, -1, 0).unwrap());
        assert_eq!(join_points(&p2(0, 0), &p2(4, 2)).unwrap(), ProjLine2::from_i64(1, -2, 0).unwrap());
        let l = join_points(&p2(1, -1), &p2(2, 1)).unwrap();
        assert_eq!(l, ProjLine2::from_i64(2, -1, -3).unwrap());
        assert_eq!(join_points(&p2(3, 3), &p2(3, 3)), Err(GeomError::DegenerateJoin));
    }

    #[test]
    fn meet_examples() {
        let x0 = ProjLine2::from_i64(1, 0, 0).unwrap();
        let y0 = ProjLine2::from_i64(0, 1, 0).unwrap();
        assert_eq!(meet_lines(&x0, &y0).unwrap(), p2(0, 0));
        // y = x/2 and y = 5 - 5x/4
        let l1 = ProjLine2::from_i64(1, -2, 0).unwrap();
        let l2 = ProjLine2::from_i64(5, 4, -20).unwrap();
        assert_eq!(meet_lines(&l1, &l2).unwrap(), p2q(20, 7, 10, 7));
        // parallel lines meet at their common direction
        let l3 = ProjLine2::from_i64(1, -2, 7).unwrap();
        assert_eq!(meet_lines(&l1, &l3).unwrap(), ProjPoint::from_i64(&[2, 1, 0]).unwrap());
        assert_eq!(meet_lines(&l1, &l1), Err(GeomError::DegenerateMeet));
    }

    #[test]
    fn skew_lines_are_rejected() {
        let p = |v: [i64; 3]| ProjPoint::affine(&v.map(crate::rational::rat));
        let r = meet_coplanar_lines(&p([0, 0, 0]), &p([1, 0, 0]), &p([0, 1, 1]), &p([0, 2, 1]));
        assert_eq!(r, Err(GeomError::NonCoplanarDiagonals));
        let q = meet_coplanar_lines(&p([0, 0, 0]), &p([2, 2, 0]), &p([2, 0, 0]), &p([0, 2, 0])).unwrap();
        assert_eq!(q, p([1, 1, 0]));
        let same = meet_coplanar_lines(&p([0, 0, 0]), &p([1, 1, 1]), &p([2, 2, 2]), &p([3, 3, 3]));
        assert_eq!(same, Err(GeomError::DegenerateMeet));
    }

    #[test]
    fn reflection_and_projection() {
        assert_eq!(reflect_r(&p2q(3, 1, -1, 3)), p2q(3, 1, 1, 3));
        let h = ProjPoint::from_i64(&[1, 0, 0]).unwrap();
        assert_eq!(reflect_r(&h), h);
        assert_eq!(project_vertical(&h).unwrap(), ProjPoint::infinity());
        assert_eq!(project_vertical(&p2(5, -7)).unwrap(), crate::proj::point::p1(5));
        let v = ProjPoint::from_i64(&[0, 1, 0]).unwrap();
        assert_eq!(project_vertical(&v), Err(GeomError::UndefinedProjection));
    }
}
