//! Four- and six-point cross ratios on P^1 and the harmonic solves built on
//! them.
//!
//! Everything goes through the bracket `[a, b] = a_x b_w - a_w b_x`, which for
//! finite points is `a - b`. Infinite inputs and infinite values need no
//! special handling.

use num_bigint::BigInt;
use num_traits::Zero;

use super::point::ProjPoint;
use crate::error::{GeomError, Result};

pub fn bracket(a: &ProjPoint, b: &ProjPoint) -> BigInt {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn check_p1(points: &[&ProjPoint]) -> Result<()> {
    points.iter().try_for_each(|p| p.check_dim(1))
}

fn ratio_point(num: BigInt, den: BigInt) -> Result<ProjPoint> {
    if num.is_zero() && den.is_zero() {
        return Err(GeomError::IndeterminateCrossRatio);
    }
    ProjPoint::from_ints(&[num, den])
}

/// `(a-b)(c-d) / ((b-c)(d-a))` as a point of P^1.
pub fn cross_ratio4(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<ProjPoint> {
    check_p1(&[a, b, c, d])?;
    let num = bracket(a, b) * bracket(c, d);
    let den = bracket(b, c) * bracket(d, a);
    ratio_point(num, den)
}

/// `(a-b)(c-d)(e-f) / ((b-c)(d-e)(f-a))` as a point of P^1.
pub fn cross_ratio6(
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    d: &ProjPoint,
    e: &ProjPoint,
    f: &ProjPoint,
) -> Result<ProjPoint> {
    check_p1(&[a, b, c, d, e, f])?;
    let num = bracket(a, b) * bracket(c, d) * bracket(e, f);
    let den = bracket(b, c) * bracket(d, e) * bracket(f, a);
    ratio_point(num, den)
}

/// True when `[a,b][c,d] + [b,c][d,a] = 0`, the cleared form of
/// `cross_ratio4(a, b, c, d) = -1`. Unlike the quotient it stays meaningful
/// when both sides vanish.
pub fn harmonic4_relation(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> bool {
    (bracket(a, b) * bracket(c, d) + bracket(b, c) * bracket(d, a)).is_zero()
}

/// Cleared form of `cross_ratio6(a, b, c, d, e, f) = -1`.
pub fn harmonic6_relation(
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    d: &ProjPoint,
    e: &ProjPoint,
    f: &ProjPoint,
) -> bool {
    (bracket(a, b) * bracket(c, d) * bracket(e, f) + bracket(b, c) * bracket(d, e) * bracket(f, a))
        .is_zero()
}

fn combine(k1: &BigInt, u: &ProjPoint, k2: &BigInt, v: &ProjPoint) -> Result<ProjPoint> {
    let (u, v) = (u.coords(), v.coords());
    let w = [k1 * &u[0] - k2 * &v[0], k1 * &u[1] - k2 * &v[1]];
    ProjPoint::from_ints(&w).map_err(|_| GeomError::ZeroDenominator)
}

/// The point `c` with `[a, b, c, d] = -1`.
///
/// The relation is linear in `c` and is solved by `c = [d,a] b - [a,b] d`.
/// Fails when that vector vanishes, i.e. every `c` satisfies the relation.
pub fn solve_harmonic4(a: &ProjPoint, b: &ProjPoint, d: &ProjPoint) -> Result<ProjPoint> {
    check_p1(&[a, b, d])?;
    combine(&bracket(d, a), b, &bracket(a, b), d)
}

/// The point `d` with `[a, b, c, d, e, f] = -1`, via
/// `d = [a,b][e,f] c - [b,c][f,a] e`.
pub fn solve_harmonic6(
    a: &ProjPoint,
    b: &ProjPoint,
    c: &ProjPoint,
    e: &ProjPoint,
    f: &ProjPoint,
) -> Result<ProjPoint> {
    check_p1(&[a, b, c, e, f])?;
    let k1 = bracket(a, b) * bracket(e, f);
    let k2 = bracket(b, c) * bracket(f, a);
    combine(&k1, c, &k2, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::point::{p1, p1q};

    fn inf() -> ProjPoint {
        ProjPoint::infinity()
    }

    #[test]
    fn four_point_examples() {
        assert_eq!(cross_ratio4(&p1(-1), &p1(0), &p1(1), &inf()).unwrap(), p1(-1));
        assert_eq!(cross_ratio4(&p1(0), &p1(1), &p1(2), &p1(3)).unwrap(), p1q(-1, 3));
        for (b, d) in [(7, 5), (-3, 11), (0, 1)] {
            let mid = p1q(b + d, 2);
            assert_eq!(cross_ratio4(&inf(), &p1(b), &mid, &p1(d)).unwrap(), p1(-1));
        }
        assert_eq!(
            cross_ratio4(&p1(2), &p1(2), &p1(2), &p1(5)),
            Err(GeomError::IndeterminateCrossRatio)
        );
    }

    #[test]
    fn infinite_value() {
        // b = c puts a zero in the denominator only
        assert_eq!(cross_ratio4(&p1(0), &p1(1), &p1(1), &p1(3)).unwrap(), inf());
    }

    #[test]
    fn six_point_examples() {
        let r = cross_ratio6(&p1(1), &p1q(11, 6), &p1q(34, 9), &p1(3), &p1q(11, 6), &p1q(2, 3));
        assert_eq!(r.unwrap(), p1(-1));
        let r = cross_ratio6(&inf(), &p1(5), &p1(7), &p1q(46, 6), &p1(5), &p1(-3));
        assert_eq!(r.unwrap(), p1(-1));
        let r = cross_ratio6(&p1(1), &p1(1), &p1(1), &p1(2), &p1(3), &p1(4));
        assert_eq!(r, Err(GeomError::IndeterminateCrossRatio));
    }

    #[test]
    fn harmonic4_examples() {
        assert_eq!(solve_harmonic4(&inf(), &p1(7), &p1(5)).unwrap(), p1(6));
        assert_eq!(solve_harmonic4(&p1(0), &p1(1), &p1(-1)).unwrap(), inf());
        assert_eq!(solve_harmonic4(&p1(5), &p1(6), &p1(1)).unwrap(), p1q(23, 3));
        assert_eq!(solve_harmonic4(&p1(4), &p1(4), &p1(4)), Err(GeomError::ZeroDenominator));
    }

    #[test]
    fn harmonic6_examples() {
        assert_eq!(solve_harmonic6(&inf(), &p1(1), &p1(6), &p1(1), &p1(2)).unwrap(), p1q(11, 6));
        assert_eq!(solve_harmonic6(&inf(), &p1(5), &p1(7), &p1(5), &p1(-3)).unwrap(), p1q(23, 3));
        let d = solve_harmonic6(&p1(1), &p1q(11, 6), &p1q(34, 9), &p1q(11, 6), &p1q(2, 3)).unwrap();
        assert_eq!(d, p1(3));
    }

    #[test]
    fn solve_in_degenerate_quotient_still_satisfies_relation() {
        // b = d = 3: the quotient is 0/0 for every c, but the linear
        // relation singles out c = 3.
        let c = solve_harmonic4(&p1q(34, 9), &p1(3), &p1(3)).unwrap();
        assert_eq!(c, p1(3));
        assert!(harmonic4_relation(&p1q(34, 9), &p1(3), &c, &p1(3)));
    }
}
