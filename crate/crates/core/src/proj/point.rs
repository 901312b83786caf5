use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{GeomError, Result};
use crate::linalg::{primitive, primitive_rational};
use crate::rational::{format_rational, Rational};

/// A point of real projective space P^m with rational coordinates.
///
/// Coordinates are stored as coprime integers whose first nonzero entry is
/// positive, so two values are the same projective point exactly when they
/// compare equal. The last coordinate is the affine weight: an affine point
/// `(x_1, ..., x_m)` is `(x_1, ..., x_m, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Canonicalizes a nonzero integer vector with at least two entries.
    pub fn from_ints(coords: &[BigInt]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::InvalidInput(
                "projective point needs at least two coordinates".into(),
            ));
        }
        primitive(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| GeomError::InvalidInput("zero homogeneous vector".into()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_ints(&v)
    }

    pub fn from_homogeneous(coords: &[Rational]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::InvalidInput(
                "projective point needs at least two coordinates".into(),
            ));
        }
        primitive_rational(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| GeomError::InvalidInput("zero homogeneous vector".into()))
    }

    /// Embeds an affine point by appending weight 1.
    pub fn affine(coords: &[Rational]) -> Self {
        assert!(!coords.is_empty(), "affine point needs coordinates");
        let mut h = coords.to_vec();
        h.push(Rational::one());
        Self::from_homogeneous(&h).expect("weight 1 is nonzero")
    }

    pub fn affine2(x: Rational, y: Rational) -> Self {
        Self::affine(&[x, y])
    }

    /// A finite point of P^1.
    pub fn finite1(x: Rational) -> Self {
        Self::affine(&[x])
    }

    /// The point at infinity of P^1.
    pub fn infinity() -> Self {
        ProjPoint {
            coords: vec![BigInt::one(), BigInt::zero()],
        }
    }

    /// Projective dimension m (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn homogeneous(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    pub fn weight(&self) -> &BigInt {
        self.coords.last().expect("nonempty")
    }

    pub fn is_finite(&self) -> bool {
        !self.weight().is_zero()
    }

    /// Affine coordinates, or `None` for a point at infinity.
    pub fn to_affine(&self) -> Option<Vec<Rational>> {
        let w = self.weight();
        if w.is_zero() {
            return None;
        }
        let m = self.dim();
        Some(
            self.coords[..m]
                .iter()
                .map(|c| Rational::new(c.clone(), w.clone()))
                .collect(),
        )
    }

    pub fn try_affine(&self) -> Result<Vec<Rational>> {
        self.to_affine().ok_or(GeomError::InfiniteVertex)
    }

    /// The affine value of a finite point of P^1.
    pub fn value(&self) -> Option<Rational> {
        debug_assert_eq!(self.dim(), 1);
        self.to_affine().map(|mut v| v.remove(0))
    }

    pub fn check_dim(&self, m: usize) -> Result<()> {
        if self.dim() == m {
            Ok(())
        } else {
            Err(GeomError::DimensionMismatch {
                expected: m,
                got: self.dim(),
            })
        }
    }

    /// Text form: `"inf"` for infinity of P^1, otherwise the affine
    /// coordinates, or `[X:Y:...:W]` for other points at infinity.
    pub fn to_text(&self) -> String {
        match self.to_affine() {
            Some(v) if v.len() == 1 => format_rational(&v[0]),
            Some(v) => format!(
                "({})",
                v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
            ),
            None if self.dim() == 1 => "inf".to_string(),
            None => format!(
                "[{}]",
                self.coords
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(":")
            ),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shorthand for a finite point of P^1 from an integer.
pub fn p1(x: i64) -> ProjPoint {
    ProjPoint::finite1(Rational::from_integer(BigInt::from(x)))
}

/// Shorthand for a finite point of P^1 from a fraction.
pub fn p1q(n: i64, d: i64) -> ProjPoint {
    ProjPoint::finite1(crate::rational::ratio(n, d))
}

/// Shorthand for an affine point of the plane from fractions `(xn/xd, yn/yd)`.
pub fn p2q(xn: i64, xd: i64, yn: i64, yd: i64) -> ProjPoint {
    use crate::rational::ratio;
    ProjPoint::affine2(ratio(xn, xd), ratio(yn, yd))
}

/// Shorthand for an integer affine point of the plane.
pub fn p2(x: i64, y: i64) -> ProjPoint {
    p2q(x, 1, y, 1)
}
