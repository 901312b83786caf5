//! The lower pentagram map on pairs of cyclic n-tuples of P^1.
//!
//! `(X, Y)` goes to `(Y, Z)` where `Z_i` is fixed by the six-point relation
//! `[X_i, Y_i, Y_{i-1}, Z_i, Y_i, Y_{i+1}] = -1`.

use crate::error::{GeomError, Result};
use crate::proj::{solve_harmonic6, ProjMap, ProjPoint};
use crate::rational::{mean, Rational};
use crate::rng::{distinct_rationals, seeded};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairState1D {
    x: Vec<ProjPoint>,
    y: Vec<ProjPoint>,
}

impl PairState1D {
    pub fn new(x: Vec<ProjPoint>, y: Vec<ProjPoint>) -> Result<Self> {
        if x.len() < 3 || x.len() != y.len() {
            return Err(GeomError::InvalidInput("need two tuples of equal length n >= 3".into()));
        }
        for p in x.iter().chain(&y) {
            p.check_dim(1)?;
        }
        if let Some(i) = (0..x.len()).find(|&i| x[i] == y[i]) {
            return Err(GeomError::Coincident.at_index(i));
        }
        Ok(PairState1D { x, y })
    }

    /// No validation: pairs read off frieze rows or orbits may repeat points.
    pub fn raw(x: Vec<ProjPoint>, y: Vec<ProjPoint>) -> Self {
        assert_eq!(x.len(), y.len());
        PairState1D { x, y }
    }

    /// `(infinity, ..., infinity)` paired with `b`.
    pub fn from_b(b: &AxisAlignedPair1) -> Self {
        PairState1D {
            x: vec![ProjPoint::infinity(); b.n()],
            y: b.points(),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[ProjPoint] {
        &self.x
    }

    pub fn y(&self) -> &[ProjPoint] {
        &self.y
    }

    pub fn map(&self, phi: &ProjMap) -> Result<Self> {
        let f = |v: &[ProjPoint]| v.iter().map(|p| phi.apply(p)).collect::<Result<Vec<_>>>();
        Ok(PairState1D {
            x: f(&self.x)?,
            y: f(&self.y)?,
        })
    }
}

fn cyc(v: &[ProjPoint], i: i64) -> &ProjPoint {
    &v[i.rem_euclid(v.len() as i64) as usize]
}

pub fn t1_step(s: &PairState1D) -> Result<PairState1D> {
    let n = s.n() as i64;
    let z = (0..n)
        .map(|i| {
            let yi = cyc(&s.y, i);
            solve_harmonic6(cyc(&s.x, i), yi, cyc(&s.y, i - 1), yi, cyc(&s.y, i + 1))
                .map_err(|e| e.at_index(i as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairState1D {
        x: s.y.clone(),
        y: z,
    })
}

pub fn t1_orbit(s: &PairState1D, steps: usize) -> Result<Vec<PairState1D>> {
    let mut out = vec![s.clone()];
    for k in 1..=steps {
        let next = t1_step(out.last().expect("nonempty")).map_err(|e| e.at_step(k))?;
        out.push(next);
    }
    Ok(out)
}

/// Center of mass of `B` relative to the constant tuple `A`: move `A_1` to
/// infinity, average, move back.
pub fn center_of_mass_p1(a: &[ProjPoint], b: &[ProjPoint]) -> Result<ProjPoint> {
    if a.is_empty() || a.len() != b.len() {
        return Err(GeomError::InvalidInput("tuples must be nonempty and of equal length".into()));
    }
    if a.iter().any(|p| *p != a[0]) {
        return Err(GeomError::NotAxisAligned);
    }
    let phi = match a[0].value() {
        None => ProjMap::identity(1),
        Some(a1) => ProjMap::inversion_at(&a1),
    };
    center_of_mass_p1_with(a, b, &phi)
}

/// As [`center_of_mass_p1`] with a caller-chosen map sending `A_1` to
/// infinity.
pub fn center_of_mass_p1_with(a: &[ProjPoint], b: &[ProjPoint], phi: &ProjMap) -> Result<ProjPoint> {
    if phi.apply(&a[0])?.is_finite() {
        return Err(GeomError::InvalidInput("chart must send A_1 to infinity".into()));
    }
    if let Some(i) = b.iter().position(|p| *p == a[0]) {
        return Err(GeomError::Coincident.at_index(i));
    }
    let values = b
        .iter()
        .map(|p| Ok(phi.apply(p)?.value().expect("only A_1 maps to infinity")))
        .collect::<Result<Vec<Rational>>>()?;
    phi.inverse().apply(&ProjPoint::finite1(mean(&values)))
}

/// A tuple `B` of finite points, paired implicitly with `X = (infinity, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisAlignedPair1 {
    b: Vec<Rational>,
}

impl AxisAlignedPair1 {
    pub fn new(b: Vec<Rational>) -> Result<Self> {
        if b.len() < 3 {
            return Err(GeomError::InvalidInput("need n >= 3".into()));
        }
        if b.iter().all(|q| *q == b[0]) {
            return Err(GeomError::Coincident);
        }
        Ok(AxisAlignedPair1 { b })
    }

    pub fn from_points(points: &[ProjPoint]) -> Result<Self> {
        let b = points
            .iter()
            .map(|p| {
                p.check_dim(1)?;
                p.value().ok_or(GeomError::InfiniteVertex)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(b)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.b
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.b.iter().cloned().map(ProjPoint::finite1).collect()
    }

    pub fn mean(&self) -> Rational {
        mean(&self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerReport {
    pub steps_taken: usize,
    /// The pair after `n - 1` steps. Its first component is reported only.
    pub final_pair: PairState1D,
    pub constant: bool,
    pub value: ProjPoint,
    pub mean: ProjPoint,
    pub matched: bool,
}

/// Runs `n - 1` steps from `(infinity, B)` and checks that the second tuple
/// is constant and equal to the mean of `B`.
pub fn verify_lower_collapse(b: &AxisAlignedPair1) -> Result<LowerReport> {
    let n = b.n();
    let orb = t1_orbit(&PairState1D::from_b(b), n - 1)?;
    let final_pair = orb.last().expect("nonempty").clone();
    let value = final_pair.y[0].clone();
    let constant = final_pair.y.iter().all(|p| *p == value);
    let expected = ProjPoint::finite1(b.mean());
    Ok(LowerReport {
        steps_taken: n - 1,
        matched: constant && value == expected,
        constant,
        value,
        mean: expected,
        final_pair,
    })
}

pub fn random_b(n: usize, seed: u64, range: i64) -> Result<AxisAlignedPair1> {
    if n < 3 || range < 1 {
        return Err(GeomError::InvalidInput("need n >= 3 and range >= 1".into()));
    }
    let values = distinct_rationals(&mut seeded(seed), n, range).ok_or(GeomError::ExhaustedSampling)?;
    AxisAlignedPair1::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{cross_ratio6, p1, p1q};
    use crate::rational::rat;

    fn pair(b: &[i64]) -> AxisAlignedPair1 {
        AxisAlignedPair1::new(b.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    /// `(Y_i^2 - Y_{i-1} Y_{i+1}) / (2 Y_i - Y_{i-1} - Y_{i+1})`, valid when
    /// `X_i` is infinite.
    fn closed_form(y: &[Rational]) -> Vec<Rational> {
        let n = y.len();
        (0..n)
            .map(|i| {
                let (l, c, r) = (&y[(i + n - 1) % n], &y[i], &y[(i + 1) % n]);
                (c * c - l * r) / (c + c - l - r)
            })
            .collect()
    }

    #[test]
    fn first_steps_on_small_examples() {
        let s = t1_step(&PairState1D::from_b(&pair(&[1, 2, 6]))).unwrap();
        assert_eq!(s.y(), &[p1q(11, 6), p1q(2, 3), p1q(34, 9)]);
        assert_eq!(s.x(), &[p1(1), p1(2), p1(6)]);
        for i in 0..3 {
            let r = cross_ratio6(&ProjPoint::infinity(), &s.x()[i], &s.x()[(i + 2) % 3], &s.y()[i], &s.x()[i], &s.x()[(i + 1) % 3]);
            assert_eq!(r.unwrap(), p1(-1));
        }
        let s2 = t1_step(&s).unwrap();
        assert_eq!(s2.y(), &[p1(3), p1(3), p1(3)]);

        let t = t1_step(&PairState1D::from_b(&pair(&[7, 5, -3]))).unwrap();
        let expected: Vec<ProjPoint> = closed_form(&[rat(7), rat(5), rat(-3)]).into_iter().map(ProjPoint::finite1).collect();
        assert_eq!(t.y(), expected.as_slice());
        assert_eq!(t.y(), &[p1q(16, 3), p1q(23, 3), p1q(13, 9)]);
    }

    #[test]
    fn center_of_mass_examples() {
        let inf = vec![ProjPoint::infinity(); 3];
        assert_eq!(center_of_mass_p1(&inf, &[p1(1), p1(2), p1(6)]).unwrap(), p1(3));
        assert_eq!(center_of_mass_p1(&inf, &[p1(7), p1(5), p1(-3)]).unwrap(), p1(3));
        assert_eq!(center_of_mass_p1(&vec![p1(0); 3], &vec![p1(1); 3]).unwrap(), p1(1));
        assert!(matches!(center_of_mass_p1(&[p1(0), p1(1), p1(0)], &vec![p1(2); 3]), Err(GeomError::NotAxisAligned)));
        assert!(center_of_mass_p1(&vec![p1(2); 3], &[p1(2), p1(3), p1(4)]).is_err());
    }

    #[test]
    fn center_of_mass_chart_independence() {
        let a = vec![p1(2); 4];
        let b = vec![p1(5), p1q(-1, 3), p1(7), p1(0)];
        let phi = ProjMap::mobius(rat(3), rat(1), rat(1), rat(-2)).unwrap();
        assert_eq!(center_of_mass_p1_with(&a, &b, &phi).unwrap(), center_of_mass_p1(&a, &b).unwrap());
    }

    #[test]
    fn verifier_examples() {
        let r = verify_lower_collapse(&pair(&[1, 2, 6])).unwrap();
        assert!(r.matched);
        assert_eq!(r.steps_taken, 2);
        assert!(verify_lower_collapse(&pair(&[7, 5, -3])).unwrap().matched);
        let b = random_b(6, 4, 20).unwrap();
        let r = verify_lower_collapse(&b).unwrap();
        assert!(r.matched);
        assert_eq!(r.value, ProjPoint::finite1(b.mean()));
    }

    #[test]
    fn infinite_entries_mid_orbit() {
        // 2*1 - 0 - 2 = 0 sends Z_2 to infinity
        let s = t1_step(&PairState1D::from_b(&pair(&[0, 1, 2]))).unwrap();
        assert_eq!(s.y()[1], ProjPoint::infinity());
        let r = verify_lower_collapse(&pair(&[0, 1, 2])).unwrap();
        assert!(r.matched);
    }

    #[test]
    fn random_b_is_deterministic() {
        assert_eq!(random_b(5, 9, 10).unwrap(), random_b(5, 9, 10).unwrap());
        assert!(random_b(2, 0, 10).is_err());
    }
}
