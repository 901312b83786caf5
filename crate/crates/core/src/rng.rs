//! Seeded sampling of small rationals.
//!
//! All randomness flows from `ChaCha8Rng::seed_from_u64`, so a seed fixes an
//! instance on every platform.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-range, range]` and denominator in
/// `[1, range]`.
pub fn random_rational(rng: &mut SeededRng, range: i64) -> Rational {
    let range = range.max(1);
    let n = rng.gen_range(-range..=range);
    let d = rng.gen_range(1..=range);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_nonzero_rational(rng: &mut SeededRng, range: i64) -> Rational {
    loop {
        let q = random_rational(rng, range);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// `count` pairwise distinct rationals, or `None` if a bounded number of
/// draws did not produce enough of them.
pub fn distinct_rationals(rng: &mut SeededRng, count: usize, range: i64) -> Option<Vec<Rational>> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    for _ in 0..count * 64 + 64 {
        if out.len() == count {
            break;
        }
        let q = random_rational(rng, range);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    (out.len() == count).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = (0..5).map(|_| random_rational(&mut seeded(3), 9)).collect();
        let mut r = seeded(3);
        let first = random_rational(&mut r, 9);
        assert!(a.iter().all(|q| *q == first));
    }

    #[test]
    fn distinct_values_are_distinct() {
        let v = distinct_rationals(&mut seeded(1), 6, 3).unwrap();
        for i in 0..v.len() {
            for j in 0..i {
                assert_ne!(v[i], v[j]);
            }
        }
    }
}
