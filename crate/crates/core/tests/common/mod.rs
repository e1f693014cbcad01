#![allow(dead_code)]

pub mod fourier_motzkin;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vanishlab::{ExponentVector, LaurentPoly, Point, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, count: usize, lo: i64, hi: i64) -> Vec<Point> {
    (0..count)
        .map(|_| Point::from_ints(&(0..n).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>()))
        .collect()
}

/// A nonzero coefficient in -3..=3.
pub fn coeff(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            return int(c);
        }
    }
}

/// Random polynomial in one variable of exact degree `d`.
pub fn univariate(rng: &mut ChaCha8Rng, d: i64) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(ExponentVector::new(vec![d]), coeff(rng));
    for j in 0..d {
        if rng.gen_bool(0.6) {
            p = &p + &LaurentPoly::monomial(ExponentVector::new(vec![j]), coeff(rng));
        }
    }
    p
}

/// Random polynomial with exponents in `lo..=hi` per variable.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, terms: usize, lo: i64, hi: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    for _ in 0..terms {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        p = &p + &LaurentPoly::monomial(ExponentVector::new(e), coeff(rng));
    }
    p
}
