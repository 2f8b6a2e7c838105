//! Seeded randomness. Every sampled quantity draws from a ChaCha stream
//! derived from `(seed, index)`, so parallel runs aggregate identically.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Rational;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `[-half, half]` as a rational.
pub fn int_in<R: Rng>(rng: &mut R, half: i64) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-half..=half)))
}

/// Rational `a/b` with `|a| <= num_half` and `1 <= b <= den_max`.
pub fn small_rational<R: Rng>(rng: &mut R, num_half: i64, den_max: i64) -> Rational {
    let a = rng.gen_range(-num_half..=num_half);
    let b = rng.gen_range(1..=den_max);
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int_point<R: Rng>(rng: &mut R, n: usize, half: i64) -> Vec<Rational> {
    (0..n).map(|_| int_in(rng, half)).collect()
}

pub fn rational_point<R: Rng>(rng: &mut R, n: usize, num_half: i64, den_max: i64) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng, num_half, den_max)).collect()
}
