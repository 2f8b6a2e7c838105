use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, MoveKind};
use crate::{rng, Rational};

const MAX_ATTEMPTS: u64 = 16;

/// How the Segre parameter is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SegreParameter {
    #[default]
    Random,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportReport {
    pub pass: bool,
    pub samples: usize,
    pub matches: usize,
    pub resampled: usize,
    /// `(sample, move)` of the first mismatch; `move == moves.len()` is the target.
    pub first_mismatch: Option<(usize, usize)>,
    pub seed: u64,
}

enum Outcome {
    Match,
    Mismatch(usize),
    Undefined,
}

fn nonzero_rational<R: Rng>(r: &mut R) -> Rational {
    loop {
        let t = rng::small_rational(r, 9, 5);
        if !num_traits::Zero::is_zero(&t) {
            return t;
        }
    }
}

fn transport_one(c: &Certificate, seed: u64, index: u64, segre_t: SegreParameter) -> Outcome {
    let mut r = rng::stream(seed, index);
    let mut x = rng::rational_point(&mut r, c.source.nvars(), 20, 8);
    let Ok(mut y) = c.source.eval(&x) else {
        return Outcome::Mismatch(0);
    };
    for (k, m) in c.moves.iter().enumerate() {
        match &m.kind {
            MoveKind::ExtendFreshVars { count } => {
                let z = rng::rational_point(&mut r, *count, 20, 8);
                x.extend(z.iter().cloned());
                y.extend(z);
            }
            MoveKind::PostCompose(a) => match a.forward().eval(&y) {
                Ok(Some(v)) => y = v,
                Ok(None) => return Outcome::Undefined,
                Err(_) => return Outcome::Mismatch(k),
            },
            MoveKind::PreCompose(b) => match b.inverse().eval(&x) {
                Ok(Some(v)) => x = v,
                Ok(None) => return Outcome::Undefined,
                Err(_) => return Outcome::Mismatch(k),
            },
            MoveKind::SegreExtend => {
                let t = match segre_t {
                    SegreParameter::Random => nonzero_rational(&mut r),
                    SegreParameter::One => Rational::from_integer(1.into()),
                };
                for v in x.iter_mut().chain(y.iter_mut()) {
                    *v = v.clone() / t.clone();
                }
                x.push(t.clone());
                y.push(t);
            }
        }
        if m.result.eval(&x).ok().as_ref() != Some(&y) {
            return Outcome::Mismatch(k);
        }
    }
    if c.target.eval(&x).ok().as_ref() != Some(&y) {
        return Outcome::Mismatch(c.moves.len());
    }
    Outcome::Match
}

/// Pushes sampled points and their images through every move and checks
/// that each intermediate map sends the transported point to the
/// transported image.
pub fn fiber_transport_check(c: &Certificate, seed: u64, samples: usize) -> TransportReport {
    fiber_transport_check_with(c, seed, samples, SegreParameter::Random)
}

pub fn fiber_transport_check_with(
    c: &Certificate,
    seed: u64,
    samples: usize,
    segre_t: SegreParameter,
) -> TransportReport {
    let results: Vec<(Option<usize>, usize, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            for attempt in 0..MAX_ATTEMPTS {
                match transport_one(c, seed, i * MAX_ATTEMPTS + attempt, segre_t) {
                    Outcome::Match => return (None, attempt as usize, true),
                    Outcome::Mismatch(k) => return (Some(k), attempt as usize, false),
                    Outcome::Undefined => continue,
                }
            }
            (None, MAX_ATTEMPTS as usize, false)
        })
        .collect();
    let matches = results.iter().filter(|r| r.2).count();
    let resampled = results.iter().map(|r| r.1).sum();
    let first_mismatch = results
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.0.map(|k| (i, k)));
    TransportReport {
        pass: matches == samples,
        samples,
        matches,
        resampled,
        first_mismatch,
        seed,
    }
}
