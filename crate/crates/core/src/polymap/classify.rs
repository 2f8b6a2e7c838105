use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jacobian::{det_at, det_mod_p_at, jacobian_det, Computed};
use super::PolyMap;
use crate::budget::Budget;
use crate::linalg::modp::P61;
use crate::polycore::{Degree, IntegerEvaluator};
use crate::{rng, Poly, Rational};

/// Largest dimension at which sampled determinants are computed exactly
/// over Q; above it they are computed modulo a prime.
const EXACT_NUMERIC_DIM: usize = 60;
/// A second prime confirms modular zeros before one is reported.
const Q2: u64 = 2_305_843_009_213_693_921;
const TRIALS: usize = 20;
/// Above this dimension a nonconstant `j` is detected by sampling before
/// any symbolic determinant is attempted.
const PROBE_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleVerdict {
    pub pass: bool,
    pub samples: usize,
    pub seed: u64,
    pub positive: usize,
    pub negative: usize,
    pub zero_at: Option<Vec<String>>,
    /// True when every sampled value was computed exactly over Q.
    pub exact_values: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub nondegenerate: bool,
    /// `exact` when `j` was computed symbolically or a nonzero value was
    /// found; `randomized` when "degenerate" rests on sampling alone.
    pub nondegenerate_method: String,
    /// Upper bound on the probability that a randomized "degenerate" is wrong.
    pub failure_bound: Option<f64>,
    pub keller: Tri,
    pub jacobian_constant: Option<String>,
    pub jacobian_exact: bool,
    pub nonsingular_sampled: SampleVerdict,
    pub jacobian_degree_bound: u32,
}

impl Classification {
    pub fn is_keller(&self) -> bool {
        self.keller == Tri::Yes
    }
}

/// Upper bound on `deg j(F)`: the sum of `deg f_i - 1`.
pub fn jacobian_degree_bound(f: &PolyMap) -> u32 {
    f.components()
        .iter()
        .map(|p| match p.degree() {
            Degree::Finite(d) => d.saturating_sub(1),
            Degree::NegInfinity => 0,
        })
        .sum()
}

/// Value of `j(F)` at a point (when exact) and whether it is nonzero.
/// Large maps use two primes; `exact` is false then.
fn numeric_det(f: &PolyMap, pt: &[Rational]) -> (Option<Rational>, bool) {
    if f.nvars() <= EXACT_NUMERIC_DIM {
        let d = det_at(f, pt).expect("square");
        let nz = !num_traits::Zero::is_zero(&d);
        (Some(d), nz)
    } else {
        let a = det_mod_p_at(f, pt, P61).expect("square");
        let nonzero = match a {
            Some(v) if v != 0 => true,
            _ => matches!(det_mod_p_at(f, pt, Q2).expect("square"), Some(v) if v != 0),
        };
        (None, nonzero)
    }
}

/// Exact/randomized classification of a square map.
pub fn classify(f: &PolyMap, seed: u64, budget: &Budget) -> crate::Result<Classification> {
    f.check_square()?;
    let n = f.nvars();
    let bound = jacobian_degree_bound(f);
    // two different values already refute Keller; skip the symbolic determinant
    let det = if n > PROBE_DIM && sampled_values_differ(f, seed, (10 * bound.max(1)) as i64) {
        Computed::Unknown {
            reason: "j takes two different values".into(),
        }
    } else {
        jacobian_det(f, budget)?
    };
    let (nondegenerate, method, failure_bound, keller, constant) = match &det {
        Computed::Exact(j) => {
            let nz = !j.is_zero();
            let c = j.as_constant();
            let keller = if nz && c.is_some() { Tri::Yes } else { Tri::No };
            (nz, "exact", None, keller, c.map(|c| c.to_string()))
        }
        Computed::Unknown { .. } => {
            // Schwartz-Zippel: box side 2*D*10 gives per-trial failure <= 1/10
            let half = (10 * bound.max(1)) as i64;
            let mut first: Option<Rational> = None;
            let mut nondeg = false;
            let mut differs = false;
            for i in 0..TRIALS as u64 {
                let mut r = rng::stream(seed ^ 0x5a5a, i);
                let pt = rng::int_point(&mut r, n, half);
                let (val, nz) = numeric_det(f, &pt);
                nondeg |= nz;
                if let Some(v) = val {
                    match &first {
                        None => first = Some(v),
                        Some(u) if *u != v => differs = true,
                        _ => {}
                    }
                }
            }
            if !differs && nondeg && n > EXACT_NUMERIC_DIM {
                differs = modular_values_differ(f, seed, half);
            }
            let keller = if !nondeg || differs { Tri::No } else { Tri::Unknown };
            if nondeg {
                (true, "exact", None, keller, None)
            } else {
                (false, "randomized", Some(0.1f64.powi(TRIALS as i32)), Tri::No, None)
            }
        }
    };
    let nonsingular = sample_nonsingularity(f, det.exact(), seed, budget.samples);
    Ok(Classification {
        nondegenerate,
        nondegenerate_method: method.into(),
        failure_bound,
        keller,
        jacobian_constant: constant,
        jacobian_exact: det.exact().is_some(),
        nonsingular_sampled: nonsingular,
        jacobian_degree_bound: bound,
    })
}

fn sampled_values_differ(f: &PolyMap, seed: u64, half: i64) -> bool {
    if f.nvars() > EXACT_NUMERIC_DIM {
        return modular_values_differ(f, seed, half);
    }
    let mut r = rng::stream(seed ^ 0x7072_6f62, 0);
    let a = det_at(f, &rng::int_point(&mut r, f.nvars(), half)).expect("square");
    let b = det_at(f, &rng::int_point(&mut r, f.nvars(), half)).expect("square");
    a != b
}

fn modular_values_differ(f: &PolyMap, seed: u64, half: i64) -> bool {
    let mut seen: Option<u64> = None;
    for i in 0..4u64 {
        let mut r = rng::stream(seed ^ 0xa5a5, i);
        let pt = rng::int_point(&mut r, f.nvars(), half);
        if let Ok(Some(v)) = det_mod_p_at(f, &pt, P61) {
            match seen {
                None => seen = Some(v),
                Some(u) if u != v => return true,
                _ => {}
            }
        }
    }
    false
}

/// Evaluates `j(F)` at `samples` seeded rational points, in parallel.
pub fn sample_nonsingularity(f: &PolyMap, j: Option<&Poly>, seed: u64, samples: usize) -> SampleVerdict {
    let n = f.nvars();
    let ev = j.map(IntegerEvaluator::new);
    let signs: Vec<(i32, Vec<Rational>)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            // the origin first: normalization and Segre moves revolve around it
            let pt = if i == 0 {
                vec![Rational::from_integer(0.into()); n]
            } else {
                let mut r = rng::stream(seed, i);
                rng::rational_point(&mut r, n, 100, 16)
            };
            let s = match &ev {
                Some(ev) => ev.sign(&pt),
                None => match numeric_det(f, &pt) {
                    (Some(v), _) => sign_of(&v),
                    // only nonzero-ness is known mod p
                    (None, true) => 2,
                    (None, false) => 0,
                },
            };
            (s, pt)
        })
        .collect();
    let positive = signs.iter().filter(|(s, _)| *s == 1).count();
    let negative = signs.iter().filter(|(s, _)| *s == -1).count();
    let zero_at = signs
        .iter()
        .find(|(s, _)| *s == 0)
        .map(|(_, p)| p.iter().map(ToString::to_string).collect());
    SampleVerdict {
        pass: zero_at.is_none(),
        samples,
        seed,
        positive,
        negative,
        zero_at,
        exact_values: ev.is_some() || n <= EXACT_NUMERIC_DIM,
    }
}

fn sign_of(v: &Rational) -> i32 {
    use num_traits::{Signed, Zero};
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
