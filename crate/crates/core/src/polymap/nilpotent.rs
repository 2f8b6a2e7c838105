use rand::Rng;
use serde::{Deserialize, Serialize};

use super::jacobian::jacobian_mod_p;
use super::PolyMap;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::modp::{rational_mod, sub_mod, P61};
use crate::{rng, Poly, PolyMatrix, RatMatrix, Rational};

/// Dimension up to which numeric specializations use exact rational powers.
const DENSE_NUMERIC_DIM: usize = 48;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Nilpotency {
    /// `M^n = 0` verified by exact multiplication.
    Nilpotent,
    /// A sound refutation. `witness` is a point where the specialized matrix
    /// is not nilpotent, absent when the refutation came from exact powers.
    NotNilpotent { witness: Option<Vec<String>> },
    /// Every sampled specialization looked nilpotent; not a proof.
    UnknownLeaningTrue { samples: usize },
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> Option<bool> {
        match self {
            Nilpotency::Nilpotent => Some(true),
            Nilpotency::NotNilpotent { .. } => Some(false),
            Nilpotency::UnknownLeaningTrue { .. } => None,
        }
    }
}

fn candidate_points(n: usize, seed: u64, count: usize) -> impl Iterator<Item = Vec<Rational>> {
    let ones = vec![Rational::from_integer(1.into()); n];
    std::iter::once(ones).chain((0..count as u64).map(move |i| {
        let mut r = rng::stream(seed, i);
        rng::int_point(&mut r, n, 20)
    }))
}

fn numeric_nilpotent(m: &RatMatrix) -> bool {
    let n = m.rows();
    let mut p = m.clone();
    for _ in 1..n {
        if p.is_zero() {
            return true;
        }
        p = p.mul(m).expect("square");
    }
    p.is_zero()
}

fn fmt_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

/// Nilpotency of a square polynomial matrix.
///
/// Seeded numeric specializations are tried first; any non-nilpotent
/// specialization refutes. Exact powers then decide within the budget.
pub fn is_nilpotent(m: &PolyMatrix, budget: &Budget, seed: u64) -> Result<Nilpotency> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Nilpotency::Nilpotent);
    }
    let nvars = m.get(0, 0).nvars();
    let tries = budget.samples.clamp(1, 16);
    for pt in candidate_points(nvars, seed, tries) {
        let spec = m.map(|p: &Poly| p.eval(&pt).expect("arity"));
        if !numeric_nilpotent(&spec) {
            return Ok(Nilpotency::NotNilpotent {
                witness: Some(fmt_point(&pt)),
            });
        }
    }
    if n > budget.exact_nilpotent_dim {
        return Ok(Nilpotency::UnknownLeaningTrue { samples: tries + 1 });
    }
    let mut p = m.clone();
    for _ in 1..n {
        if p.is_zero() {
            return Ok(Nilpotency::Nilpotent);
        }
        budget.check_time("exact nilpotency")?;
        p = p.mul(m)?;
    }
    Ok(if p.is_zero() {
        Nilpotency::Nilpotent
    } else {
        Nilpotency::NotNilpotent { witness: None }
    })
}

/// `J(H)` for `F = X + H`.
pub fn nonlinear_jacobian(f: &PolyMap) -> Result<PolyMatrix> {
    f.check_square()?;
    let n = f.nvars();
    let j = f.jacobian();
    Ok(PolyMatrix::from_fn(n, n, |i, k| {
        let e = j.get(i, k);
        if i == k {
            e - &Poly::one(n)
        } else {
            e.clone()
        }
    }))
}

/// Nilpotency of `J(H)` for `F = X + H`, with a sparse modular path for
/// large maps. A nonzero `J(H)(p)^n v mod q` is a sound refutation.
pub fn jh_nilpotency(f: &PolyMap, budget: &Budget, seed: u64) -> Result<Nilpotency> {
    f.check_square()?;
    let n = f.nvars();
    if n <= DENSE_NUMERIC_DIM {
        return is_nilpotent(&nonlinear_jacobian(f)?, budget, seed);
    }
    let tries = budget.samples.clamp(1, 16);
    for pt in candidate_points(n, seed, tries) {
        if let Some(true) = krylov_refutes(f, &pt, seed) {
            return Ok(Nilpotency::NotNilpotent {
                witness: Some(fmt_point(&pt)),
            });
        }
    }
    if n <= budget.exact_nilpotent_dim {
        return is_nilpotent(&nonlinear_jacobian(f)?, budget, seed);
    }
    Ok(Nilpotency::UnknownLeaningTrue { samples: tries + 1 })
}

/// `Some(true)` when `(J(F)(pt) - I)^n v != 0 mod p` for a seeded `v`.
pub fn krylov_refutes(f: &PolyMap, pt: &[Rational], seed: u64) -> Option<bool> {
    let n = f.nvars();
    let p = P61;
    let ptm: Vec<u64> = pt.iter().map(|r| rational_mod(r, p)).collect::<Option<_>>()?;
    let jm = jacobian_mod_p(f, &ptm, p)?;
    let mut r = rng::stream(seed ^ 0x6b72_796c, 0);
    let mut v: Vec<u64> = (0..n).map(|_| r.gen_range(1..p)).collect();
    for _ in 0..n {
        let jv = jm.mul_vec(&v);
        v = jv.iter().zip(&v).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        if v.iter().all(|&x| x == 0) {
            return Some(false);
        }
    }
    Some(v.iter().any(|&x| x != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn examples() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let b = Budget::default();
        let tri = PolyMap::square(vec![y.pow(3), Poly::zero(2)]).unwrap();
        assert_eq!(is_nilpotent(tri.jacobian(), &b, 1).unwrap(), Nilpotency::Nilpotent);

        let cube = PolyMap::square(vec![x.pow(3), Poly::zero(2)]).unwrap();
        match is_nilpotent(cube.jacobian(), &b, 1).unwrap() {
            Nilpotency::NotNilpotent { witness: Some(w) } => assert_eq!(w[0], "1"),
            other => panic!("{other:?}"),
        }
        let z = PolyMatrix::zeros(3, 3, Poly::zero(2));
        assert_eq!(is_nilpotent(&z, &b, 1).unwrap(), Nilpotency::Nilpotent);
    }

    #[test]
    fn jh_of_triangular_yagzhev() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x + &y.pow(3), y]).unwrap();
        assert_eq!(jh_nilpotency(&f, &Budget::default(), 3).unwrap(), Nilpotency::Nilpotent);
        let g = PolyMap::square(vec![&x + &x.pow(3), Poly::var(2, 1)]).unwrap();
        assert!(krylov_refutes(&g, &[int(1), int(1)], 0).unwrap());
    }
}
