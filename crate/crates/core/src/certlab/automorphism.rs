use serde::{Deserialize, Serialize};

use super::rational::{NowhereZero, RationalMap};
use crate::error::{Error, Result};
use crate::{Poly, PolyMap, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Both compositions equal the identity as polynomial maps.
    ExactIdentity,
    /// Both compositions equal the identity after clearing denominators.
    FractionFieldIdentity,
}

/// An everywhere-defined map with an everywhere-defined inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    forward: RationalMap,
    inverse: RationalMap,
    verification: Verification,
}

impl Automorphism {
    /// Checks both composition identities before accepting the pair.
    pub fn new(forward: RationalMap, inverse: RationalMap) -> Result<Self> {
        let verification = check_pair(&forward, &inverse)?;
        Ok(Automorphism {
            forward,
            inverse,
            verification,
        })
    }

    /// Assembles a pair without checking; `verify` must be called before trusting it.
    pub fn from_parts_unchecked(forward: RationalMap, inverse: RationalMap, verification: Verification) -> Self {
        Automorphism {
            forward,
            inverse,
            verification,
        }
    }

    pub fn polynomial(forward: PolyMap, inverse: PolyMap) -> Result<Self> {
        Self::new(RationalMap::polynomial(&forward), RationalMap::polynomial(&inverse))
    }

    /// `x -> A x + b`.
    pub fn affine(a: &RatMatrix, b: &[Rational]) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "affine map needs a square matrix and matching shift, got {}x{} and {}",
                a.rows(),
                a.cols(),
                b.len()
            )));
        }
        let ainv = a.inverse()?;
        let minus_b: Vec<Rational> = b.iter().map(|c| -c.clone()).collect();
        let shifted = ainv.mul_vec(&minus_b)?;
        let forward = affine_map(a, b);
        let inverse = affine_map(&ainv, &shifted);
        Ok(Automorphism {
            forward: RationalMap::polynomial(&forward),
            inverse: RationalMap::polynomial(&inverse),
            verification: Verification::ExactIdentity,
        })
    }

    pub fn linear(a: &RatMatrix) -> Result<Self> {
        Self::affine(a, &vec![Rational::from_integer(0.into()); a.rows()])
    }

    /// `x -> x + c`.
    pub fn translation(c: &[Rational]) -> Self {
        Self::affine(&RatMatrix::scalar_identity(c.len()), c).expect("identity is invertible")
    }

    /// `x -> (x_{perm[0]}, x_{perm[1]}, ...)`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let a = RatMatrix::from_fn(n, n, |i, j| Rational::from_integer(((perm[i] == j) as i64).into()));
        Self::linear(&a)
    }

    pub fn forward(&self) -> &RationalMap {
        &self.forward
    }

    pub fn inverse(&self) -> &RationalMap {
        &self.inverse
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    pub fn dim(&self) -> usize {
        self.forward.nvars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.forward.is_polynomial() && self.inverse.is_polynomial()
    }

    /// Weakest denominator status of the two directions.
    pub fn status(&self) -> NowhereZero {
        self.forward.status().min(self.inverse.status())
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            verification: self.verification,
        }
    }

    /// Recomputes both identities; the stored tag must match.
    pub fn verify(&self) -> Result<()> {
        let v = check_pair(&self.forward, &self.inverse)?;
        if v != self.verification {
            return Err(Error::Precondition(format!(
                "automorphism tagged {:?} but verifies as {:?}",
                self.verification, v
            )));
        }
        Ok(())
    }
}

fn affine_map(a: &RatMatrix, b: &[Rational]) -> PolyMap {
    let n = a.cols();
    let comps = (0..a.rows())
        .map(|i| {
            let mut p = Poly::constant(n, b[i].clone());
            for j in 0..n {
                p.add_term(crate::polycore::Monomial::var(j), a.get(i, j).clone());
            }
            p
        })
        .collect();
    PolyMap::new(n, comps).expect("consistent")
}

fn check_pair(forward: &RationalMap, inverse: &RationalMap) -> Result<Verification> {
    let n = forward.nvars();
    if forward.len() != n || inverse.nvars() != n || inverse.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "automorphism parts have shapes {}->{} and {}->{}",
            forward.nvars(),
            forward.len(),
            inverse.nvars(),
            inverse.len()
        )));
    }
    let fi = forward.compose(inverse)?;
    let inf = inverse.compose(forward)?;
    if !fi.is_identity() || !inf.is_identity() {
        return Err(Error::Precondition("automorphism parts are not mutually inverse".into()));
    }
    Ok(if forward.is_polynomial() && inverse.is_polynomial() {
        Verification::ExactIdentity
    } else {
        Verification::FractionFieldIdentity
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn affine_and_shear() {
        let a = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(5)]]).unwrap();
        let aut = Automorphism::affine(&a, &[int(1), int(-1)]).unwrap();
        assert_eq!(aut.verification(), Verification::ExactIdentity);
        assert!(aut.verify().is_ok());
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let fwd = PolyMap::square(vec![x.clone(), &y + &x.pow(3)]).unwrap();
        let inv = PolyMap::square(vec![x.clone(), &y - &x.pow(3)]).unwrap();
        assert!(Automorphism::polynomial(fwd.clone(), inv).is_ok());
        assert!(Automorphism::polynomial(fwd.clone(), fwd).is_err());
    }

    #[test]
    fn permutation_swaps() {
        let p = Automorphism::permutation(&[1, 0]).unwrap();
        let v = p.forward().eval(&[int(3), int(4)]).unwrap().unwrap();
        assert_eq!(v, vec![int(4), int(3)]);
    }
}
