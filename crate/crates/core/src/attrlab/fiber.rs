use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::certlab::Automorphism;
use crate::elimination::{count_real_roots, squarefree_part, subresultant_prs, to_bivariate, UniPoly};
use crate::error::{Error, Result};
use crate::{rng, Poly, PolyMap, QUniPoly, RatMatrix, Rational};

/// Variable eliminated by the resultant; fibers are read off in `x_0`.
const ELIMINATED: usize = 1;
pub(crate) const ROTATION_RETRIES: u64 = 5;

/// A plane map pre-composed with an invertible linear change of coordinates.
#[derive(Clone, Debug)]
pub struct Rotation {
    pub matrix: RatMatrix,
    pub map: PolyMap,
}

impl Rotation {
    pub fn automorphism(&self) -> Automorphism {
        Automorphism::linear(&self.matrix).expect("rotation is invertible")
    }
}

fn check_plane(f: &PolyMap) -> Result<()> {
    f.check_square()?;
    if f.nvars() != 2 {
        return Err(Error::Precondition(format!(
            "plane map expected, got dimension {}",
            f.nvars()
        )));
    }
    Ok(())
}

/// Constant leading coefficient in the eliminated variable.
fn monic_like(p: &Poly) -> bool {
    p.coefficients_in(ELIMINATED).last().is_some_and(|c| c.is_constant() && !c.is_zero())
}

fn rotation_matrix(seed: u64, attempt: u64) -> RatMatrix {
    let one = Rational::from_integer(1.into());
    if attempt == 0 {
        return RatMatrix::scalar_identity(2);
    }
    let mut r = rng::stream(seed ^ 0x726f_7461, attempt);
    loop {
        let a = rng::int_in(&mut r, 3);
        let b = rng::int_in(&mut r, 3);
        if a.clone() * b.clone() != one {
            return RatMatrix::from_rows(vec![vec![one.clone(), a], vec![b, one.clone()]]).expect("2x2");
        }
    }
}

/// `F ∘ R` for the first seeded `R` (the identity first) under which at
/// least one component has a constant leading coefficient in the eliminated
/// variable. Attempts `skip..` are tried, so callers can ask for a second,
/// different rotation.
pub fn generic_rotation_from(f: &PolyMap, seed: u64, skip: u64) -> Result<(Rotation, u64)> {
    check_plane(f)?;
    for attempt in skip..skip + ROTATION_RETRIES {
        let matrix = rotation_matrix(seed, attempt);
        let rot = f.compose(&crate::gzpair::linear_map(&matrix))?;
        if rot.components().iter().any(monic_like) {
            return Ok((Rotation { matrix, map: rot }, attempt));
        }
    }
    Err(Error::RetriesExhausted(format!(
        "no generic rotation within {ROTATION_RETRIES} attempts"
    )))
}

pub fn generic_rotation(f: &PolyMap, seed: u64) -> Result<Rotation> {
    generic_rotation_from(f, seed, 0).map(|r| r.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecializedFiber {
    pub target: [String; 2],
    /// Squarefree part of the specialized resultant, ascending coefficients.
    pub resultant_sf: Vec<String>,
    pub real_count: usize,
    pub complex_count: usize,
}

/// Fiber sizes of a rotated plane map over `target`.
///
/// Every root `a` of the squarefree resultant carries exactly one fiber
/// point when some polynomial combination `s1(x0) x1 + s0(x0)` of the
/// shifted components has `gcd(s1, r) = 1`: then `x1 = -s0(a)/s1(a)`,
/// which is real whenever `a` is. The check is exact; failure is reported
/// as a genericity violation.
pub fn fiber_count_real(rot: &Rotation, target: &[Rational; 2]) -> Result<SpecializedFiber> {
    let g = &rot.map;
    let n = g.nvars();
    let shifted: Vec<Poly> = g
        .components()
        .iter()
        .zip(target)
        .map(|(p, c)| p - &Poly::constant(n, c.clone()))
        .collect();
    if !shifted.iter().any(monic_like) {
        return Err(Error::Genericity("no component has a constant leading coefficient".into()));
    }
    // Nonzero rational multiples change neither roots nor gcds, and the
    // PRS is far cheaper over the integers.
    let a = integral(&shifted[0])?;
    let b = integral(&shifted[1])?;
    let prs = subresultant_prs(&a, &b);
    if prs.resultant.is_zero() {
        return Err(Error::Genericity("specialized resultant vanishes identically".into()));
    }
    let sf = squarefree_part(&rational(&prs.resultant))?;
    let separating = [&a, &b]
        .into_iter()
        .chain(prs.members.iter())
        .filter(|m| m.degree() == Some(1))
        .any(|m| m.lc().is_some_and(|s1| coprime(&rational(s1), &sf)));
    let complex_count = sf.degree().unwrap_or(0);
    if complex_count > 0 && !separating {
        return Err(Error::Genericity("fiber points are not separated by the first coordinate".into()));
    }
    Ok(SpecializedFiber {
        target: [target[0].to_string(), target[1].to_string()],
        resultant_sf: sf.coeffs().iter().map(ToString::to_string).collect(),
        real_count: count_real_roots(&sf)?,
        complex_count,
    })
}

/// `p` scaled to integer coefficients, as a polynomial in the eliminated
/// variable over `Z[x_0]`.
fn integral(p: &Poly) -> Result<UniPoly<UniPoly<BigInt>>> {
    let denom = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let scaled = p.scale(&Rational::from_integer(denom));
    let q = to_bivariate(&scaled, ELIMINATED, 0)?;
    let zero = UniPoly::new(Vec::new(), BigInt::from(0));
    Ok(q.map(zero, |c| c.map(BigInt::from(0), |r| r.to_integer())))
}

fn rational(p: &UniPoly<BigInt>) -> QUniPoly {
    QUniPoly::from_coeffs(p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn coprime(a: &QUniPoly, b: &QUniPoly) -> bool {
    a.gcd(b).degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn cube() -> PolyMap {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        PolyMap::square(vec![x.pow(3), y]).unwrap()
    }

    #[test]
    fn cube_fibers() {
        let rot = generic_rotation(&cube(), 1).unwrap();
        assert_eq!(rot.matrix, RatMatrix::scalar_identity(2));
        let fib = fiber_count_real(&rot, &[int(8), int(0)]).unwrap();
        assert_eq!((fib.real_count, fib.complex_count), (1, 3));

        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x.pow(3) - &x.scale(&int(3)), y]).unwrap();
        let fib = fiber_count_real(&generic_rotation(&f, 1).unwrap(), &[int(0), int(0)]).unwrap();
        assert_eq!(fib.real_count, 3);
    }

    #[test]
    fn rotation_needed_for_xy() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let f = PolyMap::square(vec![&x * &y, &x + &x.pow(2)]).unwrap();
        let rot = generic_rotation(&f, 4).unwrap();
        assert_ne!(rot.matrix, RatMatrix::scalar_identity(2));
        assert!(rot.map.components().iter().any(monic_like));
    }
}
