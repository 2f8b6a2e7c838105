use std::fmt;

use crate::error::{Error, Result};
use crate::polycore::{Monomial, SparsePoly};
use crate::scalar::{FieldScalar, Ring, Scalar};
use crate::Rational;

/// Dense univariate polynomial over a ring, coefficients in ascending degree.
///
/// The `zero` field is a template for the coefficient ring's zero, so
/// coefficient rings that carry shape (polynomials in a fixed number of
/// variables, nested univariates) work without a global zero.
#[derive(Clone, PartialEq)]
pub struct UniPoly<R = Rational> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(coeffs: Vec<R>, zero: R) -> Self {
        let mut p = UniPoly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(template: &R) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            zero: template.zero_like(),
        }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// The indeterminate itself.
    pub fn x(template: &R) -> Self {
        Self::new(vec![template.zero_like(), template.one_like()], template.zero_like())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_rzero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.rmul(at).radd(c);
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.rmul(c)).collect(), self.zero.clone())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero.clone(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly {
            coeffs,
            zero: self.zero.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.radd(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(coeffs, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::rneg).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_rzero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_rzero() {
                    coeffs[i + j] = coeffs[i + j].radd(&a.rmul(b));
                }
            }
        }
        Self::new(coeffs, self.zero.clone())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, computed without
    /// division in the coefficient ring.
    pub fn prem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lb = b.lc().expect("nonzero").clone();
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return Ok(self.clone()),
        };
        let mut r = self.clone();
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().expect("nonzero").clone();
            let scaled = r.scale(&lb);
            let sub = b.scale(&lr).shift(dr - db);
            r = scaled.sub(&sub);
            steps -= 1;
        }
        // remaining multiplications keep the lc(b)^(da-db+1) normalization
        if steps > 0 {
            r = r.scale(&lb.rpow(steps as u32));
        }
        Ok(r)
    }

    /// `self / b` when `b` divides exactly with quotients in the coefficient ring.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let lb = b.lc()?.clone();
        if self.is_zero() {
            return Some(self.clone());
        }
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let mut r = self.clone();
        let mut q = vec![self.zero.clone(); da - db + 1];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let c = r.lc().expect("nonzero").div_exact(&lb)?;
            r = r.sub(&b.scale(&c).shift(dr - db));
            q[dr - db] = c;
        }
        Some(Self::new(q, self.zero.clone()))
    }

    /// Coefficientwise map into another ring.
    pub fn map<T: Ring>(&self, zero: T, f: impl Fn(&R) -> T) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

impl<S: Scalar> UniPoly<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        Self::new(coeffs, S::zero())
    }

    /// Roots given, leading coefficient one.
    pub fn from_roots(roots: &[S]) -> Self {
        let mut p = Self::from_coeffs(vec![S::one()]);
        for r in roots {
            p = p.mul(&Self::from_coeffs(vec![-r.clone(), S::one()]));
        }
        p
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_int(i as i64))
                .collect(),
        )
    }

    /// Reads a polynomial involving at most `var` into univariate form.
    pub fn from_poly(p: &SparsePoly<S>, var: usize) -> Result<Self> {
        let mut coeffs = vec![S::zero(); p.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (m, c) in p.terms() {
            let (e, rest) = m.split_off(var);
            if !rest.is_one() {
                return Err(Error::Precondition(format!(
                    "polynomial involves variables other than x{var}"
                )));
            }
            coeffs[e as usize] = c.clone();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> SparsePoly<S> {
        SparsePoly::from_terms(
            nvars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var_pow(var, i as u32), c.clone())),
        )
    }
}

impl<S: FieldScalar> UniPoly<S> {
    /// Euclidean division.
    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = b.lc().expect("nonzero").inv();
        let mut r = self.clone();
        let mut q = vec![S::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc().expect("nonzero").clone() * &inv;
            r = r.sub(&b.scale(&c).shift(dr - db));
            // guard against float residue that fails to cancel
            if r.degree() == Some(dr) {
                r.coeffs.pop();
                r.trim();
            }
            q[dr - db] = c;
        }
        Ok((Self::from_coeffs(q), r))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.div_rem(b)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn is_rzero(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn rsub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn rmul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.exact_div(rhs)
    }
    fn size_hint(&self) -> usize {
        self.coeffs.iter().map(Ring::size_hint).sum::<usize>().max(1)
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

/// Polynomial in `outer` with univariate coefficients in `inner`, from a
/// polynomial that involves no other variable.
pub fn to_bivariate<S: Scalar>(
    p: &SparsePoly<S>,
    outer: usize,
    inner: usize,
) -> Result<UniPoly<UniPoly<S>>> {
    let zero = UniPoly::<S>::zero(&S::zero());
    let coeffs = p
        .coefficients_in(outer)
        .iter()
        .map(|c| UniPoly::from_poly(c, inner))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(coeffs, zero))
}

/// Polynomial in `var` with coefficients in the remaining variables (the
/// coefficients keep the ambient variable count).
pub fn to_univariate_over<S: Scalar>(p: &SparsePoly<S>, var: usize) -> UniPoly<SparsePoly<S>> {
    UniPoly::new(p.coefficients_in(var), SparsePoly::zero(p.nvars()))
}

#[cfg(test)]
mod tests {
    use crate::scalar::{int, rat};
    use crate::QUniPoly;

    fn q(c: &[i64]) -> QUniPoly {
        QUniPoly::from_coeffs(c.iter().map(|&n| int(n)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(q(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(q(&[0, 0]).degree(), None);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = q(&[-1, 0, 0, 1]);
        let b = q(&[1, 2]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn prem_matches_definition() {
        let a = q(&[1, 0, 3, 2]);
        let b = q(&[5, 2]);
        let r = a.prem(&b).unwrap();
        // lc(b)^3 * a = q*b + r with deg r < 1
        let lhs = a.scale(&int(8));
        let (qq, rr) = lhs.div_rem(&b).unwrap();
        assert_eq!(r, rr);
        assert_eq!(qq.mul(&b).add(&r), lhs);
    }

    #[test]
    fn gcd_and_exact_div() {
        let a = QUniPoly::from_roots(&[int(1), int(2), rat(1, 3)]);
        let b = QUniPoly::from_roots(&[int(2), int(5)]);
        assert_eq!(a.gcd(&b), QUniPoly::from_roots(&[int(2)]));
        assert_eq!(a.exact_div(&QUniPoly::from_roots(&[int(1)])).unwrap(), QUniPoly::from_roots(&[int(2), rat(1, 3)]));
        assert!(a.exact_div(&b).is_none());
    }

    #[test]
    fn poly_roundtrip() {
        let p = q(&[3, 0, -1, 4]);
        assert_eq!(QUniPoly::from_poly(&p.to_poly(2, 1), 1).unwrap(), p);
        assert!(QUniPoly::from_poly(&crate::Poly::var(2, 0), 1).is_err());
    }
}
