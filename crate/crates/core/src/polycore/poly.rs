use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::Monomial;
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::Rational;

/// Total degree, with the zero polynomial at minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse multivariate polynomial in a fixed number of positional variables.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials; zero
/// coefficients are never stored. Iteration through [`SparsePoly::terms`] is
/// graded-lex descending.
#[derive(Clone, PartialEq)]
pub struct SparsePoly<S = Rational> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SparsePoly<S> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The variable `x_index`. Panics when `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars}");
        Self::monomial(nvars, Monomial::var(index), S::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex descending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, S)> {
        self.terms.into_iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<S> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::NegInfinity,
            Some(m) => Degree::Finite(m.degree()),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.degree().finite()
    }

    /// Minimum total degree over the terms.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        debug_assert!(m.max_var().map_or(true, |v| v < self.nvars), "monomial {m:?} outside {} vars", self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone() * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        self.rpow(exp)
    }

    /// Whether variable `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derive(&self, var: usize) -> Result<Self> {
        self.check_var(var)?;
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::var_pow(var, e - 1));
            out.add_term(m2, c.clone() * S::from_int(e as i64));
        }
        Ok(out)
    }

    /// Ring-homomorphism image under `x_i -> images[i]`.
    pub fn substitute(&self, images: &[SparsePoly<S>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => {
                // a constant in zero variables
                return Ok(self.clone());
            }
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::VarcountMismatch {
                expected: target,
                got: bad.nvars,
            });
        }
        Ok(self.substitute_unchecked(images, target))
    }

    pub(crate) fn substitute_unchecked(&self, images: &[SparsePoly<S>], target: usize) -> Self {
        let mut powers: HashMap<usize, Vec<SparsePoly<S>>> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(target, c.clone());
            for (v, e) in m.factors() {
                let cache = powers
                    .entry(v)
                    .or_insert_with(|| vec![SparsePoly::one(target), images[v].clone()]);
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[v];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out += &term;
        }
        out
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[S]) -> Result<S> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[S]) -> S {
        let mut powers: HashMap<usize, Vec<S>> = HashMap::new();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let cache = powers.entry(v).or_insert_with(|| vec![S::one(), point[v].clone()]);
                while cache.len() <= e as usize {
                    let next = cache[cache.len() - 1].clone() * &point[v];
                    cache.push(next);
                }
                t = t * &cache[e as usize];
            }
            acc = acc + t;
        }
        acc
    }

    /// `self / q`, failing unless `q` divides `self` exactly.
    pub fn exact_divide(&self, q: &SparsePoly<S>) -> Result<Self> {
        if q.nvars != self.nvars {
            return Err(Error::VarcountMismatch {
                expected: self.nvars,
                got: q.nvars,
            });
        }
        let (qm, qc) = q.leading_term().ok_or(Error::DivisionByZero)?;
        if q.num_terms() == 1 {
            // monomial divisor: termwise
            let mut out = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                let mm = m.div(qm).ok_or(Error::NotDivisible)?;
                let cc = c.div_exact(qc).ok_or(Error::NotDivisible)?;
                out.terms.insert(mm, cc);
            }
            return Ok(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let mm = rm.div(qm).ok_or(Error::NotDivisible)?;
            let cc = rc.div_exact(qc).ok_or(Error::NotDivisible)?;
            rem -= &q.mul_monomial(&mm, &cc);
            quot.add_term(mm, cc);
        }
        Ok(quot)
    }

    /// Splits into homogeneous components keyed by degree; zero parts omitted.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True for the zero polynomial and for forms of exactly `degree`.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Coefficients with respect to `x_var`, ascending powers. The
    /// coefficients keep the ambient variable count and do not involve `x_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    /// Inverse of [`SparsePoly::coefficients_in`].
    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Monomial::var_pow(var, k as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&xk), a.clone());
            }
        }
        out
    }

    /// Same polynomial viewed in `nvars` variables. Shrinking is allowed only
    /// past variables that do not occur.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if nvars < self.nvars {
            if let Some(v) = self.terms.keys().filter_map(Monomial::max_var).max() {
                if v >= nvars {
                    return Err(Error::IndexOutOfRange { index: v, nvars });
                }
            }
        }
        Ok(SparsePoly {
            nvars,
            terms: self.terms.clone(),
        })
    }

    /// Renames variables (`x_i -> x_{map(i)}`) into a ring of `nvars` variables.
    pub fn remap(&self, nvars: usize, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            out.add_term(m.remap(&map), c.clone());
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparsePoly<T> {
        SparsePoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            })
        } else {
            Ok(())
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
    }
}

impl<S: Scalar> Ring for SparsePoly<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn is_rzero(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn rsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn rmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.exact_divide(rhs).ok()
    }
    fn size_hint(&self) -> usize {
        self.num_terms().max(1)
    }
}

impl<S: Scalar> std::ops::AddAssign<&SparsePoly<S>> for SparsePoly<S> {
    fn add_assign(&mut self, rhs: &SparsePoly<S>) {
        self.assert_same_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> std::ops::SubAssign<&SparsePoly<S>> for SparsePoly<S> {
    fn sub_assign(&mut self, rhs: &SparsePoly<S>) {
        self.assert_same_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add for &SparsePoly<S> {
    type Output = SparsePoly<S>;
    fn add(self, rhs: &SparsePoly<S>) -> SparsePoly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Sub for &SparsePoly<S> {
    type Output = SparsePoly<S>;
    fn sub(self, rhs: &SparsePoly<S>) -> SparsePoly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Mul for &SparsePoly<S> {
    type Output = SparsePoly<S>;
    fn mul(self, rhs: &SparsePoly<S>) -> SparsePoly<S> {
        self.assert_same_ring(rhs);
        let mut out = SparsePoly::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &SparsePoly<S> {
    type Output = SparsePoly<S>;
    fn neg(self) -> SparsePoly<S> {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<S: Scalar> $tr for SparsePoly<S> {
            type Output = SparsePoly<S>;
            fn $f(self, rhs: SparsePoly<S>) -> SparsePoly<S> {
                (&self).$f(&rhs)
            }
        }
        impl<S: Scalar> $tr<&SparsePoly<S>> for SparsePoly<S> {
            type Output = SparsePoly<S>;
            fn $f(self, rhs: &SparsePoly<S>) -> SparsePoly<S> {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for SparsePoly<S> {
    type Output = SparsePoly<S>;
    fn neg(self) -> SparsePoly<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Debug for SparsePoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("({c})*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
