use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::Monomial;
use crate::{Poly, PolyMap, Rational};

/// How firmly a denominator is known to vanish nowhere on R^n.
/// Ordered weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NowhereZero {
    Assumed,
    Sampled,
    ProvenConstant,
}

/// `x -> (n_1(x), ..., n_m(x)) / d(x)` with one shared denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    nvars: usize,
    numerators: Vec<Poly>,
    denominator: Poly,
    status: NowhereZero,
}

impl RationalMap {
    pub fn new(nvars: usize, numerators: Vec<Poly>, denominator: Poly, status: NowhereZero) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        for p in numerators.iter().chain(std::iter::once(&denominator)) {
            if p.nvars() != nvars {
                return Err(Error::VarcountMismatch {
                    expected: nvars,
                    got: p.nvars(),
                });
            }
        }
        let mut m = RationalMap {
            nvars,
            numerators,
            denominator,
            status,
        };
        m.normalize();
        Ok(m)
    }

    pub fn polynomial(map: &PolyMap) -> Self {
        RationalMap {
            nvars: map.nvars(),
            numerators: map.components().to_vec(),
            denominator: Poly::one(map.nvars()),
            status: NowhereZero::ProvenConstant,
        }
    }

    /// Constant denominators are folded into the numerators.
    fn normalize(&mut self) {
        if let Some(c) = self.denominator.as_constant() {
            if c != Rational::from_integer(1.into()) {
                let inv = Rational::from_integer(1.into()) / c;
                for p in &mut self.numerators {
                    *p = p.scale(&inv);
                }
                self.denominator = Poly::one(self.nvars);
            }
            self.status = NowhereZero::ProvenConstant;
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[Poly] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn status(&self) -> NowhereZero {
        self.status
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    pub fn as_polymap(&self) -> Option<PolyMap> {
        self.is_polynomial()
            .then(|| PolyMap::new(self.nvars, self.numerators.clone()).expect("consistent"))
    }

    /// Value at a point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let d = self.denominator.eval(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        self.numerators
            .iter()
            .map(|p| p.eval(point).map(|v| v / d.clone()))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        if inner.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "outer map has {} variables, inner map has {} components",
                self.nvars,
                inner.len()
            )));
        }
        let status = self.status.min(inner.status);
        if let Some(images) = inner.polynomial_images() {
            let nums = self
                .numerators
                .iter()
                .map(|p| p.substitute(&images))
                .collect::<Result<Vec<_>>>()?;
            let den = self.denominator.substitute(&images)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return RationalMap::new(inner.nvars, nums, den, status).map(RationalMap::reduced);
        }
        // components divisible by D substitute as polynomials; the rest are
        // homogenized: p(N/D) = p~(N, D) / D^E, E the largest outer degree in them
        let quotients: Vec<Option<Poly>> = inner
            .numerators
            .iter()
            .map(|p| p.exact_divide(&inner.denominator).ok())
            .collect();
        let rational_degree = |m: &Monomial| -> u32 {
            m.factors().filter(|(v, _)| quotients[*v].is_none()).map(|(_, k)| k).sum()
        };
        let e = self
            .numerators
            .iter()
            .chain(std::iter::once(&self.denominator))
            .flat_map(|p| p.terms().map(|(m, _)| rational_degree(m)))
            .max()
            .unwrap_or(0);
        let d = &inner.denominator;
        let mut dpow = vec![Poly::one(inner.nvars)];
        for k in 1..=e as usize {
            let next = &dpow[k - 1] * d;
            dpow.push(next);
        }
        let homog = |p: &Poly| -> Poly {
            let mut out = Poly::zero(inner.nvars);
            for (m, c) in p.terms() {
                let mut t = dpow[(e - rational_degree(m)) as usize].scale(c);
                for (v, k) in m.factors() {
                    let base = quotients[v].as_ref().unwrap_or(&inner.numerators[v]);
                    t = &t * &base.pow(k);
                }
                out += &t;
            }
            out
        };
        let nums: Vec<Poly> = self.numerators.iter().map(homog).collect();
        let den = homog(&self.denominator);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalMap::new(inner.nvars, nums, den, status).map(RationalMap::reduced)
    }

    /// Polynomial images when every numerator is divisible by the denominator.
    fn polynomial_images(&self) -> Option<Vec<Poly>> {
        self.numerators
            .iter()
            .map(|p| p.exact_divide(&self.denominator).ok())
            .collect()
    }

    /// Cancels the denominator when it divides every numerator.
    fn reduced(self) -> RationalMap {
        if self.is_polynomial() {
            return self;
        }
        match self.polynomial_images() {
            Some(nums) => RationalMap {
                nvars: self.nvars,
                numerators: nums,
                denominator: Poly::one(self.nvars),
                status: NowhereZero::ProvenConstant,
            },
            None => self,
        }
    }

    /// `n_i = x_i * d` for every `i`: the identity of the fraction field.
    pub fn is_identity(&self) -> bool {
        self.numerators.len() == self.nvars
            && self
                .numerators
                .iter()
                .enumerate()
                .all(|(i, p)| *p == self.denominator.mul_monomial(&Monomial::var(i), &Rational::from_integer(1.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn composition_with_rational_inverse() {
        // f(x, y) = (x, y * (1 + x^2)), inverse (x, y / (1 + x^2))
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let d = &Poly::one(2) + &x.pow(2);
        let f = RationalMap::polynomial(&PolyMap::square(vec![x.clone(), &y * &d]).unwrap());
        let g = RationalMap::new(2, vec![&x * &d, y.clone()], d.clone(), NowhereZero::Sampled).unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
        assert_eq!(g.status(), NowhereZero::Sampled);
        assert!(g.compose(&f).unwrap().is_polynomial());
        assert_eq!(g.eval(&[int(1), int(4)]).unwrap().unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn constant_denominator_is_polynomial() {
        let x = Poly::var(1, 0);
        let m = RationalMap::new(1, vec![x.scale(&int(4))], Poly::constant(1, int(2)), NowhereZero::Assumed).unwrap();
        assert!(m.is_polynomial());
        assert_eq!(m.status(), NowhereZero::ProvenConstant);
        assert_eq!(m.numerators()[0], x.scale(&int(2)));
    }
}
