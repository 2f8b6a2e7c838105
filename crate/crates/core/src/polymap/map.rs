use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polycore::{Degree, SparsePoly};
use crate::scalar::Scalar;
use crate::Rational;

/// A polynomial map `R^nvars -> R^m` given by its components.
///
/// The Jacobian matrix is computed on first use and cached.
pub struct PolyMap<S = Rational> {
    nvars: usize,
    components: Vec<SparsePoly<S>>,
    jacobian: OnceLock<Matrix<SparsePoly<S>>>,
}

impl<S: Scalar> Clone for PolyMap<S> {
    fn clone(&self) -> Self {
        PolyMap {
            nvars: self.nvars,
            components: self.components.clone(),
            jacobian: self.jacobian.clone(),
        }
    }
}

impl<S: Scalar> PartialEq for PolyMap<S> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.components == other.components
    }
}

impl<S: Scalar> std::fmt::Debug for PolyMap<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolyMap")
            .field("nvars", &self.nvars)
            .field("components", &self.components)
            .finish()
    }
}

impl<S: Scalar> PolyMap<S> {
    pub fn new(nvars: usize, components: Vec<SparsePoly<S>>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VarcountMismatch {
                expected: nvars,
                got: bad.nvars(),
            });
        }
        Ok(PolyMap {
            nvars,
            components,
            jacobian: OnceLock::new(),
        })
    }

    /// A square map from components that share one variable count.
    pub fn square(components: Vec<SparsePoly<S>>) -> Result<Self> {
        let n = components.len();
        let m = Self::new(n, components)?;
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| SparsePoly::var(n, i)).collect()).expect("consistent")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.nvars == self.components.len()
    }

    pub fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquareMap {
                components: self.components.len(),
                nvars: self.nvars,
            })
        }
    }

    pub fn components(&self) -> &[SparsePoly<S>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SparsePoly<S>> {
        self.components
    }

    pub fn component(&self, i: usize) -> &SparsePoly<S> {
        &self.components[i]
    }

    pub fn degree(&self) -> Degree {
        self.components.iter().map(SparsePoly::degree).max().unwrap_or(Degree::NegInfinity)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap<S>) -> Result<PolyMap<S>> {
        if inner.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "outer map has {} variables, inner map has {} components",
                self.nvars,
                inner.len()
            )));
        }
        let comps = self
            .components
            .iter()
            .map(|p| p.substitute_unchecked(&inner.components, inner.nvars))
            .collect();
        PolyMap::new(inner.nvars, comps)
    }

    pub fn eval(&self, point: &[S]) -> Result<Vec<S>> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self.components.iter().map(|p| p.eval_unchecked(point)).collect())
    }

    /// `(f_1, ..., f_n, x_{n+1}, ..., x_{n+count})`.
    pub fn extend_fresh(&self, count: usize) -> PolyMap<S> {
        let n = self.nvars + count;
        let mut comps: Vec<SparsePoly<S>> = self
            .components
            .iter()
            .map(|p| p.with_nvars(n).expect("growing"))
            .collect();
        comps.extend((self.nvars..n).map(|i| SparsePoly::var(n, i)));
        PolyMap::new(n, comps).expect("consistent")
    }

    /// Partial derivatives, entry `(i, k) = d f_i / d x_k`.
    pub fn jacobian(&self) -> &Matrix<SparsePoly<S>> {
        self.jacobian.get_or_init(|| {
            Matrix::from_fn(self.components.len(), self.nvars, |i, k| {
                self.components[i].derive(k).expect("index in range")
            })
        })
    }

    /// `F - X` for a square map.
    pub fn nonlinear_remainder(&self) -> Result<Vec<SparsePoly<S>>> {
        self.check_square()?;
        Ok(self
            .components
            .iter()
            .enumerate()
            .map(|(i, p)| p - &SparsePoly::var(self.nvars, i))
            .collect())
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PolyMap<T> {
        PolyMap::new(self.nvars, self.components.iter().map(|p| p.map_coeffs(&f)).collect())
            .expect("same shape")
    }
}
