use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::Monomial;
use crate::{Poly, Rational};

/// A linear form as its coefficient vector.
pub(crate) type Form = Vec<Rational>;

/// Scales a nonzero form so its first nonzero coefficient is one; returns the
/// scale `lambda` with `form = lambda * normalized`.
pub(crate) fn normalize_form(form: &[Rational]) -> (Form, Rational) {
    let lead = form.iter().find(|c| !c.is_zero()).cloned().expect("nonzero form");
    (form.iter().map(|c| c / &lead).collect(), lead)
}

pub(crate) fn form_to_poly(form: &[Rational]) -> Poly {
    let n = form.len();
    Poly::from_terms(
        n,
        form.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i), c.clone())),
    )
}

fn unit(n: usize, entries: &[(usize, i64)]) -> Form {
    let mut f = vec![Rational::zero(); n];
    for &(i, c) in entries {
        f[i] += Rational::from_integer(c.into());
    }
    f
}

/// `(coefficient, form)` cubes whose sum is one monomial.
fn monomial_cubes(n: usize, m: &Monomial) -> Vec<(Rational, Form)> {
    let f: Vec<(usize, u32)> = m.factors().collect();
    let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
    match f.as_slice() {
        [(x, 3)] => vec![(Rational::one(), unit(n, &[(*x, 1)]))],
        // 6 x^2 y = (2x + y)^3 - (2x)^3 - 2 (x + y)^3 + 2 x^3 + y^3
        [(a, 2), (b, 1)] | [(b, 1), (a, 2)] => vec![
            (r(1, 6), unit(n, &[(*a, 2), (*b, 1)])),
            (r(-8, 6), unit(n, &[(*a, 1)])),
            (r(-2, 6), unit(n, &[(*a, 1), (*b, 1)])),
            (r(2, 6), unit(n, &[(*a, 1)])),
            (r(1, 6), unit(n, &[(*b, 1)])),
        ],
        // 6 uvw = (u+v+w)^3 - (u+v)^3 - (v+w)^3 - (u+w)^3 + u^3 + v^3 + w^3
        [(u, 1), (v, 1), (w, 1)] => vec![
            (r(1, 6), unit(n, &[(*u, 1), (*v, 1), (*w, 1)])),
            (r(-1, 6), unit(n, &[(*u, 1), (*v, 1)])),
            (r(-1, 6), unit(n, &[(*v, 1), (*w, 1)])),
            (r(-1, 6), unit(n, &[(*u, 1), (*w, 1)])),
            (r(1, 6), unit(n, &[(*u, 1)])),
            (r(1, 6), unit(n, &[(*v, 1)])),
            (r(1, 6), unit(n, &[(*w, 1)])),
        ],
        _ => unreachable!("cubic monomial"),
    }
}

/// Sums of cubes over a pool of forms shared between several polynomials,
/// deduplicated up to scalar multiples.
#[derive(Clone, Debug, Default)]
pub(crate) struct CubePool {
    pub forms: Vec<Form>,
    index: BTreeMap<Form, usize>,
}

impl CubePool {
    pub fn insert(&mut self, form: &[Rational]) -> (usize, Rational) {
        let (normal, lambda) = normalize_form(form);
        let next = self.forms.len();
        let k = *self.index.entry(normal.clone()).or_insert(next);
        if k == next {
            self.forms.push(normal);
        }
        (k, lambda)
    }

    pub fn contains(&self, form: &[Rational]) -> bool {
        self.index.contains_key(&normalize_form(form).0)
    }

    /// Coefficients of `h` as `sum_k c_k * forms[k]^3`, indexed by pool position.
    pub fn decompose(&mut self, h: &Poly) -> Result<BTreeMap<usize, Rational>> {
        if !h.is_zero() && !h.is_homogeneous_of(3) {
            return Err(Error::Precondition("cube decomposition needs a cubic homogeneous polynomial".into()));
        }
        let n = h.nvars();
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (m, c) in h.terms() {
            for (coef, form) in monomial_cubes(n, m) {
                let (k, lambda) = self.insert(&form);
                let v = out.entry(k).or_insert_with(Rational::zero);
                *v += c * coef * lambda.pow(3);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// `h = sum c_i * l_i^3` with the forms `l_i` deduplicated up to scale.
pub fn decompose_cubes(h: &Poly) -> Result<Vec<(Rational, Poly)>> {
    let mut pool = CubePool::default();
    let coeffs = pool.decompose(h)?;
    Ok(coeffs
        .into_iter()
        .map(|(k, c)| (c, form_to_poly(&pool.forms[k])))
        .collect())
}

pub fn reassemble(n: usize, cubes: &[(Rational, Poly)]) -> Poly {
    let mut out = Poly::zero(n);
    for (c, l) in cubes {
        out += &l.pow(3).scale(c);
    }
    out
}
