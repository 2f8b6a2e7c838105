#![allow(dead_code)]

use keller_core::scalar::rat;
use keller_core::{Monomial, Poly, PolyMap};
use proptest::prelude::*;

/// Polynomials with up to `max_terms` terms, per-variable exponents up to
/// `max_exp`, and coefficients `a/b` with `|a| <= 9`, `1 <= b <= 4`.
pub fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(nvars);
        for (e, a, b) in terms {
            p.add_term(Monomial::from_exponents(&e), rat(a, b));
        }
        p
    })
}

pub fn nonzero_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly(nvars, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Square maps of dimension `n` with components of total degree at most `deg`.
pub fn map(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly(n, deg, max_terms), n).prop_map(move |comps| {
        let comps = comps
            .into_iter()
            .map(|p| Poly::from_terms(n, p.terms().filter(|(m, _)| m.degree() <= deg).map(|(m, c)| (m.clone(), c.clone()))))
            .collect();
        PolyMap::square(comps).unwrap()
    })
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<keller_core::Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(a, b)| rat(a, b)), n)
}
