mod common;

use common::poly;
use keller_core::elimination::{count_real_roots, isolate_real_roots, resultant, sturm_count, subresultant_prs, Bound, UniPoly};
use keller_core::scalar::{int, rat};
use keller_core::{Poly, QUniPoly, Rational};
use proptest::prelude::*;

fn quadratic_without_real_roots(b: i64, c: i64) -> QUniPoly {
    // x^2 + b x + c with b^2 < 4c
    QUniPoly::from_coeffs(vec![int(c), int(b), int(1)])
}

fn specialize(p: &Poly, y: &Rational) -> QUniPoly {
    let images = vec![Poly::var(2, 0), Poly::constant(2, y.clone())];
    UniPoly::from_poly(&p.substitute(&images).unwrap(), 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sturm_counts_known_roots(
        roots in prop::collection::btree_set(-20i64..=20, 0..5),
        b in -3i64..=3,
        extra in 1i64..=5,
    ) {
        let c = b * b + extra; // b^2 - 4c < 0 since c > b^2 / 4
        let rs: Vec<Rational> = roots.iter().map(|&r| rat(r, 2)).collect();
        let p = QUniPoly::from_roots(&rs).mul(&quadratic_without_real_roots(b, c));
        let k = rs.len();
        prop_assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), k);
        prop_assert_eq!(isolate_real_roots(&p).unwrap().len(), k);
        prop_assert_eq!(count_real_roots(&p).unwrap(), k);
    }

    #[test]
    fn resultant_vanishes_on_common_factor(g in poly(2, 2, 3), p in poly(2, 2, 3), q in poly(2, 2, 3)) {
        prop_assume!(g.degree_in(0).unwrap_or(0) > 0);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let r = resultant(&(&g * &p), &(&g * &q), 0).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn resultant_commutes_with_specialization(p in poly(2, 3, 4), q in poly(2, 3, 4), y in -5i64..=5) {
        let y = int(y);
        let (sp, sq) = (specialize(&p, &y), specialize(&q, &y));
        prop_assume!(sp.degree().map(|d| d as u32) == p.degree_in(0) && sp.degree().is_some_and(|d| d > 0));
        prop_assume!(sq.degree().map(|d| d as u32) == q.degree_in(0) && sq.degree().is_some_and(|d| d > 0));
        let r = resultant(&p, &q, 0).unwrap();
        let lhs = r.eval(&[int(0), y]).unwrap();
        prop_assert_eq!(lhs, subresultant_prs(&sp, &sq).resultant);
    }
}

#[test]
fn coprime_inputs_have_nonzero_resultant() {
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let r = resultant(&(&x.pow(2) - &y), &(&x - &Poly::one(2)), 0).unwrap();
    assert_eq!(r, &Poly::one(2) - &y);
}
