mod common;

use common::{nonzero_poly, poly};
use keller_core::Poly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(3, 3, 5), q in poly(3, 3, 5), r in poly(3, 3, 5)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn leibniz(p in poly(3, 3, 5), q in poly(3, 3, 5), i in 0usize..3) {
        let lhs = (&p * &q).derive(i).unwrap();
        let rhs = &(&p.derive(i).unwrap() * &q) + &(&p * &q.derive(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        p in poly(2, 3, 4),
        q in poly(2, 3, 4),
        images in prop::collection::vec(poly(3, 2, 3), 2),
    ) {
        let lhs = (&p * &q).substitute(&images).unwrap();
        let rhs = &p.substitute(&images).unwrap() * &q.substitute(&images).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&p + &q).substitute(&images).unwrap();
        prop_assert_eq!(sum, &p.substitute(&images).unwrap() + &q.substitute(&images).unwrap());
    }

    #[test]
    fn homogeneous_components_sum_back(p in poly(3, 4, 8)) {
        let mut sum = Poly::zero(3);
        for (d, h) in p.homogeneous_components() {
            prop_assert!(h.is_homogeneous_of(d));
            sum += &h;
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn exact_division(p in poly(3, 3, 4), q in nonzero_poly(3, 2, 3)) {
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
    }
}
