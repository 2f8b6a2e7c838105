use keller_core::certlab::{fiber_transport_check, verify_certificate};
use keller_core::gzpair::{decompose_cubes, pair_down, pair_up, pairing_to_equivalence, reassemble, verify_pairing};
use keller_core::polymap::classify;
use keller_core::shell::corpus::yagzhev_family;
use keller_core::Budget;

#[test]
fn cube_decompositions_reassemble() {
    for g in yagzhev_family(21) {
        for h in g.nonlinear_remainder().unwrap() {
            let cubes = decompose_cubes(&h).unwrap();
            assert_eq!(reassemble(g.nvars(), &cubes), h);
        }
    }
}

#[test]
fn round_trip_and_axioms() {
    let family = yagzhev_family(21);
    assert!(family.len() >= 10);
    for g in family {
        let p = pair_up(&g).unwrap();
        assert_eq!(p.g, g);
        let v = verify_pairing(&p);
        assert!(v.valid, "{v:?}");
        assert_eq!(p.a.rank(), p.m());
        assert_eq!(p.a.rank(), p.a.vstack(&p.b).unwrap().rank());
        assert!(p.n() >= p.m());

        let down = pair_down(&p.f, &p.a).unwrap();
        assert_eq!(down.g, g);
        assert!(verify_pairing(&down).valid);
    }
}

#[test]
fn equivalence_certificates_verify_and_transport() {
    for g in yagzhev_family(21) {
        let p = pair_up(&g).unwrap();
        let c = pairing_to_equivalence(&p).unwrap();
        assert_eq!(c.source, p.g);
        assert_eq!(c.target, p.f);
        assert!(verify_certificate(&c).valid);
        assert!(fiber_transport_check(&c, 4, 10).pass);
    }
}

#[test]
fn keller_transfers_across_the_pairing() {
    let budget = Budget::default();
    for g in yagzhev_family(21) {
        let p = pair_up(&g).unwrap();
        let kg = classify(&p.g, 1, &budget).unwrap().is_keller();
        let kf = classify(&p.f, 1, &budget).unwrap().is_keller();
        assert_eq!(kg, kf, "{g:?}");
    }
}
