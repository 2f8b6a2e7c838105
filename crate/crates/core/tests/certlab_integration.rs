use keller_core::certlab::{fiber_transport_check, verify_certificate, Certificate};
use keller_core::reducer::to_yagzhev;
use keller_core::shell::corpus::builtin_example;
use keller_core::shell::CertificateJson;
use keller_core::{Budget, Poly, PolyMap};

fn pipeline_certificate(id: &str) -> Certificate {
    let f = builtin_example(id).unwrap().document.to_map().unwrap();
    to_yagzhev(&f, 1, &Budget::default()).unwrap().1.certificate
}

#[test]
fn verification_is_a_function_of_the_bytes() {
    let c = pipeline_certificate("fold3");
    let bytes = serde_json::to_string(&CertificateJson::from_certificate(&c)).unwrap();
    let load = || {
        serde_json::from_str::<CertificateJson>(&bytes)
            .unwrap()
            .to_certificate()
            .unwrap()
    };
    let (a, b) = (load(), load());
    assert_eq!(a, b);
    assert_eq!(verify_certificate(&a), verify_certificate(&b));
    assert!(verify_certificate(&a).valid);
    assert_eq!(serde_json::to_string(&CertificateJson::from_certificate(&a)).unwrap(), bytes);
}

#[test]
fn automorphisms_compose_to_identity() {
    let c = pipeline_certificate("mixed3");
    assert!(verify_certificate(&c).valid);
    for m in &c.moves {
        if let Some(a) = m.kind.automorphism() {
            assert!(a.forward().compose(a.inverse()).unwrap().is_identity());
            assert!(a.inverse().compose(a.forward()).unwrap().is_identity());
        }
    }
}

#[test]
fn keller_sources_use_polynomial_automorphisms() {
    for id in ["triangular", "quartic-shear", "triangular3", "chain4"] {
        let c = pipeline_certificate(id);
        for m in &c.moves {
            if let Some(a) = m.kind.automorphism() {
                assert!(a.is_polynomial(), "{id}: {} move is rational", m.kind.name());
            }
        }
    }
}

#[test]
fn transport_matches_on_pipeline_certificates() {
    for id in ["x3y", "fold3", "triangular", "mixed3"] {
        let report = fiber_transport_check(&pipeline_certificate(id), 9, 25);
        assert!(report.pass, "{id}: {report:?}");
        assert_eq!(report.first_mismatch, None);
    }
}

#[test]
fn tampering_is_detected() {
    let mut c = pipeline_certificate("triangular");
    let n = c.target.nvars();
    let mut comps = c.target.components().to_vec();
    comps[0] = &comps[0] + &Poly::var(n, n - 1).pow(3);
    c.target = PolyMap::square(comps).unwrap();
    let v = verify_certificate(&c);
    assert!(!v.valid);
    assert!(v.reason.is_some());

    let mut c = pipeline_certificate("triangular");
    let k = c.moves.len() / 2;
    let n = c.moves[k].result.nvars();
    let mut comps = c.moves[k].result.components().to_vec();
    comps[0] = &comps[0] + &Poly::one(n);
    c.moves[k].result = PolyMap::square(comps).unwrap();
    assert_eq!(verify_certificate(&c).first_failing_move, Some(k));
}
