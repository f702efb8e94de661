use fiberscale_core::catalog::build_chain;
use fiberscale_core::criterion::{classify_chain, decompose, verify_coords, Budget, Taxonomy, VerdictKind};
use fiberscale_core::report::{consistent, run_suite, to_json, to_markdown};
use fiberscale_core::catalog::ExpectedVerdict;

const SMALL: Budget = Budget { restarts: 8, iterations: 2000 };

fn classify(id: &str) -> fiberscale_core::criterion::Verdict {
    classify_chain(&build_chain(id).unwrap(), SMALL, 0).unwrap()
}

#[test]
fn g2_torus_chain_fails() {
    let v = classify("L4.1-6");
    assert_eq!(v.tag(), "COUNTEREXAMPLE_FOUND");
    let c = v.certificate().unwrap();
    let dec = decompose(&build_chain("L4.1-6").unwrap()).unwrap();
    verify_coords(&dec, &c.x, &c.y, c.tolerances).unwrap();
}

#[test]
fn symmetric_control() {
    assert_eq!(classify("SYM-u2-so4-so5").tag(), "SYMMETRIC_PAIR");
}

#[test]
fn so_chain_is_inconclusive_with_case_three() {
    let v = classify("T5.1-n2");
    assert_eq!(v.tag(), "NO_COUNTEREXAMPLE_FOUND");
    let Taxonomy::Cases(c) = &v.taxonomy else { panic!("not regular") };
    assert!(c.iter().any(|cases| cases.contains(&3)));
    assert!(v.notes.iter().any(|n| n.contains("not a proof")));
    let VerdictKind::NoCounterexampleFound { estimate, restarts_run, .. } = v.kind else { unreachable!() };
    assert!(!estimate.divergent);
    assert_eq!(restarts_run, SMALL.restarts);
}

#[test]
fn full_rank_classification() {
    let v = classify("C4.5-su3xsu2");
    assert_eq!(v.tag(), "HOLDS_BY_CLASSIFICATION");
    assert_eq!(v.taxonomy.to_string(), "case 1+2");
}

#[test]
fn taxonomy_labels() {
    assert_eq!(classify("G2-su2-so4").taxonomy.to_string(), "case 5");
    assert_eq!(classify("CONJ-sp-n3").taxonomy.to_string(), "case 4");
    assert_eq!(classify("T6.5-A2").taxonomy.to_string(), "NONE");
    assert_eq!(classify("C3.3-1-min").taxonomy, Taxonomy::NotRegular);
}

// 0 ⊂ sp(1) ⊂ sp(2) fits the case 4 wording and still fails: the label is
// necessary, not sufficient.
#[test]
fn case_four_label_does_not_decide() {
    let v = classify("T6.5-B2-long");
    assert_eq!(v.taxonomy.to_string(), "case 4");
    assert_eq!(v.tag(), "COUNTEREXAMPLE_FOUND");
    assert!(v.notes.iter().any(|n| n.contains("necessary condition only")));
}

#[test]
fn every_certificate_reverifies() {
    for id in ["L4.1-1", "L4.1-4", "C3.3-3-min", "T6.5-B2-long"] {
        let v = classify(id);
        let c = v.certificate().unwrap();
        let dec = decompose(&build_chain(id).unwrap()).unwrap();
        assert!(verify_coords(&dec, &c.x, &c.y, c.tolerances).is_ok(), "{id}");
    }
}

#[test]
fn consistency_table() {
    use ExpectedVerdict::*;
    assert!(consistent(Fails, "COUNTEREXAMPLE_FOUND"));
    assert!(!consistent(Fails, "NO_COUNTEREXAMPLE_FOUND"));
    assert!(consistent(HoldsProved, "NO_COUNTEREXAMPLE_FOUND"));
    assert!(consistent(HoldsProved, "HOLDS_BY_CLASSIFICATION"));
    assert!(consistent(HoldsConjectured, "NO_COUNTEREXAMPLE_FOUND"));
    assert!(!consistent(HoldsConjectured, "COUNTEREXAMPLE_FOUND"));
    assert!(consistent(SymmetricPair, "SYMMETRIC_PAIR"));
    assert!(!consistent(SymmetricPair, "ERROR"));
}

#[test]
fn mislabeled_control_is_flagged() {
    let rows = run_suite(SMALL, 0, &[("SYM-so3-so4-so5".to_string(), ExpectedVerdict::Fails)]);
    let bad: Vec<&str> = rows.iter().filter(|r| !r.consistent).map(|r| r.chain_id.as_str()).collect();
    assert_eq!(bad, ["SYM-so3-so4-so5"]);
    assert!(to_markdown(&rows).contains("| SYM-so3-so4-so5 | FAILS | SYMMETRIC_PAIR |"));
    let json: serde_json::Value = serde_json::from_str(&to_json(&rows)).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 27);
}
