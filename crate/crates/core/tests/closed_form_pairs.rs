//! Closed-form pairs against hand-computed m-brackets.

mod common;

use fiberscale_core::catalog::build_chain;
use fiberscale_core::criterion::{decompose, verify_certificate, Origin, Rejection};
use fiberscale_core::matrix::named::e;
use fiberscale_core::tolerances::Tolerances;
use fiberscale_core::{Field, MatrixElement};

/// `[X^m, Y^m]^m` for the chain's closed-form pair, and the raw commutator norm.
fn known_m_bracket(id: &str) -> (MatrixElement, f64) {
    let chain = build_chain(id).unwrap();
    let dec = decompose(&chain).unwrap();
    let (x, y) = chain.known_pair.clone().unwrap();
    let raw = x.bracket(&y).unwrap().norm();
    let cert = verify_certificate(&dec, &x, &y, Tolerances::default()).unwrap();
    assert_eq!(cert.origin, Origin::Paper);
    (dec.m_bracket_element(&x, &y).unwrap(), raw)
}

#[test]
fn m_brackets_match_hand_oracles() {
    for (id, want, sign_free) in common::known_m_brackets() {
        let (m, raw) = known_m_bracket(id);
        assert!(raw < 1e-12, "{id}: raw residual {raw}");
        assert!(common::oracle_distance(&m, &want, sign_free) < 1e-12, "{id}: got {m:?}");
    }
}

#[test]
fn bracket_norms() {
    assert!((known_m_bracket("L4.1-1").0.norm() - 2f64.sqrt()).abs() < 1e-12);
    assert!((known_m_bracket("L4.1-5a").0.norm() - 2.0).abs() < 1e-12);
    assert!((known_m_bracket("T6.5-A2").0.norm() - 8f64.sqrt()).abs() < 1e-12);
}

#[test]
fn l41_2_full_bracket_is_minus_e12() {
    for id in ["L4.1-2", "L4.1-3"] {
        let chain = build_chain(id).unwrap();
        let dec = decompose(&chain).unwrap();
        let (x, y) = chain.known_pair.clone().unwrap();
        let full = dec.vertical(&x).unwrap().bracket(&dec.vertical(&y).unwrap()).unwrap();
        assert!(full.sub(&e(Field::Real, 7, 1, 2).scale(-1.0)).unwrap().norm() < 1e-12, "{id}");
    }
}

#[test]
fn sp2_quaternion_pair() {
    let (m, raw) = known_m_bracket("T6.5-sp2");
    assert!(raw < 1e-12);
    assert!(m.norm() > 1e-3);
}

#[test]
fn equal_pair_is_rejected() {
    let chain = build_chain("L4.1-1").unwrap();
    let dec = decompose(&chain).unwrap();
    let (x, _) = chain.known_pair.clone().unwrap();
    let r = verify_certificate(&dec, &x, &x, Tolerances::default()).unwrap_err();
    assert!(matches!(r, Rejection::Numeric { .. }), "{r:?}");
}

#[test]
fn element_outside_p_is_a_structural_rejection() {
    let chain = build_chain("L4.1-1").unwrap();
    let dec = decompose(&chain).unwrap();
    let (x, _) = chain.known_pair.clone().unwrap();
    let h = chain.h.basis()[0].clone();
    let r = verify_certificate(&dec, &x, &h, Tolerances::default()).unwrap_err();
    assert!(matches!(r, Rejection::NotInP { .. }), "{r:?}");
}
