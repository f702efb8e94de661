//! Oracles shared by the integration suites and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeMap;

use fiberscale_core::algebra::{
    embed, make_classical, make_g2, maximal_torus, split_j, standard_j, ClassicalKind, EmbeddingSpec, LieAlgebraModel,
    Recipe,
};
use fiberscale_core::matrix::named::{diag, e};
use fiberscale_core::roots::{root_decomposition, Rank2Type, RootDatum};
use fiberscale_core::{Field, MatrixElement, Quaternion};

use ClassicalKind::{So, Sp, Su, U};

// ---- Hand-computed m-brackets of the closed-form pairs.

/// `(chain id, [X^m, Y^m]^m, sign may flip)`.
pub fn known_m_brackets() -> Vec<(&'static str, MatrixElement, bool)> {
    let (c, r, h) = (Field::Complex, Field::Real, Field::Quaternion);
    // L4.1 (2), (3): [X^m, Y^m] = -E12, whose m-part anticommutes with
    // J = [[0, -I], [I, 0]].
    let e12_m = e(r, 7, 1, 2).sub(&e(r, 7, 3, 4)).unwrap().scale(-0.5);
    // L4.1 (5): [iF12, kF12] = diag(-2j, -2j); the (1,1) entry is in h.
    let two_j = diag(h, &[Quaternion::ZERO, Quaternion::J.scale(-2.0), Quaternion::ZERO]);
    vec![
        ("L4.1-1", e(c, 4, 1, 3), true),
        ("L4.1-2", e12_m.clone(), false),
        ("L4.1-3", e12_m, false),
        ("L4.1-5a", two_j.clone(), true),
        ("L4.1-5b", two_j, true),
        ("T6.5-A2", diag(c, &[Quaternion::ZERO, Quaternion::I.scale(2.0), Quaternion::I.scale(-2.0)]), true),
        ("T6.5-B2-short", e(r, 5, 2, 3).scale(-1.0), false),
        ("T6.5-B2-long", e(r, 5, 2, 4).sub(&e(r, 5, 3, 5)).unwrap().scale(-0.5), true),
    ]
}

/// Distance between `got` and `want`, up to sign when allowed.
pub fn oracle_distance(got: &MatrixElement, want: &MatrixElement, sign_free: bool) -> f64 {
    let plus = got.sub(want).unwrap().norm();
    if sign_free {
        plus.min(got.add(want).unwrap().norm())
    } else {
        plus
    }
}

// ---- Symmetric-pair table.

fn block(field: Field, n: usize, blocks: &[(ClassicalKind, &[usize])]) -> LieAlgebraModel {
    embed(&EmbeddingSpec {
        source: "b".into(),
        target: "t".into(),
        recipe: Recipe::Block {
            field,
            n,
            blocks: blocks.iter().map(|(k, c)| (*k, c.to_vec())).collect(),
            traceless: false,
        },
    })
    .unwrap()
}

fn u_in_so(j: MatrixElement, n: usize, coords: &[usize]) -> LieAlgebraModel {
    embed(&EmbeddingSpec {
        source: "u".into(),
        target: "so".into(),
        recipe: Recipe::ComplexStructureJ { j, special: false, n, coords: coords.to_vec() },
    })
    .unwrap()
}

fn torus(g: &LieAlgebraModel) -> LieAlgebraModel {
    LieAlgebraModel::from_subspace("t", maximal_torus(g, 5).unwrap()).unwrap()
}

/// `(label, k, h, symmetric)`.
pub fn symmetric_pair_cases() -> Vec<(String, LieAlgebraModel, LieAlgebraModel, bool)> {
    let mut cases = Vec::new();
    for n in [2, 3] {
        let so = make_classical(So, 2 * n).unwrap();
        let all: Vec<usize> = (0..2 * n).collect();
        cases.push((format!("so({}), u({n})", 2 * n), so.clone(), u_in_so(standard_j(n), 2 * n, &all), true));
        cases.push((format!("so({}), u({n}) split J", 2 * n), so, u_in_so(split_j(n), 2 * n, &all), true));
    }
    for n in 3..=5 {
        let coords: Vec<usize> = (0..n).collect();
        cases.push((
            format!("so({}), so({n})", n + 1),
            make_classical(So, n + 1).unwrap(),
            block(Field::Real, n + 1, &[(So, &coords)]),
            true,
        ));
    }
    let q = Field::Quaternion;
    let k = block(q, 3, &[(Sp, &[0, 1]), (Sp, &[2])]);
    cases.push(("sp(2)+sp(1), u(2)+sp(1)".into(), k.clone(), block(q, 3, &[(U, &[0, 1]), (Sp, &[2])]), true));
    cases.push((
        "sp(2)+sp(1), sp(1)+u(1)+sp(1)".into(),
        k,
        block(q, 3, &[(Sp, &[0]), (U, &[1]), (Sp, &[2])]),
        false,
    ));
    let su3 = make_classical(Su, 3).unwrap();
    cases.push(("su(3), t2".into(), su3.clone(), torus(&su3), false));
    let u3 = make_classical(U, 3).unwrap();
    cases.push(("u(3), t3".into(), u3.clone(), torus(&u3), false));
    let u2 = u_in_so(standard_j(2), 6, &[0, 1, 2, 3]);
    let so2 = block(Field::Real, 6, &[(So, &[4, 5])]);
    let h = LieAlgebraModel::sum("u(2)+so(2)", &[&u2, &so2]).unwrap();
    cases.push(("so(6), u(2)+so(2)".into(), make_classical(So, 6).unwrap(), h, false));
    cases
}

// ---- Integer root systems.

pub type Root = Vec<i64>;

fn unit(n: usize, i: usize, s: i64) -> Root {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn add(a: &Root, b: &Root) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &Root) -> Root {
    a.iter().map(|x| -x).collect()
}

pub fn type_a(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                out.push(add(&unit(n + 1, i, 1), &unit(n + 1, j, -1)));
            }
        }
    }
    out
}

fn pm_pairs(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(add(&unit(n, i, s), &unit(n, j, t)));
            }
        }
    }
    out
}

pub fn type_b(n: usize) -> Vec<Root> {
    let mut out = pm_pairs(n);
    for i in 0..n {
        out.push(unit(n, i, 1));
        out.push(unit(n, i, -1));
    }
    out
}

pub fn type_c(n: usize) -> Vec<Root> {
    let mut out = pm_pairs(n);
    for i in 0..n {
        out.push(unit(n, i, 2));
        out.push(unit(n, i, -2));
    }
    out
}

/// Short roots `e_i − e_j`, long roots `±(2e_i − e_j − e_k)` in the plane
/// `x + y + z = 0`.
pub fn type_g2() -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push(add(&unit(3, i, 1), &unit(3, j, -1)));
                let k = 3 - i - j;
                let long = add(&add(&unit(3, i, 2), &unit(3, j, -1)), &unit(3, k, -1));
                out.push(neg(&long));
                out.push(long);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn dot(a: &Root, b: &Root) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Type of the integer span of two independent roots, by exact arithmetic.
pub fn span_type(roots: &[Root], a: &Root, b: &Root) -> Rank2Type {
    let (aa, ab, bb) = (dot(a, a), dot(a, b), dot(b, b));
    let det = aa * bb - ab * ab;
    let span: Vec<&Root> = roots
        .iter()
        .filter(|c| {
            let (ca, cb) = (dot(c, a), dot(c, b));
            let (sn, tn) = (bb * ca - ab * cb, aa * cb - ab * ca);
            if sn % det != 0 || tn % det != 0 {
                return false;
            }
            let (s, t) = (sn / det, tn / det);
            c.iter().zip(a.iter().zip(b)).all(|(v, (x, y))| *v == s * x + t * y)
        })
        .collect();
    let lengths: Vec<i64> = span.iter().map(|c| dot(c, c)).collect();
    let (lmin, lmax) = (*lengths.iter().min().unwrap(), *lengths.iter().max().unwrap());
    match (span.len(), lmax / lmin) {
        (6, 1) => Rank2Type::A2,
        (8, 2) => Rank2Type::B2,
        (12, 3) => Rank2Type::G2,
        _ => Rank2Type::Reducible,
    }
}

pub fn oracle_histogram(roots: &[Root]) -> BTreeMap<Rank2Type, usize> {
    let mut h = BTreeMap::new();
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if roots[j] == neg(&roots[i]) {
                continue;
            }
            *h.entry(span_type(roots, &roots[i], &roots[j])).or_default() += 1;
        }
    }
    h
}

pub fn computed_histogram(rd: &RootDatum) -> BTreeMap<Rank2Type, usize> {
    let mut h = BTreeMap::new();
    let n = rd.num_roots();
    for a in 0..n {
        for b in (a + 1)..n {
            if rd.negate(a) == b {
                continue;
            }
            *h.entry(rd.rank2_span_type(a, b).unwrap()).or_default() += 1;
        }
    }
    h
}

pub fn datum(g: &LieAlgebraModel) -> RootDatum {
    let t = maximal_torus(g, 11).unwrap();
    root_decomposition(g, &t, 12).unwrap()
}

/// `(name, algebra, integer roots, positive-root count)`.
pub fn root_test_algebras() -> Vec<(&'static str, LieAlgebraModel, Vec<Root>, usize)> {
    vec![
        ("so(5)", make_classical(So, 5).unwrap(), type_b(2), 4),
        ("su(3)", make_classical(Su, 3).unwrap(), type_a(2), 3),
        ("su(4)", make_classical(Su, 4).unwrap(), type_a(3), 6),
        ("so(7)", make_classical(So, 7).unwrap(), type_b(3), 9),
        ("sp(3)", make_classical(Sp, 3).unwrap(), type_c(3), 9),
        ("g2", make_g2().unwrap(), type_g2(), 6),
    ]
}

pub mod props;
