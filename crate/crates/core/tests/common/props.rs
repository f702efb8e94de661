//! Invariant checks and their fixtures. Each check returns the worst
//! defect it saw, or an error message.

use std::sync::OnceLock;

use fiberscale_core::algebra::{
    embed, make_classical, make_g2, maximal_torus, standard_j, ClassicalKind, EmbeddingSpec, LieAlgebraModel, Recipe,
};
use fiberscale_core::catalog::{build_chain, Chain};
use fiberscale_core::criterion::{
    decompose, search_counterexample, transfer_certificate, verify_coords, Budget, Certificate, ChainDecomposition,
};
use fiberscale_core::roots::{root_decomposition, RootDatum};
use fiberscale_core::tolerances::Tolerances;
use fiberscale_core::Field;

pub fn algebras() -> &'static [LieAlgebraModel] {
    static A: OnceLock<Vec<LieAlgebraModel>> = OnceLock::new();
    A.get_or_init(|| {
        vec![
            make_classical(ClassicalKind::Su, 3).unwrap(),
            make_classical(ClassicalKind::So, 5).unwrap(),
            make_classical(ClassicalKind::Sp, 2).unwrap(),
            make_classical(ClassicalKind::U, 3).unwrap(),
            make_g2().unwrap(),
        ]
    })
}

/// Root data of the semisimple members of [`algebras`].
pub fn data() -> &'static [RootDatum] {
    static D: OnceLock<Vec<RootDatum>> = OnceLock::new();
    D.get_or_init(|| {
        algebras()
            .iter()
            .filter(|g| g.name() != "u(3)")
            .map(|g| root_decomposition(g, &maximal_torus(g, 3).unwrap(), 4).unwrap())
            .collect()
    })
}

fn decs(ids: &[&str]) -> Vec<ChainDecomposition> {
    ids.iter().map(|id| decompose(&build_chain(id).unwrap()).unwrap()).collect()
}

pub fn failing() -> &'static [ChainDecomposition] {
    static D: OnceLock<Vec<ChainDecomposition>> = OnceLock::new();
    D.get_or_init(|| decs(&["L4.1-1", "L4.1-5a", "T5.1-n2", "T6.5-B2-long", "G2-su2-so4"]))
}

pub fn symmetric() -> &'static [ChainDecomposition] {
    static D: OnceLock<Vec<ChainDecomposition>> = OnceLock::new();
    D.get_or_init(|| decs(&["SYM-u2-so4-so5", "SYM-u3-so6-so7", "SYM-so3-so4-so5", "SYM-so4-so5-so6"]))
}

/// Chains with `(g, k) = (so(2n+1), so(2n))`.
pub fn odd_orthogonal() -> &'static [ChainDecomposition] {
    static D: OnceLock<Vec<ChainDecomposition>> = OnceLock::new();
    D.get_or_init(|| decs(&["T5.1-n2", "T5.1-n3", "SYM-u2-so4-so5", "SYM-u3-so6-so7"]))
}

fn torus3(n: usize) -> LieAlgebraModel {
    let blocks = vec![
        (ClassicalKind::So, vec![0, 1]),
        (ClassicalKind::So, vec![2, 3]),
        (ClassicalKind::So, vec![4, 5]),
    ];
    embed(&EmbeddingSpec {
        source: "t3".into(),
        target: "so".into(),
        recipe: Recipe::Block { field: Field::Real, n, blocks, traceless: false },
    })
    .unwrap()
}

fn u3(n: usize) -> LieAlgebraModel {
    embed(&EmbeddingSpec {
        source: "u(3)".into(),
        target: "so".into(),
        recipe: Recipe::ComplexStructureJ { j: standard_j(3), special: false, n, coords: (0..6).collect() },
    })
    .unwrap()
}

pub const SO6_IN_SO7: [usize; 6] = [0, 1, 2, 3, 4, 5];

/// `t³ ⊂ u(3) ⊂ so(6)`, the same `h ⊂ k` inside `so(7)`, and a searched
/// certificate on the smaller chain.
pub fn transfer_fixture() -> &'static (ChainDecomposition, ChainDecomposition, Certificate) {
    static C: OnceLock<(ChainDecomposition, ChainDecomposition, Certificate)> = OnceLock::new();
    C.get_or_init(|| {
        let so = |n| make_classical(ClassicalKind::So, n).unwrap();
        let sub = Chain::new("t3-u3-so6", torus3(6), u3(6), so(6)).unwrap();
        let sup = Chain::new("t3-u3-so7", torus3(7), u3(7), so(7)).unwrap();
        let (sub, sup) = (decompose(&sub).unwrap(), decompose(&sup).unwrap());
        let cert = search_counterexample(&sub, Budget::default(), 0).certificate.expect("sub-chain certificate");
        (sub, sup, cert)
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rotate(x: &[f64], y: &[f64], t: f64) -> (Vec<f64>, Vec<f64>) {
    let (c, s) = (t.cos(), t.sin());
    let xr = x.iter().zip(y).map(|(a, b)| c * a + s * b).collect();
    let yr = x.iter().zip(y).map(|(a, b)| c * b - s * a).collect();
    (xr, yr)
}

/// `|[x,[y,z]] + [y,[z,x]] + [z,[x,y]]|` in algebra `i`.
pub fn jacobi(i: usize, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    let g = &algebras()[i];
    let d = g.dim();
    let (x, y, z) = (&x[..d], &y[..d], &z[..d]);
    let b = |a: &[f64], c: &[f64]| g.bracket_coords(a, c);
    let s: Vec<f64> = b(x, &b(y, z))
        .iter()
        .zip(b(y, &b(z, x)))
        .zip(b(z, &b(x, y)))
        .map(|((p, q), r)| p + q + r)
        .collect();
    norm(&s)
}

/// `|⟨[x,y],z⟩ + ⟨y,[x,z]⟩|`.
pub fn ad_invariance(i: usize, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    let g = &algebras()[i];
    let d = g.dim();
    let (x, y, z) = (&x[..d], &y[..d], &z[..d]);
    (dot(&g.bracket_coords(x, y), z) + dot(y, &g.bracket_coords(x, z))).abs()
}

pub fn frame_relations(i: usize, h: &[f64]) -> f64 {
    let rd = &data()[i];
    rd.frame_defect(&h[..rd.rank()]).unwrap()
}

/// The rotated pair has the same bracket and m-bracket.
pub fn rotation_trick(i: usize, x: &[f64], y: &[f64], t: f64) -> f64 {
    let dec = &failing()[i];
    let d = dec.dim_p();
    let (x, y) = (&x[..d], &y[..d]);
    let (xr, yr) = rotate(x, y, t);
    diff(&dec.bracket(x, y), &dec.bracket(&xr, &yr)).max(diff(&dec.m_bracket(x, y), &dec.m_bracket(&xr, &yr)))
}

/// `X = X^m + X^s`, idempotence, orthogonality, and agreement of the
/// coordinate m-bracket with the matrix one.
pub fn projections(i: usize, x: &[f64], y: &[f64]) -> f64 {
    let dec = &failing()[i];
    let d = dec.dim_p();
    let xm = dec.element(&x[..d]).unwrap();
    let ym = dec.element(&y[..d]).unwrap();
    let v = dec.vertical(&xm).unwrap();
    let h = dec.horizontal(&xm).unwrap();
    let mb = dec.m_bracket_element(&xm, &ym).unwrap();
    [
        v.add(&h).unwrap().sub(&xm).unwrap().norm(),
        dec.vertical(&v).unwrap().sub(&v).unwrap().norm(),
        dec.horizontal(&v).unwrap().norm(),
        v.inner(&h).unwrap().abs(),
        (mb.norm() - norm(&dec.m_bracket(&x[..d], &y[..d]))).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Accept/reject is unchanged by positive rescaling, for a random pair and
/// a rotated closed-form pair.
pub fn scale_equivariance(i: usize, x: &[f64], y: &[f64], c: f64, e: f64, t: f64) -> Result<(), String> {
    let dec = &failing()[i];
    let d = dec.dim_p();
    let tol = Tolerances::default();
    let mut pairs = vec![(x[..d].to_vec(), y[..d].to_vec())];
    if let Some((px, py)) = &dec.chain().known_pair {
        let (px, py) = (dec.p_coords(px).unwrap(), dec.p_coords(py).unwrap());
        pairs.push(rotate(&px, &py, t));
    }
    for (x, y) in pairs {
        let xs: Vec<f64> = x.iter().map(|v| c * v).collect();
        let ys: Vec<f64> = y.iter().map(|v| e * v).collect();
        let a = verify_coords(dec, &x, &y, tol).is_ok();
        let b = verify_coords(dec, &xs, &ys, tol).is_ok();
        if a != b {
            return Err(format!("{}: decision changed under scaling ({c}, {e})", dec.id()));
        }
    }
    Ok(())
}

/// m-bracket norm of a random pair in a symmetric chain.
pub fn guard(i: usize, x: &[f64], y: &[f64]) -> f64 {
    let dec = &symmetric()[i];
    let d = dec.dim_p();
    norm(&dec.m_bracket(&x[..d], &y[..d]))
}

/// With `X^s = a e_Nᵀ − e_N aᵀ`, checks `[X^s, Y^s] = S(a, b) = b aᵀ − a bᵀ`
/// and numerical rank at most two.
pub fn horizontal_rank(i: usize, x: &[f64], y: &[f64]) -> Result<f64, String> {
    let dec = &odd_orthogonal()[i];
    let d = dec.dim_p();
    let xs = dec.horizontal(&dec.element(&x[..d]).unwrap()).unwrap();
    let ys = dec.horizontal(&dec.element(&y[..d]).unwrap()).unwrap();
    let n = xs.dim();
    let a: Vec<f64> = (0..n).map(|r| xs.get(r, n - 1).w).collect();
    let b: Vec<f64> = (0..n).map(|r| ys.get(r, n - 1).w).collect();
    let br = xs.bracket(&ys).unwrap();
    let m = nalgebra::DMatrix::from_fn(n, n, |r, c| br.get(r, c).w);
    let mut err: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            err = err.max((m[(r, c)] - (b[r] * a[c] - a[r] * b[c])).abs());
        }
    }
    let sv = m.singular_values();
    let rank = sv.iter().filter(|s| **s > 1e-9 * (1.0 + sv.max())).count();
    if rank > 2 {
        return Err(format!("{}: rank {rank}", dec.id()));
    }
    Ok(err)
}

/// A rotated, rescaled copy of the fixture certificate keeps residual and
/// m-bracket under transfer.
pub fn transfer_soundness(t: f64, c: f64) -> Result<f64, String> {
    let (sub, sup, cert) = transfer_fixture();
    let (x, y) = rotate(&cert.x, &cert.y, t);
    let x: Vec<f64> = x.iter().map(|v| c * v).collect();
    let rot = verify_coords(sub, &x, &y, cert.tolerances).map_err(|r| format!("rotated pair rejected: {r}"))?;
    let moved = transfer_certificate(sub, sup, &rot, Some(&SO6_IN_SO7)).map_err(|e| e.to_string())?;
    Ok((moved.residual - rot.residual).abs().max((moved.m_bracket_norm - rot.m_bracket_norm).abs()))
}
