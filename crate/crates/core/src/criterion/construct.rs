//! The explicit counterexample for chains cut out by an involution: `k` is
//! the fixed set of `σ` on `g`, a maximal torus `t` lies in `s`, and `h` is
//! spanned by some of the frame vectors `X_α`.

use super::certificate::{verify_certificate, Certificate, Origin};
use super::decomposition::ChainDecomposition;
use crate::algebra::maximal_torus_from;
use crate::catalog::Chain;
use crate::error::{Error, Result};
use crate::matrix::MatrixElement;
use crate::roots::{root_decomposition, Rank2Type, RootDatum, RootId};
use crate::tolerances::{Tolerances, TAU_ROOT, TAU_STRUCT};

#[derive(Debug, Clone)]
pub enum Construction {
    Certificate(Box<Certificate>),
    NotApplicable(String),
}

/// Root datum for a chain carrying involution data: the torus is a maximal
/// abelian subalgebra through a generic element of `l ∩ s`, and the frames
/// are rotated so that `X_α ∈ k`, `Y_α ∈ s`.
pub fn involution_root_datum(chain: &Chain, dec: &ChainDecomposition, seed: u64) -> Result<RootDatum> {
    let (_, l) = chain
        .involution
        .as_ref()
        .ok_or_else(|| Error::Construction(format!("{}: no involution data", chain.id)))?;
    let ls = l.subspace().intersect(dec.s())?;
    if ls.is_zero() {
        return Err(Error::Construction(format!("{}: l ∩ s is zero", chain.id)));
    }
    let t = maximal_torus_from(&chain.g, &ls, seed)?;
    let rd = root_decomposition(&chain.g, &t, seed)?;
    rd.adapt_to_fixed_set(chain.k.subspace())
}

fn in_space(s: &crate::Subspace, x: &MatrixElement) -> Result<bool> {
    Ok(s.residual_norm(x)? <= TAU_ROOT * x.norm().max(1.0))
}

/// Builds `X = X_α + H`, `Y = X_β + η·Y_{α−β}` with `[X, Y] = 0`.
pub fn fullrank_construct(dec: &ChainDecomposition, rd: &RootDatum) -> Result<Construction> {
    if dec.is_symmetric() {
        return Ok(Construction::NotApplicable("[m, m] ⊆ h: (k, h) is a symmetric pair".into()));
    }
    if !rd.torus().is_contained_in(dec.s(), TAU_STRUCT)? {
        return Err(Error::Construction("the maximal torus is not contained in s".into()));
    }
    let rd = rd.adapt_to_fixed_set(dec.chain().k.subspace())?;

    let mut in_m = vec![false; rd.num_positive()];
    for a in rd.positive_roots() {
        let (x, y) = rd.frame(a)?;
        if !in_space(dec.s(), &y)? {
            return Err(Error::FrameConvention(format!("Y of root {a} is not in s")));
        }
        if in_space(dec.m(), &x)? {
            in_m[a] = true;
        } else if !in_space(dec.h(), &x)? {
            return Err(Error::Construction(format!("X of root {a} lies neither in h nor in m")));
        }
    }
    let is_m = |a: RootId| in_m[rd.abs(a)];

    let mut candidates: Vec<(RootId, RootId)> = Vec::new();
    let rm: Vec<RootId> = rd.positive_roots().filter(|&a| is_m(a)).collect();
    for &lambda in &rm {
        for &mu in &rm {
            if lambda >= mu {
                continue;
            }
            let (xl, _) = rd.frame(lambda)?;
            let (xm, _) = rd.frame(mu)?;
            if dec.m().component(&xl.bracket(&xm)?)?.norm() <= TAU_ROOT {
                continue;
            }
            for (l, m) in [(lambda, mu), (mu, lambda)] {
                if let Some(pair) = table_choice(&rd, l, m, &is_m)? {
                    candidates.push(pair);
                }
            }
        }
    }
    // Every admissible triple inside R_m, in case the table choice degenerates.
    for &alpha in &rm {
        for &beta in &rm {
            if admissible(&rd, alpha, beta, &is_m) {
                candidates.push((alpha, beta));
            }
        }
    }
    if candidates.is_empty() {
        return Ok(Construction::NotApplicable("no roots λ, μ in R_m with [X_λ, X_μ]^m ≠ 0".into()));
    }

    let mut last = String::new();
    for (alpha, beta) in candidates {
        match solve(dec, &rd, alpha, beta) {
            Ok(c) => return Ok(Construction::Certificate(Box::new(c))),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Construction(format!("no admissible root pair produced a certificate ({last})")))
}

fn admissible(rd: &RootDatum, alpha: RootId, beta: RootId, is_m: &impl Fn(RootId) -> bool) -> bool {
    if alpha == beta {
        return false;
    }
    match rd.difference(alpha, beta) {
        Some(g) if rd.is_positive(g) && is_m(g) => {}
        _ => return false,
    }
    rd.sum(alpha, beta).is_none() && rd.combination(2, alpha, -1, beta).is_none()
}

/// The case table on the rank-two system spanned by `λ, μ`.
fn table_choice(
    rd: &RootDatum,
    lambda: RootId,
    mu: RootId,
    is_m: &impl Fn(RootId) -> bool,
) -> Result<Option<(RootId, RootId)>> {
    let usable = |n: Option<RootId>| n.filter(|&n| rd.is_positive(n) && is_m(n));
    let plus = usable(rd.sum(lambda, mu));
    let minus = usable(rd.difference(lambda, mu));
    let ty = rd.rank2_span_type(lambda, mu)?;
    let orthogonal = rd.inner(lambda, mu).abs() <= TAU_ROOT * rd.length_sqr(lambda).max(rd.length_sqr(mu));
    let longer = if rd.length_sqr(lambda) >= rd.length_sqr(mu) { lambda } else { mu };
    let pick = match (ty, plus, minus) {
        (Rank2Type::A2, _, Some(_)) => Some((lambda, mu)),
        (Rank2Type::A2, Some(nu), None) => Some((nu, mu)),
        (Rank2Type::B2, Some(nu), _) if orthogonal => Some((nu, mu)),
        (Rank2Type::B2, Some(nu), _) => Some((nu, longer)),
        (Rank2Type::B2, None, Some(nu)) if orthogonal => Some((lambda, nu)),
        (Rank2Type::B2, None, Some(nu)) => Some((longer, nu)),
        _ => None,
    };
    Ok(pick.filter(|&(a, b)| admissible(rd, a, b, is_m)))
}

fn solve(dec: &ChainDecomposition, rd: &RootDatum, alpha: RootId, beta: RootId) -> Result<Certificate> {
    let gamma = rd
        .difference(alpha, beta)
        .ok_or_else(|| Error::Construction("α − β is not a root".into()))?;
    let (xa, _) = rd.frame(alpha)?;
    let (xb, yb) = rd.frame(beta)?;
    let (xg, yg) = rd.frame(gamma)?;
    let ab = xa.bracket(&xb)?;
    let a = ab.inner(&xg)?;
    let a_off = ab.inner(&yg)?;
    let c = xa.bracket(&yg)?.inner(&yb)?;
    if a_off.abs() > TAU_ROOT.sqrt() {
        return Err(Error::FrameConvention(format!(
            "[X_α, X_β] has a Y_(α−β) component {a_off:.3e}"
        )));
    }
    if a.abs() <= TAU_ROOT || c.abs() <= TAU_ROOT {
        return Err(Error::Construction("vanishing structure constant".into()));
    }

    // [X, Y] = (a − η(α−β)(H)) X_γ + (η c + β(H)) Y_β, so η = −β(H)/c and
    // β(H)(α(H) − β(H)) = −a c.
    let q = -a * c;
    let g11 = rd.length_sqr(alpha);
    let g12 = rd.inner(alpha, beta);
    let g22 = rd.length_sqr(beta);
    let det = g11 * g22 - g12 * g12;
    if det <= TAU_ROOT {
        return Err(Error::Construction("α and β are not independent".into()));
    }
    let (qa, qb, qc) = (g22 / det, -g12 / det, g11 / det);
    // Minimal |H|² = A x² + 2B xy + C y² on x = y + q/y.
    let y = (qa * q * q / (qa + 2.0 * qb + qc)).powf(0.25);
    let x = y + q / y;
    let (u, w) = (qa * x + qb * y, qb * x + qc * y);
    let ca = rd.covector(alpha);
    let cb = rd.covector(beta);
    let h: Vec<f64> = ca.iter().zip(&cb).map(|(p, r)| u * p + w * r).collect();
    let eta = -rd.eval(beta, &h) / c;

    let hm = rd.torus_element(&h)?;
    let xm = xa.add(&hm)?;
    let mut ym = xb.clone();
    ym.axpy(eta, &yg)?;
    verify_certificate(dec, &xm, &ym, Tolerances::default())
        .map(|c| c.with_provenance(Origin::Constructed, None))
        .map_err(|r| Error::Construction(format!("constructed pair rejected: {r}")))
}
